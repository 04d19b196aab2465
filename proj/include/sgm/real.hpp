#pragma once

#include <cstddef>

#include "sgm/bench.hpp"
#include "sgm/graph.hpp"
#include "sgm/matcher.hpp"
#include "sgm/rng.hpp"

namespace sgm::bench {

struct RealInstance {
  Graph g1;
  Graph g2;             // relabeled
  VertexMapping truth;  // defined on the common vertices only
  VertexMapping seeds;  // over the common vertices, round(beta*m) correct
  std::size_t common = 0;
};

// Each child keeps every vertex of g0 with probability alpha and every
// surviving edge with probability s, independently; the second child is then
// relabeled uniformly. Throws DomainError when fewer than two vertices are
// shared.
RealInstance make_real_instance(const Graph& g0, double s, double alpha, double beta, Rng& rng);

struct RealTrialResult {
  TrialResult trial;
  std::size_t common = 0;
  double isolated_fraction = 0.0;  // common vertices isolated in G1 ∧ G2
  double ceiling = 0.0;            // 1 - isolated_fraction
};

double isolated_fraction(const RealInstance& inst);

RealTrialResult real_protocol(const Graph& g0, double s, double alpha, double beta,
                              const Algorithm& algorithm, unsigned iterations, Rng& rng,
                              const RunOptions& options = {});

}  // namespace sgm::bench
