#pragma once

#include <cstddef>
#include <vector>

#include "sgm/graph.hpp"
#include "sgm/rng.hpp"

namespace sgm {

// Correlated Erdos-Renyi model parameters: parent G(n, p), each child keeps
// every parent edge independently with probability s, and a fraction beta of
// the seed mapping agrees with the hidden permutation.
struct ModelParams {
  std::size_t n = 0;
  double p = 0.0;
  double s = 1.0;
  double beta = 0.0;

  // Throws DomainError on out-of-range values or round(beta*n) == n-1.
  void validate() const;
  std::size_t correct_seed_count() const;
};

struct CorrelatedInstance {
  Graph g0;
  Graph g1;
  Graph g2;               // second child relabeled by truth
  VertexMapping truth;    // g1 vertex -> g2 vertex (pi*)
  VertexMapping seeds;    // g1 vertex -> g2 vertex (pi)
};

Graph sample_er(std::size_t n, double p, Rng& rng);
Graph edge_subsample(const Graph& g, double s, Rng& rng);

// Uniform random permutation of [0, n) as a total mapping.
VertexMapping random_permutation(std::size_t n, Rng& rng);

CorrelatedInstance make_correlated_pair(const ModelParams& params, Rng& rng);

// Seed mapping over the defined domain of `truth` agreeing with it on exactly
// round(beta * m) vertices (m = truth.defined_count()), uniform among all such
// mappings. `attempts`, when given, receives the number of derangement
// rejection rounds used.
VertexMapping make_seed_mapping(const VertexMapping& truth, double beta, Rng& rng,
                                std::size_t* attempts = nullptr);

struct VertexSample {
  Graph graph;                       // induced subgraph, reindexed 0..k-1
  std::vector<Vertex> original_ids;  // new index -> index in the source graph
};

VertexSample vertex_subsample(const Graph& g, double alpha, Rng& rng);

}  // namespace sgm
