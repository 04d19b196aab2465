#include "sgm/real.hpp"

#include <chrono>

#include "sgm/errors.hpp"
#include "sgm/synth.hpp"

namespace sgm::bench {

RealInstance make_real_instance(const Graph& g0, double s, double alpha, double beta, Rng& rng) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("s must lie in (0, 1]");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
  Rng vertex1(rng());
  Rng vertex2(rng());
  Rng edge1(rng());
  Rng edge2(rng());
  Rng relabel_rng(rng());
  Rng seed_rng(rng());

  const VertexSample side1 = vertex_subsample(g0, alpha, vertex1);
  const VertexSample side2 = vertex_subsample(g0, alpha, vertex2);
  RealInstance inst;
  inst.g1 = edge_subsample(side1.graph, s, edge1);
  const Graph child2 = edge_subsample(side2.graph, s, edge2);
  const VertexMapping perm = random_permutation(child2.num_vertices(), relabel_rng);
  inst.g2 = relabel(child2, perm.images());

  std::vector<Vertex> where2(g0.num_vertices(), kNoVertex);
  for (Vertex k = 0; k < side2.original_ids.size(); ++k) where2[side2.original_ids[k]] = k;
  inst.truth = VertexMapping(inst.g1.num_vertices(), inst.g2.num_vertices());
  for (Vertex i = 0; i < side1.original_ids.size(); ++i) {
    const Vertex k = where2[side1.original_ids[i]];
    if (k != kNoVertex) inst.truth.assign(i, perm.image_or_none(k));
  }
  inst.common = inst.truth.defined_count();
  if (inst.common < 2) {
    throw DomainError("only " + std::to_string(inst.common) + " common vertices after subsampling");
  }
  inst.seeds = make_seed_mapping(inst.truth, beta, seed_rng);
  return inst;
}

double isolated_fraction(const RealInstance& inst) {
  const Graph both = intersection_graph(inst.g1, inst.g2, inst.truth);
  std::size_t isolated = 0;
  for (Vertex u = 0; u < both.num_vertices(); ++u) {
    if (inst.truth.is_defined(u) && both.degree(u) == 0) ++isolated;
  }
  return static_cast<double>(isolated) / static_cast<double>(inst.common);
}

RealTrialResult real_protocol(const Graph& g0, double s, double alpha, double beta,
                              const Algorithm& algorithm, unsigned iterations, Rng& rng,
                              const RunOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const RealInstance inst = make_real_instance(g0, s, alpha, beta, rng);
  std::vector<MatchResult> rounds;
  const MatchResult out = iterate(inst.g1, inst.g2, inst.seeds, algorithm, iterations, options, &rounds);

  RealTrialResult r;
  r.common = inst.common;
  r.isolated_fraction = isolated_fraction(inst);
  r.ceiling = 1.0 - r.isolated_fraction;
  r.trial.accuracy = accuracy(out.mapping, inst.truth);
  r.trial.matched_count = out.matched_count;
  r.trial.failure = out.failure;
  for (const MatchResult& m : rounds) {
    r.trial.round_accuracy.push_back(accuracy(m.mapping, inst.truth));
    r.trial.witness_ms += m.witness_ms;
    r.trial.match_ms += m.match_ms;
  }
  r.trial.total_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return r;
}

}  // namespace sgm::bench
