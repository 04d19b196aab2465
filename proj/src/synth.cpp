#include "sgm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sgm/errors.hpp"

namespace sgm {

namespace {

std::size_t rounded_count(double beta, std::size_t m) {
  return static_cast<std::size_t>(std::llround(beta * static_cast<double>(m)));
}

}  // namespace

void ModelParams::validate() const {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("s must lie in (0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
  if (n >= 2 && correct_seed_count() == n - 1) {
    throw DomainError("round(beta*n) = n-1 correct seeds is impossible for a permutation");
  }
}

std::size_t ModelParams::correct_seed_count() const { return rounded_count(beta, n); }

Graph sample_er(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  std::vector<Edge> edges;
  if (n < 2 || p == 0.0) return build_graph(n, edges);
  if (p == 1.0) {
    edges.reserve(n * (n - 1) / 2);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return build_graph(n, edges);
  }
  // Geometric skipping over the pair sequence (1,0), (2,0), (2,1), (3,0), ...
  const double mean_edges = p * static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  edges.reserve(static_cast<std::size_t>(mean_edges * 1.05) + 16);
  std::geometric_distribution<std::uint64_t> skip(p);
  std::uint64_t row = 1;
  std::uint64_t col = 0;
  std::uint64_t offset = skip(rng);
  while (row < n) {
    col += offset;
    while (col >= row && row < n) {
      col -= row;
      ++row;
    }
    if (row >= n) break;
    edges.emplace_back(static_cast<Vertex>(col), static_cast<Vertex>(row));
    offset = 1 + skip(rng);
  }
  return build_graph(n, edges);
}

Graph edge_subsample(const Graph& g, double s, Rng& rng) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("s must lie in (0, 1]");
  std::vector<Edge> kept;
  std::bernoulli_distribution keep(s);
  for (const Edge& e : g.edges()) {
    if (keep(rng)) kept.push_back(e);
  }
  return build_graph(g.num_vertices(), kept);
}

VertexMapping random_permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return VertexMapping::from_images(perm, n);
}

CorrelatedInstance make_correlated_pair(const ModelParams& params, Rng& rng) {
  params.validate();
  // One sub-seed per purpose, drawn in a fixed order.
  Rng parent_rng(rng());
  Rng child1_rng(rng());
  Rng child2_rng(rng());
  Rng truth_rng(rng());
  Rng seed_rng(rng());

  CorrelatedInstance inst;
  inst.g0 = sample_er(params.n, params.p, parent_rng);
  inst.g1 = edge_subsample(inst.g0, params.s, child1_rng);
  const Graph child2 = edge_subsample(inst.g0, params.s, child2_rng);
  inst.truth = random_permutation(params.n, truth_rng);
  inst.g2 = relabel(child2, inst.truth.images());
  inst.seeds = make_seed_mapping(inst.truth, params.beta, seed_rng);
  return inst;
}

VertexMapping make_seed_mapping(const VertexMapping& truth, double beta, Rng& rng,
                                std::size_t* attempts) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
  std::vector<Vertex> domain;
  domain.reserve(truth.defined_count());
  for (Vertex u = 0; u < truth.domain_size(); ++u) {
    if (truth.is_defined(u)) domain.push_back(u);
  }
  const std::size_t m = domain.size();
  const std::size_t k = rounded_count(beta, m);
  if (m >= 2 && k == m - 1) {
    throw DomainError("cannot have exactly " + std::to_string(k) + " correct seeds among " +
                      std::to_string(m) + " vertices");
  }

  // Uniform k-subset F: the first k entries of a uniform shuffle.
  std::shuffle(domain.begin(), domain.end(), rng);
  VertexMapping seeds(truth.domain_size(), truth.codomain_size());
  for (std::size_t i = 0; i < k; ++i) seeds.assign(domain[i], truth.image_or_none(domain[i]));

  // Uniform derangement of the complement by rejection.
  const std::size_t rest = m - k;
  std::vector<std::size_t> sigma(rest);
  std::size_t rounds = 0;
  if (rest > 0) {
    for (;;) {
      ++rounds;
      std::iota(sigma.begin(), sigma.end(), std::size_t{0});
      std::shuffle(sigma.begin(), sigma.end(), rng);
      bool fixed_point = false;
      for (std::size_t i = 0; i < rest && !fixed_point; ++i) fixed_point = sigma[i] == i;
      if (!fixed_point) break;
    }
  }
  for (std::size_t i = 0; i < rest; ++i) {
    const Vertex u = domain[k + i];
    const Vertex partner = domain[k + sigma[i]];
    seeds.assign(u, truth.image_or_none(partner));
  }
  if (attempts != nullptr) *attempts = rounds;
  return seeds;
}

VertexSample vertex_subsample(const Graph& g, double alpha, Rng& rng) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  const std::size_t n = g.num_vertices();
  VertexSample out;
  std::vector<Vertex> new_index(n, kNoVertex);
  std::bernoulli_distribution keep(alpha);
  for (Vertex u = 0; u < n; ++u) {
    if (keep(rng)) {
      new_index[u] = static_cast<Vertex>(out.original_ids.size());
      out.original_ids.push_back(u);
    }
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    if (new_index[u] != kNoVertex && new_index[v] != kNoVertex) {
      edges.emplace_back(new_index[u], new_index[v]);
    }
  }
  out.graph = build_graph(out.original_ids.size(), edges);
  return out;
}

}  // namespace sgm
