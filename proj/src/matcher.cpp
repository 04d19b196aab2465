#include "sgm/matcher.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "sgm/errors.hpp"
#include "sgm/kernels.hpp"
#include "sgm/parallel.hpp"

namespace sgm {

namespace {

struct Candidate {
  std::uint32_t weight;
  Vertex u;
  Vertex v;
};

MatchResult finish(VertexMapping mapping) {
  MatchResult out;
  out.matched_count = mapping.defined_count();
  out.mapping = std::move(mapping);
  return out;
}

// Heaviest entry of row u among columns with mask[v] set; smallest v on ties.
kernels::ArgMax row_best(const WitnessMatrix& w, Vertex u, const std::vector<std::uint32_t>& mask,
                         const kernels::KernelTable& k) {
  if (w.row_is_dense(u)) {
    const auto row = w.dense_row(u);
    return k.masked_argmax(row.data(), mask.data(), row.size());
  }
  kernels::ArgMax best;
  for (const auto& e : w.sparse_row(u)) {
    if (mask[e.col] != 0 && e.count > best.value) best = {e.count, e.col};
  }
  return best;
}

}  // namespace

MatchResult gmwm_reference(const WitnessMatrix& w) {
  std::vector<Candidate> all;
  for (Vertex u = 0; u < w.rows(); ++u) {
    w.for_each_positive(u, [&](Vertex v, std::uint32_t c) { all.push_back({c, u, v}); });
  }
  std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  VertexMapping mapping(w.rows(), w.cols());
  for (const Candidate& c : all) {
    if (!mapping.is_defined(c.u) && mapping.preimage_or_none(c.v) == kNoVertex) {
      mapping.assign(c.u, c.v);
    }
  }
  return finish(std::move(mapping));
}

MatchResult gmwm(const WitnessMatrix& w) {
  const auto& k = kernels::active();
  std::vector<std::uint32_t> free_col(w.cols(), 0xFFFFFFFFu);
  // Max-heap on (weight desc, u asc). A row's key only overestimates its best
  // free entry, so a popped candidate whose column is still free is the next
  // pair the sorted scan would accept.
  auto below = [](const Candidate& a, const Candidate& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.u > b.u;
  };
  std::vector<Candidate> heap;
  for (Vertex u = 0; u < w.rows(); ++u) {
    const auto best = row_best(w, u, free_col, k);
    if (best.value > 0) heap.push_back({best.value, u, best.index});
  }
  std::make_heap(heap.begin(), heap.end(), below);

  VertexMapping mapping(w.rows(), w.cols());
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), below);
    const Candidate c = heap.back();
    heap.pop_back();
    if (free_col[c.v] == 0) {
      const auto best = row_best(w, c.u, free_col, k);
      if (best.value > 0) {
        heap.push_back({best.value, c.u, best.index});
        std::push_heap(heap.begin(), heap.end(), below);
      }
      continue;
    }
    mapping.assign(c.u, c.v);
    free_col[c.v] = 0;
  }
  return finish(std::move(mapping));
}

MatchResult parallel_argmax(const WitnessMatrix& w, unsigned threads) {
  const auto& k = kernels::active();
  const std::vector<std::uint32_t> all(w.cols(), 0xFFFFFFFFu);
  std::vector<Vertex> choice(w.rows(), kNoVertex);
  parallel_ranges(w.rows(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      const auto best = row_best(w, static_cast<Vertex>(u), all, k);
      if (best.value > 0) choice[u] = best.index;
    }
  });
  std::vector<std::uint32_t> hits(w.cols(), 0);
  for (Vertex v : choice) {
    if (v != kNoVertex) ++hits[v];
  }
  MatchResult out;
  VertexMapping mapping(w.rows(), w.cols());
  for (Vertex u = 0; u < w.rows(); ++u) {
    if (choice[u] == kNoVertex) continue;
    if (hits[choice[u]] == 1) {
      mapping.assign(u, choice[u]);
    } else {
      out.failure = true;
    }
  }
  out.matched_count = mapping.defined_count();
  out.mapping = std::move(mapping);
  return out;
}

MatchResult noisy_seeds(const Graph& g1, const Graph& g2, const VertexMapping& seeds, unsigned r) {
  if (r < 2) throw DomainError("percolation threshold r must be >= 2");
  if (seeds.domain_size() != g1.num_vertices() || seeds.codomain_size() != g2.num_vertices()) {
    throw DomainError("seed mapping does not match the graph sizes");
  }
  const std::size_t n2 = g2.num_vertices();
  std::vector<char> used1(g1.num_vertices(), 0);
  std::vector<char> used2(n2, 0);
  std::unordered_map<std::uint64_t, std::uint32_t> marks;
  std::deque<Edge> queue;
  for (Vertex u = 0; u < seeds.domain_size(); ++u) {
    if (seeds.is_defined(u)) queue.emplace_back(u, seeds.image_or_none(u));
  }

  VertexMapping mapping(g1.num_vertices(), n2);
  std::vector<Edge> crossed;
  while (!queue.empty()) {
    const auto [w, w2] = queue.front();
    queue.pop_front();
    crossed.clear();
    for (Vertex u : g1.neighbors(w)) {
      if (used1[u]) continue;
      for (Vertex v : g2.neighbors(w2)) {
        if (used2[v]) continue;
        // Pairs with a used endpoint can never match, so their marks are not kept.
        if (++marks[std::uint64_t{u} * n2 + v] == r) crossed.emplace_back(u, v);
      }
    }
    std::sort(crossed.begin(), crossed.end());
    for (const auto& [u, v] : crossed) {
      if (used1[u] || used2[v]) continue;
      used1[u] = used2[v] = 1;
      mapping.assign(u, v);
      queue.emplace_back(u, v);
    }
  }
  return finish(std::move(mapping));
}

void complete_randomly(MatchResult& result, Rng& rng) {
  VertexMapping& m = result.mapping;
  std::vector<Vertex> rows, cols;
  for (Vertex u = 0; u < m.domain_size(); ++u) {
    if (!m.is_defined(u)) rows.push_back(u);
  }
  for (Vertex v = 0; v < m.codomain_size(); ++v) {
    if (m.preimage_or_none(v) == kNoVertex) cols.push_back(v);
  }
  std::shuffle(cols.begin(), cols.end(), rng);
  const std::size_t pairs = std::min(rows.size(), cols.size());
  for (std::size_t i = 0; i < pairs; ++i) m.assign(rows[i], cols[i]);
  result.matched_count = m.defined_count();
}

std::string Algorithm::name() const {
  switch (kind) {
    case AlgorithmKind::j_hop:
      if (j == 1) return "one_hop";
      if (j == 2) return "two_hop";
      return "j_hop(" + std::to_string(j) + ")";
    case AlgorithmKind::parallel_argmax:
      return "parallel_argmax";
    case AlgorithmKind::noisy_seeds:
      return "noisy_seeds(" + std::to_string(r) + ")";
  }
  return "?";
}

Algorithm Algorithm::parse(const std::string& text) {
  auto argument = [&](std::size_t prefix) -> unsigned {
    std::string rest = text.substr(prefix);
    if (!rest.empty() && (rest.front() == '(' || rest.front() == ':')) {
      const bool paren = rest.front() == '(';
      rest = rest.substr(1);
      if (paren) {
        if (rest.empty() || rest.back() != ')') throw UsageError("unbalanced '(' in '" + text + "'");
        rest.pop_back();
      }
      std::size_t used = 0;
      unsigned long value = 0;
      try {
        value = std::stoul(rest, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == rest.size() && used > 0) return static_cast<unsigned>(value);
    }
    throw UsageError("bad algorithm argument in '" + text + "'");
  };
  if (text == "one_hop") return one_hop();
  if (text == "two_hop") return two_hop();
  if (text == "parallel_argmax") return argmax();
  if (text.rfind("j_hop", 0) == 0) {
    const unsigned j = argument(5);
    if (j < 1 || j > kMaxHops) throw DomainError("j_hop needs 1 <= j <= " + std::to_string(kMaxHops));
    return j_hop(j);
  }
  if (text.rfind("noisy_seeds", 0) == 0) {
    const unsigned r = argument(11);
    if (r < 2) throw DomainError("noisy_seeds needs r >= 2");
    return percolation(r);
  }
  throw UsageError("unknown algorithm '" + text + "'");
}

MatchResult run_algorithm(const Graph& g1, const Graph& g2, const VertexMapping& seeds,
                          const Algorithm& algorithm, const RunOptions& options, unsigned round) {
  using Clock = std::chrono::steady_clock;
  auto ms = [](Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  MatchResult out;
  const auto t0 = Clock::now();
  if (algorithm.kind == AlgorithmKind::noisy_seeds) {
    out = noisy_seeds(g1, g2, seeds, algorithm.r);
    out.match_ms = ms(t0, Clock::now());
  } else {
    const WitnessMatrix w = count_witnesses(g1, g2, seeds, algorithm.j, options.threads, options.method);
    const auto t1 = Clock::now();
    out = algorithm.kind == AlgorithmKind::j_hop ? gmwm(w) : parallel_argmax(w, options.threads);
    out.witness_ms = ms(t0, t1);
    out.match_ms = ms(t1, Clock::now());
  }
  if (options.complete_random_seed) {
    Rng rng = make_stream(derive_seed({*options.complete_random_seed, round}));
    complete_randomly(out, rng);
  }
  return out;
}

MatchResult iterate(const Graph& g1, const Graph& g2, const VertexMapping& seeds,
                    const Algorithm& algorithm, unsigned iterations, const RunOptions& options,
                    std::vector<MatchResult>* history) {
  if (history != nullptr) history->clear();
  MatchResult current = run_algorithm(g1, g2, seeds, algorithm, options, 0);
  if (history != nullptr) history->push_back(current);
  for (unsigned round = 1; round <= iterations; ++round) {
    current = run_algorithm(g1, g2, current.mapping, algorithm, options, round);
    if (history != nullptr) history->push_back(current);
  }
  return current;
}

}  // namespace sgm
