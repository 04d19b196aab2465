#include "sgm/witness.hpp"

#include <algorithm>
#include <string>

#include "sgm/errors.hpp"
#include "sgm/kernels.hpp"
#include "sgm/parallel.hpp"

namespace sgm {

namespace {

void check_inputs(const Graph& g1, const Graph& g2, const VertexMapping& seeds, unsigned j) {
  if (j < 1 || j > kMaxHops) {
    throw DomainError("hop count must lie in [1, " + std::to_string(kMaxHops) + "], got " +
                      std::to_string(j));
  }
  if (seeds.domain_size() != g1.num_vertices() || seeds.codomain_size() != g2.num_vertices()) {
    throw DomainError("seed mapping is " + std::to_string(seeds.domain_size()) + " -> " +
                      std::to_string(seeds.codomain_size()) + " but graphs have " +
                      std::to_string(g1.num_vertices()) + " and " +
                      std::to_string(g2.num_vertices()) + " vertices");
  }
}

// B'(v) = sorted {w : seeds(w) in B(v)}.
KhopSets pull_back(const KhopSets& b, const VertexMapping& seeds) {
  KhopSets out(b.size());
  for (std::size_t v = 0; v < b.size(); ++v) {
    auto& row = out[v];
    for (Vertex x : b[v]) {
      const Vertex w = seeds.preimage_or_none(x);
      if (w != kNoVertex) row.push_back(w);
    }
    std::sort(row.begin(), row.end());
  }
  return out;
}

constexpr std::size_t kRowBlock = 64;
constexpr std::size_t kColBlock = 256;

WitnessMatrix product_from_sets(const KhopSets& a, const KhopSets& bp, std::size_t n2,
                                unsigned threads, bool bitsets) {
  const std::size_t n1 = a.size();
  WitnessMatrix w(n1, n2);
  const auto& k = kernels::active();

  std::vector<Vertex> live_cols;
  for (Vertex v = 0; v < n2; ++v) {
    if (!bp[v].empty()) live_cols.push_back(v);
  }

  if (!bitsets) {
    parallel_ranges(n1, threads, [&](std::size_t begin, std::size_t end) {
      std::vector<std::uint32_t> row(n2);
      for (std::size_t u = begin; u < end; ++u) {
        if (a[u].empty()) continue;
        std::fill(row.begin(), row.end(), 0u);
        for (Vertex v : live_cols) {
          row[v] = static_cast<std::uint32_t>(
              k.intersect_count(a[u].data(), a[u].size(), bp[v].data(), bp[v].size()));
        }
        w.set_row(static_cast<Vertex>(u), row);
      }
    });
    return w;
  }

  // Bitsets over the witness index w in [0, n1).
  const std::size_t words = (n1 + 63) / 64;
  std::vector<Vertex> live_rows;
  for (Vertex u = 0; u < n1; ++u) {
    if (!a[u].empty()) live_rows.push_back(u);
  }
  std::vector<std::uint64_t> abits(live_rows.size() * words, 0);
  std::vector<std::uint64_t> bbits(live_cols.size() * words, 0);
  for (std::size_t i = 0; i < live_rows.size(); ++i) {
    for (Vertex x : a[live_rows[i]]) abits[i * words + x / 64] |= std::uint64_t{1} << (x % 64);
  }
  for (std::size_t i = 0; i < live_cols.size(); ++i) {
    for (Vertex x : bp[live_cols[i]]) bbits[i * words + x / 64] |= std::uint64_t{1} << (x % 64);
  }

  const std::size_t blocks = (live_rows.size() + kRowBlock - 1) / kRowBlock;
  parallel_ranges(blocks, threads, [&](std::size_t first, std::size_t last) {
    std::vector<std::uint32_t> tile(kRowBlock * n2);
    for (std::size_t blk = first; blk < last; ++blk) {
      const std::size_t r0 = blk * kRowBlock;
      const std::size_t r1 = std::min(live_rows.size(), r0 + kRowBlock);
      std::fill(tile.begin(), tile.end(), 0u);
      for (std::size_t c0 = 0; c0 < live_cols.size(); c0 += kColBlock) {
        const std::size_t c1 = std::min(live_cols.size(), c0 + kColBlock);
        for (std::size_t r = r0; r < r1; ++r) {
          const std::uint64_t* ar = abits.data() + r * words;
          std::uint32_t* out = tile.data() + (r - r0) * n2;
          for (std::size_t c = c0; c < c1; ++c) {
            out[live_cols[c]] =
                static_cast<std::uint32_t>(k.and_popcount(ar, bbits.data() + c * words, words));
          }
        }
      }
      for (std::size_t r = r0; r < r1; ++r) {
        w.set_row(live_rows[r], std::span<const std::uint32_t>(tile.data() + (r - r0) * n2, n2));
      }
    }
  });
  return w;
}

WitnessMatrix explore_from_sets(const KhopSets& a, const KhopSets& b,
                                const VertexMapping& seeds, unsigned threads) {
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  WitnessMatrix w(n1, n2);
  parallel_ranges(n1, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> acc(n2, 0);
    std::vector<Vertex> touched;
    std::vector<WitnessMatrix::Entry> entries;
    for (std::size_t u = begin; u < end; ++u) {
      touched.clear();
      for (Vertex x : a[u]) {
        const Vertex y = seeds.image_or_none(x);
        if (y == kNoVertex) continue;
        for (Vertex v : b[y]) {
          if (acc[v]++ == 0) touched.push_back(v);
        }
      }
      if (touched.empty()) continue;
      if (touched.size() > n2 / 8) {
        w.set_dense_row(static_cast<Vertex>(u), acc);
        for (Vertex v : touched) acc[v] = 0;
      } else {
        std::sort(touched.begin(), touched.end());
        entries.clear();
        for (Vertex v : touched) {
          entries.push_back({v, acc[v]});
          acc[v] = 0;
        }
        w.set_sparse_row(static_cast<Vertex>(u), entries);
      }
    }
  });
  return w;
}

}  // namespace

WitnessMatrix::WitnessMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

std::uint32_t WitnessMatrix::at(Vertex u, Vertex v) const {
  const Row& r = rows_[u];
  if (r.dense) return r.values[v];
  auto it = std::lower_bound(r.entries.begin(), r.entries.end(), v,
                             [](const Entry& e, Vertex col) { return e.col < col; });
  return it != r.entries.end() && it->col == v ? it->count : 0;
}

void WitnessMatrix::set_dense_row(Vertex u, std::vector<std::uint32_t> values) {
  if (values.size() != cols_) throw DomainError("dense row has wrong width");
  Row& r = rows_[u];
  r.dense = true;
  r.values = std::move(values);
  r.entries.clear();
  r.entries.shrink_to_fit();
}

void WitnessMatrix::set_sparse_row(Vertex u, std::vector<Entry> entries) {
  Row& r = rows_[u];
  r.dense = false;
  r.entries = std::move(entries);
  r.values.clear();
  r.values.shrink_to_fit();
}

void WitnessMatrix::set_row(Vertex u, std::span<const std::uint32_t> values) {
  const std::size_t nz =
      static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](auto c) { return c != 0; }));
  if (nz > cols_ / 8) {
    set_dense_row(u, std::vector<std::uint32_t>(values.begin(), values.end()));
    return;
  }
  std::vector<Entry> entries;
  entries.reserve(nz);
  for (std::size_t v = 0; v < values.size(); ++v) {
    if (values[v] != 0) entries.push_back({static_cast<Vertex>(v), values[v]});
  }
  set_sparse_row(u, std::move(entries));
}

std::uint64_t WitnessMatrix::total() const {
  std::uint64_t sum = 0;
  for (Vertex u = 0; u < rows(); ++u) for_each_positive(u, [&](Vertex, std::uint32_t c) { sum += c; });
  return sum;
}

std::size_t WitnessMatrix::positive_count() const {
  std::size_t nz = 0;
  for (Vertex u = 0; u < rows(); ++u) for_each_positive(u, [&](Vertex, std::uint32_t) { ++nz; });
  return nz;
}

std::vector<std::uint32_t> WitnessMatrix::row_values(Vertex u) const {
  if (rows_[u].dense) return rows_[u].values;
  std::vector<std::uint32_t> out(cols_, 0);
  for (const Entry& e : rows_[u].entries) out[e.col] = e.count;
  return out;
}

bool operator==(const WitnessMatrix& a, const WitnessMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Vertex u = 0; u < a.rows(); ++u) {
    if (a.row_values(u) != b.row_values(u)) return false;
  }
  return true;
}

WitnessMatrix count_witnesses_product(const Graph& g1, const Graph& g2,
                                      const VertexMapping& seeds, unsigned j, unsigned threads,
                                      bool bitsets) {
  check_inputs(g1, g2, seeds, j);
  const KhopSets a = exact_khop_sets(g1, j, threads);
  const KhopSets bp = pull_back(exact_khop_sets(g2, j, threads), seeds);
  return product_from_sets(a, bp, g2.num_vertices(), threads, bitsets);
}

WitnessMatrix count_witnesses_explore(const Graph& g1, const Graph& g2,
                                      const VertexMapping& seeds, unsigned j, unsigned threads) {
  check_inputs(g1, g2, seeds, j);
  const KhopSets a = exact_khop_sets(g1, j, threads);
  const KhopSets b = exact_khop_sets(g2, j, threads);
  return explore_from_sets(a, b, seeds, threads);
}

WitnessCost estimate_witness_cost(const KhopSets& a, const KhopSets& b,
                                  const VertexMapping& seeds) {
  WitnessCost cost;
  std::size_t live_rows = 0;
  for (Vertex w = 0; w < a.size(); ++w) {
    if (!a[w].empty()) ++live_rows;
    const Vertex y = seeds.image_or_none(w);
    if (y != kNoVertex) cost.explore += static_cast<double>(a[w].size()) * static_cast<double>(b[y].size());
  }
  std::size_t pulled = 0;
  for (const auto& row : b) {
    for (Vertex x : row) pulled += seeds.preimage_or_none(x) != kNoVertex;
  }
  // A column is live when its pulled-back set is nonempty; bounded by both.
  const double live_cols = static_cast<double>(std::min(b.size(), pulled));
  const double words = static_cast<double>((a.size() + 63) / 64);
  cost.bitsets = static_cast<double>(live_rows) * live_cols * words;
  return cost;
}

WitnessMatrix count_witnesses(const Graph& g1, const Graph& g2, const VertexMapping& seeds,
                              unsigned j, unsigned threads, WitnessMethod method) {
  switch (method) {
    case WitnessMethod::product_lists:
      return count_witnesses_product(g1, g2, seeds, j, threads, false);
    case WitnessMethod::product_bitsets:
      return count_witnesses_product(g1, g2, seeds, j, threads, true);
    case WitnessMethod::explore:
      return count_witnesses_explore(g1, g2, seeds, j, threads);
    case WitnessMethod::automatic:
      break;
  }
  check_inputs(g1, g2, seeds, j);
  const KhopSets a = exact_khop_sets(g1, j, threads);
  const KhopSets b = exact_khop_sets(g2, j, threads);
  const WitnessCost cost = estimate_witness_cost(a, b, seeds);
  if (cost.explore <= cost.bitsets) return explore_from_sets(a, b, seeds, threads);
  return product_from_sets(a, pull_back(b, seeds), g2.num_vertices(), threads, true);
}

std::uint32_t count_witnesses_pair(const Graph& g1, const Graph& g2, const VertexMapping& seeds,
                                   unsigned j, Vertex u, Vertex v) {
  check_inputs(g1, g2, seeds, j);
  std::vector<Vertex> au, bv;
  KhopExplorer(g1).collect(u, j, au);
  KhopExplorer(g2).collect(v, j, bv);
  std::uint32_t count = 0;
  for (Vertex w : au) {
    const Vertex y = seeds.image_or_none(w);
    if (y != kNoVertex && std::binary_search(bv.begin(), bv.end(), y)) ++count;
  }
  return count;
}

}  // namespace sgm
