#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sgm/graph.hpp"

namespace sgm {

inline constexpr unsigned kMaxHops = 4;

// Nonnegative counts W(u, v) for u in [0, rows), v in [0, cols). Each row is
// stored either densely or as a sorted list of positive (column, count)
// entries; equality and every accessor ignore the storage choice.
class WitnessMatrix {
 public:
  struct Entry {
    Vertex col;
    std::uint32_t count;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  WitnessMatrix() = default;
  WitnessMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  std::uint32_t at(Vertex u, Vertex v) const;

  bool row_is_dense(Vertex u) const { return rows_[u].dense; }
  // Valid only for the matching storage kind.
  std::span<const std::uint32_t> dense_row(Vertex u) const { return rows_[u].values; }
  std::span<const Entry> sparse_row(Vertex u) const { return rows_[u].entries; }

  // values.size() must equal cols().
  void set_dense_row(Vertex u, std::vector<std::uint32_t> values);
  // Entries must have strictly increasing columns and positive counts.
  void set_sparse_row(Vertex u, std::vector<Entry> entries);
  // Picks dense or sparse storage from the number of positive entries.
  void set_row(Vertex u, std::span<const std::uint32_t> values);

  // fn(v, count) for every positive entry of row u, in increasing v.
  template <class Fn>
  void for_each_positive(Vertex u, Fn&& fn) const {
    const Row& r = rows_[u];
    if (r.dense) {
      for (std::size_t v = 0; v < r.values.size(); ++v) {
        if (r.values[v] != 0) fn(static_cast<Vertex>(v), r.values[v]);
      }
    } else {
      for (const Entry& e : r.entries) fn(e.col, e.count);
    }
  }

  std::uint64_t total() const;
  std::size_t positive_count() const;
  std::vector<std::uint32_t> row_values(Vertex u) const;

  friend bool operator==(const WitnessMatrix& a, const WitnessMatrix& b);

 private:
  struct Row {
    bool dense = false;
    std::vector<std::uint32_t> values;
    std::vector<Entry> entries;
  };
  std::vector<Row> rows_;
  std::size_t cols_ = 0;
};

enum class WitnessMethod { automatic, product_lists, product_bitsets, explore };

// W_j(u,v) = #{w : d_G1(u,w) = j, seeds(w) defined, d_G2(v, seeds(w)) = j}.
// Throws DomainError unless 1 <= j <= kMaxHops and seeds maps g1's vertices
// into g2's.
//
// Product: |A_j(u) ∩ B'_j(v)| for every pair, where B'_j(v) pulls B_j(v) back
// through the seeds; sorted-list intersection or bitset AND + popcount.
WitnessMatrix count_witnesses_product(const Graph& g1, const Graph& g2,
                                      const VertexMapping& seeds, unsigned j,
                                      unsigned threads = 1, bool bitsets = false);

// Exploration: every seed (w, w') adds one to each pair in
// khop_j(w) x khop_j(w'). Rows are partitioned across workers.
WitnessMatrix count_witnesses_explore(const Graph& g1, const Graph& g2,
                                      const VertexMapping& seeds, unsigned j,
                                      unsigned threads = 1);

// Chooses a method from a cost estimate unless one is forced.
WitnessMatrix count_witnesses(const Graph& g1, const Graph& g2, const VertexMapping& seeds,
                              unsigned j, unsigned threads = 1,
                              WitnessMethod method = WitnessMethod::automatic);

// Estimated cost of each method, in rough machine-word operations.
struct WitnessCost {
  double explore = 0.0;
  double bitsets = 0.0;
};
WitnessCost estimate_witness_cost(const KhopSets& a, const KhopSets& b,
                                  const VertexMapping& seeds);

// Single entry W_j(u, v) straight from the definition.
std::uint32_t count_witnesses_pair(const Graph& g1, const Graph& g2, const VertexMapping& seeds,
                                   unsigned j, Vertex u, Vertex v);

}  // namespace sgm
