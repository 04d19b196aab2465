#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sgm {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

// Immutable undirected simple graph over vertices 0..n-1 stored as sorted
// adjacency lists in CSR form.
class Graph {
 public:
  Graph() = default;

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::size_t degree(Vertex u) const { return offsets_[u + 1] - offsets_[u]; }
  bool has_edge(Vertex u, Vertex v) const;

  // Each undirected edge once, as (min, max), in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph build_graph(std::size_t n, std::span<const Edge> edges);

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

// Drops self-loops and duplicate edges (in either orientation). Throws
// DomainError naming the first edge with an endpoint >= n.
Graph build_graph(std::size_t n, std::span<const Edge> edges);

// Relabels every vertex u as perm[u]. perm must be a permutation of [0, n).
Graph relabel(const Graph& g, std::span<const Vertex> perm);

// Injective, possibly partial map from a domain [0, domain_size) into a
// codomain [0, codomain_size). Keeps the inverse so injectivity is checked on
// every assignment.
class VertexMapping {
 public:
  VertexMapping() = default;
  VertexMapping(std::size_t domain_size, std::size_t codomain_size);

  static VertexMapping identity(std::size_t n);
  // Total mapping u -> image[u]; throws DomainError unless image is injective
  // into [0, codomain_size).
  static VertexMapping from_images(std::span<const Vertex> image, std::size_t codomain_size);

  std::size_t domain_size() const { return image_.size(); }
  std::size_t codomain_size() const { return preimage_.size(); }

  std::optional<Vertex> operator()(Vertex u) const {
    const Vertex v = image_[u];
    return v == kNoVertex ? std::nullopt : std::optional<Vertex>(v);
  }
  // kNoVertex when undefined.
  Vertex image_or_none(Vertex u) const { return image_[u]; }
  Vertex preimage_or_none(Vertex v) const { return preimage_[v]; }
  bool is_defined(Vertex u) const { return image_[u] != kNoVertex; }

  std::size_t defined_count() const { return defined_; }
  bool is_total() const { return defined_ == image_.size() && image_.size() == preimage_.size(); }

  // Throws DomainError if v is already the image of another vertex or out of
  // range. Reassigning u releases its previous image.
  void assign(Vertex u, Vertex v);
  void clear(Vertex u);

  VertexMapping inverse() const;
  // (*this) then other: u -> other(this(u)).
  VertexMapping then(const VertexMapping& other) const;

  std::span<const Vertex> images() const { return image_; }

  friend bool operator==(const VertexMapping& a, const VertexMapping& b) {
    return a.image_ == b.image_ && a.preimage_.size() == b.preimage_.size();
  }

 private:
  std::vector<Vertex> image_;
  std::vector<Vertex> preimage_;
  std::size_t defined_ = 0;
};

// Per-vertex sorted lists of vertices at shortest-path distance exactly j.
using KhopSets = std::vector<std::vector<Vertex>>;

// Vertices at distance exactly j from src (sorted). Reusable BFS scratch.
class KhopExplorer {
 public:
  explicit KhopExplorer(const Graph& g);
  void collect(Vertex src, unsigned j, std::vector<Vertex>& out);

 private:
  const Graph* g_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
  std::vector<Vertex> frontier_;
  std::vector<Vertex> next_;
};

// Throws DomainError for j == 0.
KhopSets exact_khop_sets(const Graph& g, unsigned j, unsigned threads = 1);

// Edge {u,v} of g1 kept iff truth is defined on both endpoints and
// {truth(u), truth(v)} is an edge of g2. Vertex set is g1's.
Graph intersection_graph(const Graph& g1, const Graph& g2, const VertexMapping& truth);

}  // namespace sgm
