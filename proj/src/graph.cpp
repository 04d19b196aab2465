#include "sgm/graph.hpp"

#include <algorithm>
#include <string>

#include "sgm/errors.hpp"
#include "sgm/parallel.hpp"

namespace sgm {

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= num_vertices() || v >= num_vertices()) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < num_vertices(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph build_graph(std::size_t n, std::span<const Edge> edges) {
  if (n >= kNoVertex) throw DomainError("vertex count too large: " + std::to_string(n));
  std::vector<std::size_t> degree(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw DomainError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                        ") has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) continue;
    ++degree[u];
    ++degree[v];
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) g.offsets_[u + 1] = g.offsets_[u] + degree[u];
  std::vector<Vertex> scratch(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    scratch[cursor[u]++] = v;
    scratch[cursor[v]++] = u;
  }

  // Sort and dedup each row in place, then compact.
  std::vector<std::size_t> kept(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) {
    auto first = scratch.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
    auto last = scratch.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]);
    std::sort(first, last);
    kept[u + 1] = static_cast<std::size_t>(std::unique(first, last) - first);
  }
  g.targets_.reserve(scratch.size());
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) {
    auto first = scratch.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
    g.targets_.insert(g.targets_.end(), first, first + static_cast<std::ptrdiff_t>(kept[u + 1]));
    offsets[u + 1] = g.targets_.size();
  }
  g.offsets_ = std::move(offsets);
  return g;
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  const std::size_t n = g.num_vertices();
  if (perm.size() != n) throw DomainError("relabel: permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (Vertex v : perm) {
    if (v >= n || seen[v]) throw DomainError("relabel: not a permutation");
    seen[v] = true;
  }
  std::vector<Edge> edges = g.edges();
  for (auto& [u, v] : edges) {
    u = perm[u];
    v = perm[v];
  }
  return build_graph(n, edges);
}

VertexMapping::VertexMapping(std::size_t domain_size, std::size_t codomain_size)
    : image_(domain_size, kNoVertex), preimage_(codomain_size, kNoVertex) {
  if (domain_size >= kNoVertex || codomain_size >= kNoVertex) {
    throw DomainError("mapping size too large");
  }
}

VertexMapping VertexMapping::identity(std::size_t n) {
  VertexMapping m(n, n);
  for (Vertex u = 0; u < n; ++u) {
    m.image_[u] = u;
    m.preimage_[u] = u;
  }
  m.defined_ = n;
  return m;
}

VertexMapping VertexMapping::from_images(std::span<const Vertex> image, std::size_t codomain_size) {
  VertexMapping m(image.size(), codomain_size);
  for (Vertex u = 0; u < image.size(); ++u) m.assign(u, image[u]);
  return m;
}

void VertexMapping::assign(Vertex u, Vertex v) {
  if (u >= image_.size()) throw DomainError("mapping: domain vertex " + std::to_string(u) + " out of range");
  if (v >= preimage_.size()) throw DomainError("mapping: image " + std::to_string(v) + " out of range");
  if (preimage_[v] != kNoVertex && preimage_[v] != u) {
    throw DomainError("mapping: " + std::to_string(v) + " is already the image of " +
                      std::to_string(preimage_[v]));
  }
  clear(u);
  image_[u] = v;
  preimage_[v] = u;
  ++defined_;
}

void VertexMapping::clear(Vertex u) {
  if (image_[u] == kNoVertex) return;
  preimage_[image_[u]] = kNoVertex;
  image_[u] = kNoVertex;
  --defined_;
}

VertexMapping VertexMapping::inverse() const {
  VertexMapping inv;
  inv.image_ = preimage_;
  inv.preimage_ = image_;
  inv.defined_ = defined_;
  return inv;
}

VertexMapping VertexMapping::then(const VertexMapping& other) const {
  VertexMapping out(domain_size(), other.codomain_size());
  for (Vertex u = 0; u < domain_size(); ++u) {
    const Vertex mid = image_[u];
    if (mid == kNoVertex || mid >= other.domain_size()) continue;
    const Vertex v = other.image_[mid];
    if (v != kNoVertex) out.assign(u, v);
  }
  return out;
}

KhopExplorer::KhopExplorer(const Graph& g) : g_(&g), mark_(g.num_vertices(), 0) {}

void KhopExplorer::collect(Vertex src, unsigned j, std::vector<Vertex>& out) {
  out.clear();
  if (++epoch_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    epoch_ = 1;
  }
  mark_[src] = epoch_;
  frontier_.assign(1, src);
  for (unsigned depth = 0; depth < j && !frontier_.empty(); ++depth) {
    next_.clear();
    for (Vertex x : frontier_) {
      for (Vertex y : g_->neighbors(x)) {
        if (mark_[y] != epoch_) {
          mark_[y] = epoch_;
          next_.push_back(y);
        }
      }
    }
    frontier_.swap(next_);
  }
  out.assign(frontier_.begin(), frontier_.end());
  std::sort(out.begin(), out.end());
}

KhopSets exact_khop_sets(const Graph& g, unsigned j, unsigned threads) {
  if (j == 0) throw DomainError("hop count must be >= 1");
  const std::size_t n = g.num_vertices();
  KhopSets sets(n);
  if (j == 1) {
    for (Vertex u = 0; u < n; ++u) {
      auto nb = g.neighbors(u);
      sets[u].assign(nb.begin(), nb.end());
    }
    return sets;
  }
  parallel_ranges(n, threads, [&](std::size_t begin, std::size_t end) {
    KhopExplorer explorer(g);
    for (std::size_t u = begin; u < end; ++u) explorer.collect(static_cast<Vertex>(u), j, sets[u]);
  });
  return sets;
}

Graph intersection_graph(const Graph& g1, const Graph& g2, const VertexMapping& truth) {
  std::vector<Edge> kept;
  for (const auto& [u, v] : g1.edges()) {
    if (u >= truth.domain_size() || v >= truth.domain_size()) continue;
    const Vertex tu = truth.image_or_none(u);
    const Vertex tv = truth.image_or_none(v);
    if (tu == kNoVertex || tv == kNoVertex) continue;
    if (g2.has_edge(tu, tv)) kept.emplace_back(u, v);
  }
  return build_graph(g1.num_vertices(), kept);
}

}  // namespace sgm
