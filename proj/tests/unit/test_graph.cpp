#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "sgm/errors.hpp"
#include "sgm/graph.hpp"
#include "sgm/synth.hpp"

using namespace sgm;

namespace {

Graph path4() {
  const std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}};
  return build_graph(4, e);
}

std::vector<Vertex> as_vec(std::span<const Vertex> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("build_graph drops duplicates and self-loops") {
  const std::vector<Edge> e{{0, 1}, {1, 0}, {1, 1}};
  const Graph g = build_graph(3, e);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 1);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(1, 1));
  CHECK(g.degree(2) == 0);
}

TEST_CASE("build_graph small cases") {
  const Graph empty = build_graph(2, {});
  CHECK(empty.num_edges() == 0);
  const Graph p = path4();
  CHECK(p.num_edges() == 3);
  CHECK(p.degree(0) == 1);
  CHECK(p.degree(1) == 2);
  CHECK(p.degree(2) == 2);
  CHECK(p.degree(3) == 1);
  CHECK(p.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
}

TEST_CASE("build_graph rejects out-of-range endpoints and names the edge") {
  const std::vector<Edge> e{{0, 1}, {2, 5}};
  try {
    build_graph(3, e);
    FAIL("expected DomainError");
  } catch (const DomainError& err) {
    const std::string msg = err.what();
    CHECK(msg.find("2") != std::string::npos);
    CHECK(msg.find("5") != std::string::npos);
  }
}

TEST_CASE("graph invariants on random graphs") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = sample_er(60, 0.1, rng);
    std::size_t deg_sum = 0;
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
      const auto nb = g.neighbors(u);
      deg_sum += nb.size();
      CHECK(std::adjacent_find(nb.begin(), nb.end(), std::greater_equal<>()) == nb.end());
      for (Vertex v : nb) {
        CHECK(v != u);
        CHECK(g.has_edge(v, u));
      }
    }
    CHECK(deg_sum == 2 * g.num_edges());
  }
}

TEST_CASE("exact_khop_sets on a path") {
  const KhopSets two = exact_khop_sets(path4(), 2);
  CHECK(two == KhopSets{{2}, {3}, {0}, {1}});
  const KhopSets one = exact_khop_sets(path4(), 1);
  for (Vertex u = 0; u < 4; ++u) CHECK(one[u] == as_vec(path4().neighbors(u)));
  const KhopSets none = exact_khop_sets(build_graph(5, {}), 2);
  for (const auto& s : none) CHECK(s.empty());
  CHECK_THROWS_AS(exact_khop_sets(path4(), 0), DomainError);
}

TEST_CASE("exact_khop_sets matches Floyd-Warshall and is a partition") {
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const Graph g = sample_er(50, 0.06, rng);
    const auto d = oracle::distances(g);
    std::vector<KhopSets> by_j;
    for (unsigned j = 1; j <= 4; ++j) {
      by_j.push_back(exact_khop_sets(g, j, 1 + rep % 3));
      for (Vertex u = 0; u < 50; ++u) {
        std::vector<Vertex> expect;
        for (Vertex v = 0; v < 50; ++v)
          if (d[u][v] == j) expect.push_back(v);
        CHECK(by_j.back()[u] == expect);
        for (Vertex v : by_j.back()[u]) {
          const auto& back = by_j.back()[v];
          CHECK(std::binary_search(back.begin(), back.end(), u));
        }
      }
    }
    for (Vertex u = 0; u < 50; ++u) {
      std::set<Vertex> seen;
      std::size_t total = 0;
      for (const auto& sets : by_j) {
        total += sets[u].size();
        seen.insert(sets[u].begin(), sets[u].end());
      }
      CHECK(seen.size() == total);
      CHECK(seen.count(u) == 0);
    }
  }
}

TEST_CASE("intersection_graph examples") {
  const std::vector<Edge> path{{0, 1}, {1, 2}};
  const Graph p3 = build_graph(3, path);
  CHECK(intersection_graph(p3, p3, VertexMapping::identity(3)) == p3);

  const std::vector<Edge> a{{0, 1}}, b{{0, 2}};
  CHECK(intersection_graph(build_graph(3, a), build_graph(3, b), VertexMapping::identity(3)).num_edges() == 0);

  const std::vector<Edge> tri{{0, 1}, {1, 2}, {0, 2}};
  CHECK(intersection_graph(build_graph(3, tri), p3, VertexMapping::identity(3)) == p3);
}

TEST_CASE("intersection_graph skips unmapped endpoints and bounds degrees") {
  const std::vector<Edge> tri{{0, 1}, {1, 2}, {0, 2}};
  const Graph t = build_graph(3, tri);
  VertexMapping partial(3, 3);
  partial.assign(0, 0);
  partial.assign(1, 1);
  const Graph both = intersection_graph(t, t, partial);
  CHECK(both.edges() == std::vector<Edge>{{0, 1}});

  Rng rng(3);
  const CorrelatedInstance inst = make_correlated_pair({80, 0.1, 0.7, 0.5}, rng);
  const Graph i = intersection_graph(inst.g1, inst.g2, inst.truth);
  for (Vertex u = 0; u < 80; ++u) {
    CHECK(i.degree(u) <= std::min(inst.g1.degree(u), inst.g2.degree(inst.truth.image_or_none(u))));
  }
}

TEST_CASE("VertexMapping keeps injectivity") {
  VertexMapping m(3, 3);
  m.assign(0, 2);
  CHECK_THROWS_AS(m.assign(1, 2), DomainError);
  CHECK_THROWS_AS(m.assign(1, 3), DomainError);
  m.assign(0, 1);  // reassignment releases 2
  m.assign(1, 2);
  CHECK(m.defined_count() == 2);
  CHECK_FALSE(m.is_total());
  m.assign(2, 0);
  CHECK(m.is_total());
  CHECK(m.inverse().then(m) == VertexMapping::identity(3));
  const std::vector<Vertex> bad{0, 0};
  CHECK_THROWS_AS(VertexMapping::from_images(bad, 2), DomainError);
}

TEST_CASE("relabel moves edges with the permutation") {
  const std::vector<Vertex> perm{3, 2, 1, 0};
  const Graph r = relabel(path4(), perm);
  CHECK(r.has_edge(3, 2));
  CHECK(r.has_edge(2, 1));
  CHECK(r.has_edge(1, 0));
  CHECK(r.num_edges() == 3);
}
