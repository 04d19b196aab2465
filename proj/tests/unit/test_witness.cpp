#include <doctest.h>

#include "oracles.hpp"
#include "sgm/errors.hpp"
#include "sgm/kernels.hpp"
#include "sgm/witness.hpp"

using namespace sgm;

namespace {

oracle::Matrix dense(const WitnessMatrix& w) {
  oracle::Matrix m;
  for (Vertex u = 0; u < w.rows(); ++u) m.push_back(w.row_values(u));
  return m;
}

Graph path4() {
  const std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}};
  return build_graph(4, e);
}

// Every implementation, under every kernel ISA.
void check_all_methods(const Graph& g1, const Graph& g2, const VertexMapping& seeds, unsigned j) {
  const oracle::Matrix expect = oracle::witnesses(g1, g2, seeds, j);
  const kernels::Isa before = kernels::active().isa;
  for (kernels::Isa isa : kernels::available()) {
    kernels::select(isa);
    for (unsigned threads : {1u, 3u}) {
      CHECK(dense(count_witnesses_product(g1, g2, seeds, j, threads, false)) == expect);
      CHECK(dense(count_witnesses_product(g1, g2, seeds, j, threads, true)) == expect);
      CHECK(dense(count_witnesses_explore(g1, g2, seeds, j, threads)) == expect);
      CHECK(dense(count_witnesses(g1, g2, seeds, j, threads)) == expect);
    }
  }
  kernels::select(before);
}

}  // namespace

TEST_CASE("empty graphs give an all-zero matrix") {
  const Graph e = build_graph(5, {});
  const WitnessMatrix w = count_witnesses_product(e, e, VertexMapping::identity(5), 1);
  CHECK(w.total() == 0);
  CHECK(w.positive_count() == 0);
  check_all_methods(e, e, VertexMapping::identity(5), 2);
}

TEST_CASE("path graph, one hop") {
  const Graph p = path4();
  const auto id = VertexMapping::identity(4);
  const WitnessMatrix w = count_witnesses_explore(p, p, id, 1);
  CHECK(w.at(1, 1) == 2);
  CHECK(w.at(0, 2) == 1);
  CHECK(w.at(0, 0) == 1);
  check_all_methods(p, p, id, 1);
}

TEST_CASE("path graph, two hops") {
  const Graph p = path4();
  const auto id = VertexMapping::identity(4);
  const auto expect = oracle::witnesses(p, p, id, 2);
  const WitnessMatrix w = count_witnesses_product(p, p, id, 2);
  CHECK(w.at(0, 0) == 1);
  CHECK(w.at(1, 1) == 1);
  CHECK(w.at(0, 2) == expect[0][2]);
  CHECK(w.at(0, 2) == 0);
  check_all_methods(p, p, id, 2);
}

TEST_CASE("a single seed gives the rank-one neighbourhood product") {
  Rng rng(5);
  const Graph g1 = sample_er(40, 0.15, rng);
  const Graph g2 = sample_er(40, 0.15, rng);
  VertexMapping one(40, 40);
  one.assign(7, 19);
  const WitnessMatrix w = count_witnesses_explore(g1, g2, one, 1);
  for (Vertex u = 0; u < 40; ++u)
    for (Vertex v = 0; v < 40; ++v)
      CHECK(w.at(u, v) == (g1.has_edge(u, 7) && g2.has_edge(v, 19) ? 1u : 0u));
  check_all_methods(g1, g2, one, 1);
}

TEST_CASE("methods agree on a mid-size random instance") {
  const auto inst = oracle::instance(200, 0.05, 0.8, 0.5, 1234);
  const WitnessMatrix a = count_witnesses_product(inst.g1, inst.g2, inst.seeds, 2);
  const WitnessMatrix b = count_witnesses_explore(inst.g1, inst.g2, inst.seeds, 2);
  const WitnessMatrix c = count_witnesses_product(inst.g1, inst.g2, inst.seeds, 2, 2, true);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(dense(a) == oracle::witnesses(inst.g1, inst.g2, inst.seeds, 2));
}

TEST_CASE("methods agree across random instances, j = 1..3") {
  std::uint64_t seed = 1;
  for (double p : {0.03, 0.08}) {
    for (double beta : {0.0, 0.5, 1.0}) {
      for (unsigned j = 1; j <= 3; ++j) {
        const auto inst = oracle::instance(40, p, 0.8, beta, seed++);
        check_all_methods(inst.g1, inst.g2, inst.seeds, j);
      }
    }
  }
}

TEST_CASE("mass identity: total = sum over seeds of frontier products") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = oracle::instance(120, 0.04, 0.9, 0.3, seed);
    for (unsigned j = 1; j <= 3; ++j) {
      const KhopSets a = exact_khop_sets(inst.g1, j);
      const KhopSets b = exact_khop_sets(inst.g2, j);
      std::uint64_t mass = 0;
      for (Vertex w = 0; w < 120; ++w) mass += a[w].size() * b[inst.seeds.image_or_none(w)].size();
      CHECK(count_witnesses(inst.g1, inst.g2, inst.seeds, j).total() == mass);
    }
  }
}

TEST_CASE("relabeling G2 permutes the columns") {
  const auto inst = oracle::instance(80, 0.06, 0.8, 0.5, 77);
  Rng rng(78);
  const VertexMapping rho = random_permutation(80, rng);
  const Graph g2r = relabel(inst.g2, rho.images());
  const VertexMapping seeds_r = inst.seeds.then(rho);
  for (unsigned j = 1; j <= 2; ++j) {
    const WitnessMatrix w = count_witnesses(inst.g1, inst.g2, inst.seeds, j);
    const WitnessMatrix wr = count_witnesses(inst.g1, g2r, seeds_r, j);
    for (Vertex u = 0; u < 80; ++u)
      for (Vertex v = 0; v < 80; ++v) CHECK(wr.at(u, rho.image_or_none(v)) == w.at(u, v));
  }
}

TEST_CASE("partial seeds and rectangular inputs") {
  Rng rng(12);
  const Graph g1 = sample_er(30, 0.2, rng);
  const Graph g2 = sample_er(45, 0.15, rng);
  VertexMapping seeds(30, 45);
  for (Vertex u = 0; u < 30; u += 3) seeds.assign(u, 44 - u);
  for (unsigned j = 1; j <= 3; ++j) check_all_methods(g1, g2, seeds, j);
  const WitnessMatrix w = count_witnesses(g1, g2, seeds, 2);
  for (Vertex u = 0; u < 30; u += 7)
    for (Vertex v = 0; v < 45; v += 4) CHECK(count_witnesses_pair(g1, g2, seeds, 2, u, v) == w.at(u, v));
}

TEST_CASE("hop count and mapping shape are checked") {
  const Graph p = path4();
  const auto id = VertexMapping::identity(4);
  CHECK_THROWS_AS(count_witnesses(p, p, id, 0), DomainError);
  CHECK_THROWS_AS(count_witnesses(p, p, id, kMaxHops + 1), DomainError);
  CHECK_NOTHROW(count_witnesses(p, p, id, kMaxHops));
  CHECK_THROWS_AS(count_witnesses(p, p, VertexMapping::identity(3), 1), DomainError);
}

TEST_CASE("WitnessMatrix equality ignores storage") {
  WitnessMatrix a(2, 5), b(2, 5);
  a.set_dense_row(0, {0, 3, 0, 0, 1});
  b.set_sparse_row(0, {{1, 3}, {4, 1}});
  CHECK(a == b);
  CHECK(a.at(0, 1) == 3);
  CHECK(b.at(0, 1) == 3);
  CHECK(b.at(0, 2) == 0);
  CHECK(a.total() == 4);
  CHECK(b.positive_count() == 2);
  b.set_sparse_row(1, {{2, 1}});
  CHECK_FALSE(a == b);
  CHECK_THROWS_AS(a.set_dense_row(1, {1, 2}), DomainError);
}

TEST_CASE("cost estimate prefers exploration on sparse graphs") {
  const auto inst = oracle::instance(2000, 0.002, 0.9, 0.5, 3);
  const WitnessCost c = estimate_witness_cost(exact_khop_sets(inst.g1, 1), exact_khop_sets(inst.g2, 1), inst.seeds);
  CHECK(c.explore < c.bitsets);
  const auto dense_inst = oracle::instance(300, 0.3, 1.0, 0.5, 3);
  const WitnessCost d = estimate_witness_cost(exact_khop_sets(dense_inst.g1, 2),
                                              exact_khop_sets(dense_inst.g2, 2), dense_inst.seeds);
  CHECK(d.bitsets < d.explore);
}
