#include <doctest.h>

#include <algorithm>
#include <map>

#include "oracles.hpp"
#include "sgm/bench.hpp"
#include "sgm/errors.hpp"
#include "sgm/matcher.hpp"

using namespace sgm;

namespace {

WitnessMatrix from_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
  WitnessMatrix w(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t u = 0; u < rows.size(); ++u) w.set_row(static_cast<Vertex>(u), rows[u]);
  return w;
}

std::vector<Vertex> images(const MatchResult& r) {
  const auto s = r.mapping.images();
  return {s.begin(), s.end()};
}

bool is_identity(const MatchResult& r) {
  for (Vertex u = 0; u < r.mapping.domain_size(); ++u)
    if (r.mapping.image_or_none(u) != u) return false;
  return true;
}

// Square matrix whose diagonal strictly dominates every off-diagonal entry.
WitnessMatrix dominant(std::size_t n, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> off(0, 20);
  std::uniform_int_distribution<std::uint32_t> gap(1, 5);
  std::vector<std::vector<std::uint32_t>> rows(n, std::vector<std::uint32_t>(n));
  std::uint32_t top = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) top = std::max(top, rows[u][v] = off(rng));
  for (std::size_t u = 0; u < n; ++u) rows[u][u] = top + gap(rng);
  return from_rows(rows);
}

WitnessMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint32_t hi, double density,
                            Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> value(1, hi);
  std::bernoulli_distribution keep(density);
  std::vector<std::vector<std::uint32_t>> m(rows, std::vector<std::uint32_t>(cols));
  for (auto& row : m)
    for (auto& x : row) x = keep(rng) ? value(rng) : 0;
  return from_rows(m);
}

}  // namespace

TEST_CASE("gmwm worked examples") {
  CHECK(is_identity(gmwm(from_rows({{5, 0, 0}, {0, 4, 0}, {0, 0, 3}}))));
  const MatchResult swap = gmwm(from_rows({{1, 4}, {5, 2}}));
  CHECK(images(swap) == std::vector<Vertex>{1, 0});
  CHECK(is_identity(gmwm(from_rows({{2, 2}, {2, 2}}))));
  const MatchResult none = gmwm(from_rows({{0, 0}, {0, 0}}));
  CHECK(none.matched_count == 0);
  CHECK(none.mapping.defined_count() == 0);
}

TEST_CASE("gmwm heap path equals the sorting reference") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 30, cols = 1 + rng() % 30;
    const std::uint32_t hi = trial % 3 == 0 ? 2 : 50;  // many ties in a third of the cases
    const WitnessMatrix w = random_matrix(rows, cols, hi, 0.05 + 0.9 * (trial % 10) / 10.0, rng);
    const MatchResult a = gmwm(w), b = gmwm_reference(w);
    CHECK(images(a) == images(b));
    CHECK(a.matched_count == b.matched_count);
  }
}

TEST_CASE("gmwm output is maximal") {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const WitnessMatrix w = random_matrix(25, 25, 9, 0.1, rng);
    const MatchResult r = gmwm(w);
    for (Vertex u = 0; u < 25; ++u) {
      if (r.mapping.is_defined(u)) continue;
      w.for_each_positive(u, [&](Vertex v, std::uint32_t) {
        CHECK(r.mapping.preimage_or_none(v) != kNoVertex);
      });
    }
  }
}

TEST_CASE("gmwm is invariant to positive rescaling without ties") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint32_t> values(100);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<std::uint32_t>(i + 1);
    std::shuffle(values.begin(), values.end(), rng);
    std::vector<std::vector<std::uint32_t>> m(10, std::vector<std::uint32_t>(10)), m3 = m;
    for (std::size_t i = 0; i < 100; ++i) {
      m[i / 10][i % 10] = values[i];
      m3[i / 10][i % 10] = 3 * values[i];
    }
    CHECK(images(gmwm(from_rows(m))) == images(gmwm(from_rows(m3))));
  }
}

TEST_CASE("dominant diagonal forces the identity") {
  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const WitnessMatrix w = dominant(2 + rng() % 40, rng);
    CHECK(is_identity(gmwm(w)));
    const MatchResult pa = parallel_argmax(w, 3);
    CHECK(is_identity(pa));
    CHECK_FALSE(pa.failure);
  }
}

TEST_CASE("parallel_argmax examples") {
  const MatchResult diag = parallel_argmax(from_rows({{5, 0, 0}, {0, 4, 0}, {0, 0, 3}}));
  CHECK(is_identity(diag));
  CHECK_FALSE(diag.failure);

  const MatchResult clash = parallel_argmax(from_rows({{3, 1}, {3, 1}}));
  CHECK(clash.failure);
  CHECK(clash.mapping.defined_count() == 0);

  // Row 2 keeps its pick while rows 0 and 1 collide; row 3 has nothing.
  const MatchResult part = parallel_argmax(from_rows({{0, 7, 1}, {2, 7, 0}, {0, 0, 4}, {0, 0, 0}}));
  CHECK(part.failure);
  CHECK(images(part) == std::vector<Vertex>{kNoVertex, kNoVertex, 2, kNoVertex});
  CHECK(part.matched_count == 1);

  // Ties go to the smallest column.
  CHECK(images(parallel_argmax(from_rows({{4, 4}, {0, 1}}))) == std::vector<Vertex>{0, 1});
}

TEST_CASE("parallel_argmax ignores the worker count") {
  Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const WitnessMatrix w = random_matrix(60, 70, 30, 0.2, rng);
    const MatchResult a = parallel_argmax(w, 1), b = parallel_argmax(w, 4);
    CHECK(images(a) == images(b));
    CHECK(a.failure == b.failure);
  }
}

TEST_CASE("noisy_seeds on a star") {
  const std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  const Graph g = build_graph(5, star);
  VertexMapping seeds(5, 5);
  seeds.assign(1, 1);
  seeds.assign(2, 2);
  const MatchResult r = noisy_seeds(g, g, seeds, 2);
  CHECK(images(r) == std::vector<Vertex>{0, kNoVertex, kNoVertex, kNoVertex, kNoVertex});
  CHECK(r.matched_count == 1);
}

TEST_CASE("noisy_seeds edge cases") {
  const auto inst = oracle::instance(300, 0.05, 0.9, 0.2, 21);
  CHECK(noisy_seeds(inst.g1, inst.g2, VertexMapping(300, 300), 2).matched_count == 0);
  CHECK_THROWS_AS(noisy_seeds(inst.g1, inst.g2, inst.seeds, 1), DomainError);
  CHECK_THROWS_AS(noisy_seeds(inst.g1, inst.g2, VertexMapping(299, 300), 2), DomainError);
  const MatchResult a = noisy_seeds(inst.g1, inst.g2, inst.seeds, 3);
  const MatchResult b = noisy_seeds(inst.g1, inst.g2, inst.seeds, 3);
  CHECK(images(a) == images(b));
  CHECK(a.matched_count > 0);
  // A few correct seeds percolate through most of the graph.
  VertexMapping few(300, 300);
  for (Vertex u = 0; u < 300; u += 10) few.assign(u, inst.truth.image_or_none(u));
  const MatchResult grown = noisy_seeds(inst.g1, inst.g2, few, 3);
  CHECK(bench::accuracy(grown.mapping, inst.truth) > 0.7);
  // Seed endpoints are not reserved; percolation finds most of them again.
  CHECK(grown.mapping.image_or_none(0) == inst.truth.image_or_none(0));
}

TEST_CASE("iterate with zero extra rounds is a single run") {
  const auto inst = oracle::instance(400, 0.03, 0.9, 0.4, 31);
  for (const Algorithm& algo : {Algorithm::one_hop(), Algorithm::two_hop(), Algorithm::percolation(3)}) {
    const MatchResult once = run_algorithm(inst.g1, inst.g2, inst.seeds, algo);
    std::vector<MatchResult> history;
    const MatchResult it = iterate(inst.g1, inst.g2, inst.seeds, algo, 0, {}, &history);
    CHECK(images(once) == images(it));
    CHECK(history.size() == 1);
  }
}

TEST_CASE("iterate is idempotent at a fixed point") {
  const auto inst = oracle::instance(300, 0.1, 1.0, 0.5, 32);
  const MatchResult first = run_algorithm(inst.g1, inst.g2, inst.seeds, Algorithm::one_hop());
  const MatchResult second = run_algorithm(inst.g1, inst.g2, first.mapping, Algorithm::one_hop());
  REQUIRE(first.mapping.images()[0] != kNoVertex);
  // With identical dense graphs the first pass already recovers the truth.
  REQUIRE(images(second) == images(first));
  std::vector<MatchResult> history;
  iterate(inst.g1, inst.g2, first.mapping, Algorithm::one_hop(), 3, {}, &history);
  REQUIRE(history.size() == 4);
  for (const MatchResult& r : history) CHECK(images(r) == images(first));
}

TEST_CASE("iterating one_hop does not lose accuracy in most trials") {
  const std::size_t n = 4000;
  const double p = std::pow(static_cast<double>(n), -6.0 / 7.0);
  int monotone = 0;
  for (std::uint64_t t = 0; t < 10; ++t) {
    const auto inst = oracle::instance(n, p, 0.9, 0.5, 1000 + t);
    std::vector<MatchResult> history;
    iterate(inst.g1, inst.g2, inst.seeds, Algorithm::one_hop(), 2, {}, &history);
    std::vector<double> acc;
    for (const auto& r : history) acc.push_back(bench::accuracy(r.mapping, inst.truth));
    monotone += std::is_sorted(acc.begin(), acc.end());
  }
  CHECK(monotone >= 8);
}

TEST_CASE("complete_randomly fills every free slot") {
  MatchResult r = gmwm(from_rows({{0, 0, 0, 5}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}));
  REQUIRE(r.matched_count == 1);
  Rng rng(9);
  complete_randomly(r, rng);
  CHECK(r.mapping.is_total());
  CHECK(r.matched_count == 4);
  CHECK(r.mapping.image_or_none(0) == 3);

  // Uniform over the 3! completions.
  std::map<std::vector<Vertex>, int> seen;
  for (int i = 0; i < 6000; ++i) {
    MatchResult c = gmwm(from_rows({{0, 0, 0, 5}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}));
    complete_randomly(c, rng);
    ++seen[images(c)];
  }
  CHECK(seen.size() == 6);
  for (const auto& [k, count] : seen) CHECK(std::abs(count - 1000) < 150);
}

TEST_CASE("algorithm names round-trip") {
  for (const Algorithm& a : {Algorithm::one_hop(), Algorithm::two_hop(), Algorithm::j_hop(3),
                             Algorithm::argmax(), Algorithm::percolation(5)}) {
    CHECK(Algorithm::parse(a.name()) == a);
  }
  CHECK(Algorithm::one_hop().name() == "one_hop");
  CHECK(Algorithm::j_hop(3).name() == "j_hop(3)");
  CHECK(Algorithm::percolation(5).name() == "noisy_seeds(5)");
  CHECK(Algorithm::parse("j_hop:3") == Algorithm::j_hop(3));
  CHECK(Algorithm::parse("noisy_seeds:10") == Algorithm::percolation(10));
  CHECK_THROWS_AS(Algorithm::parse("three_hop"), UsageError);
  CHECK_THROWS(Algorithm::parse("noisy_seeds(1)"));
  CHECK_THROWS(Algorithm::parse("j_hop(0)"));
}
