#include <doctest.h>

#include <cmath>

#include "sgm/errors.hpp"
#include "sgm/theory.hpp"

using namespace sgm;
using namespace sgm::theory;

namespace {

// Second evaluation path in long double, written from the formulas directly.
namespace ref {
using LD = long double;
LD ln(LD n) { return std::log(n); }
LD one_hop(LD n, LD p, LD s) {
  const LD a = 45 * ln(n) / (n * p * (1 - p) * (1 - p) * s * s);
  const LD b = 30 * std::sqrt(ln(n) / (n * (1 - p) * (1 - p) * s * s));
  return std::max(a, b);
}
LD two_hop_term(int k, LD n, LD p, LD s) {
  if (k == 0) return 600 * ln(n) / (n * n * p * p * s * s * s * s);
  if (k == 1) return 600 * std::sqrt(ln(n) / (n * s * s * s * s));
  return 600 * std::sqrt(n * p * p * p * (1 - s) * ln(n) / s);
}
LD noisy_prior(LD n, LD p, LD s) { return 1 / (2 * n * n * p * p * s * s * s * s); }
LD psi(LD n, LD p, LD s) {
  const LD m = n * p * p * s * s;
  return m + std::sqrt(7 * m * ln(n)) + 7 * ln(n) / 3 + 2;
}
}  // namespace ref

bool close(double got, long double want, double rel = 1e-10) {
  return std::abs(static_cast<long double>(got) - want) <= rel * std::abs(want);
}

}  // namespace

TEST_CASE("one-hop threshold worked example") {
  const Threshold t = beta_threshold_1hop_ours(1e4, 0.01, 0.9);
  CHECK(t.value == doctest::Approx(5.2207).epsilon(1e-4));
  CHECK(t.vacuous);
  CHECK(close(t.value, ref::one_hop(1e4, 0.01, 0.9)));
}

TEST_CASE("psi_max worked example") {
  const double ln = std::log(1e4);
  const double by_hand = 0.81 + std::sqrt(7 * 0.81 * ln) + 7.0 / 3.0 * ln + 2;
  CHECK(psi_max(1e4, 0.01, 0.9) == doctest::Approx(by_hand).epsilon(1e-12));
  CHECK(psi_max(1e4, 0.01, 0.9) == doctest::Approx(31.53).epsilon(1e-3));
}

TEST_CASE("s = 1 special cases") {
  for (double n : {100.0, 1e4, 1e6}) {
    CHECK(tau(n, 0.01, 1.0) == doctest::Approx(5 * std::log(n)).epsilon(1e-14));
    CHECK(beta_threshold_2hop_ours(n, 0.01, 1.0).terms[2] == 0.0);
  }
}

TEST_CASE("two-hop first term over the noisy-seeds requirement is 1200 log n") {
  for (double n : {1e3, 1e5, 1e7})
    for (double p : {1e-4, 1e-3, 1e-2})
      for (double s : {0.5, 0.9}) {
        const double ratio = beta_threshold_2hop_ours(n, p, s).terms[0] /
                             beta_threshold_prior(n, p, s, PriorCondition::noisy_seeds).value;
        CHECK(ratio == doctest::Approx(1200 * std::log(n)).epsilon(1e-12));
      }
}

TEST_CASE("two-hop threshold at a pinned point") {
  const double n = 1e4, p = std::pow(n, -0.75), s = 0.9;
  const TwoHopThreshold t = beta_threshold_2hop_ours(n, p, s);
  long double want = 0;
  for (int k = 0; k < 3; ++k) {
    CHECK(close(t.terms[k], ref::two_hop_term(k, n, p, s)));
    want = std::max(want, ref::two_hop_term(k, n, p, s));
  }
  CHECK(close(t.value, want));
  CHECK(std::isfinite(t.value));
}

TEST_CASE("noisy-seeds requirement at n = 1e6, p = n^-0.9, s = 1") {
  const double n = 1e6, p = std::pow(n, -0.9);
  const PriorThreshold t = beta_threshold_prior(n, p, 1.0, PriorCondition::noisy_seeds);
  CHECK(t.value == doctest::Approx(0.5 * std::pow(n, -0.2)).epsilon(1e-12));
  CHECK(t.in_window);
  CHECK_FALSE(beta_threshold_prior(n, std::pow(n, -0.5), 1.0, PriorCondition::noisy_seeds).in_window);
}

TEST_CASE("prior one-hop requirement is 8p/3 for constant p and large n") {
  const PriorThreshold t = beta_threshold_prior(1e8, 0.3, 0.9, PriorCondition::one_hop_prior);
  CHECK(t.value == doctest::Approx(0.8).epsilon(1e-14));
  const PriorThreshold small = beta_threshold_prior(1e3, 0.01, 0.9, PriorCondition::one_hop_prior);
  CHECK(small.value == doctest::Approx(16 * std::log(1e3) / (1e3 * 0.01 * 0.81)));
}

TEST_CASE("one-hop term crossover") {
  const double n = 1e5, s = 0.8;
  // 45 ln n / (n p q) = 30 sqrt(ln n / (n q)) with q = (1-p)^2 s^2, solved by bisection.
  auto diff = [&](double p) {
    const double q = (1 - p) * (1 - p) * s * s;
    return 45 * std::log(n) / (n * p * q) - 30 * std::sqrt(std::log(n) / (n * q));
  };
  double lo = 1e-6, hi = 0.5;
  for (int i = 0; i < 200; ++i) ((diff(std::sqrt(lo * hi)) > 0) ? lo : hi) = std::sqrt(lo * hi);
  const double cross = lo;
  CHECK(cross == doctest::Approx(1.5 * std::sqrt(std::log(n) / n)).epsilon(0.01));
  auto term1 = [&](double p) {
    const double q = (1 - p) * (1 - p) * s * s;
    return 45 * std::log(n) / (n * p * q);
  };
  CHECK(beta_threshold_1hop_ours(n, cross / 2, s).value == doctest::Approx(term1(cross / 2)));
  CHECK(beta_threshold_1hop_ours(n, cross * 2, s).value > term1(cross * 2));
}

TEST_CASE("two-hop regime boundaries") {
  const double n = 1e6, s = 0.8, ln = std::log(n);
  auto argmax = [&](double p) {
    const auto t = beta_threshold_2hop_ours(n, p, s).terms;
    return static_cast<int>(std::max_element(t.begin(), t.end()) - t.begin());
  };
  // term0 = term1 where p^4 = ln n / n^3 (the s factors cancel).
  const double b1 = std::pow(ln / (n * n * n), 0.25);
  // term1 = term2 where p^3 = 1 / (n^2 s^3 (1 - s)).
  const double b2 = std::pow(1.0 / (n * n * s * s * s * (1 - s)), 1.0 / 3.0);
  CHECK(argmax(b1 / 1.5) == 0);
  CHECK(argmax(std::sqrt(b1 * b2)) == 1);
  CHECK(argmax(b2 * 1.5) == 2);
  CHECK(b2 == doctest::Approx(std::pow(n, -2.0 / 3.0)).epsilon(0.5));
}

TEST_CASE("thresholds are non-increasing in s and in n") {
  for (double gamma : {0.3, 0.5, 0.7, 0.8}) {
    double prev3 = INFINITY, prev4 = INFINITY, prev2 = INFINITY;
    for (double n = 1e3; n <= 1e9; n *= 4) {
      const double p = std::pow(n, -gamma);
      const double t3 = beta_threshold_1hop_ours(n, p, 0.8).value;
      const double t4 = beta_threshold_2hop_ours(n, p, 0.8).terms[0];
      const double t2 = 16 * std::log(n) / (n * p * 0.64);
      CHECK(t3 <= prev3 * (1 + 1e-12));
      CHECK(t4 <= prev4 * (1 + 1e-12));
      CHECK(t2 <= prev2 * (1 + 1e-12));
      prev3 = t3, prev4 = t4, prev2 = t2;
    }
  }
  for (double p : {1e-4, 1e-3, 1e-2, 0.1}) {
    double prev[4] = {INFINITY, INFINITY, INFINITY, INFINITY};
    for (int k = 2; k <= 20; ++k) {
      const double s = 0.05 * k;
      const double v[4] = {beta_threshold_1hop_ours(1e5, p, s).value,
                           beta_threshold_2hop_ours(1e5, p, s).value,
                           beta_threshold_prior(1e5, p, s, PriorCondition::noisy_seeds).value,
                           beta_threshold_prior(1e5, p, s, PriorCondition::one_hop_prior).value};
      for (int k = 0; k < 4; ++k) {
        CHECK(v[k] <= prev[k] * (1 + 1e-12));
        prev[k] = v[k];
      }
    }
  }
}

TEST_CASE("bounds are positive and finite") {
  for (double n : {50.0, 1e4, 1e7})
    for (double p : {1e-5, 1e-2, 0.5})
      for (double s : {0.1, 0.7, 1.0}) {
        for (double x : {tau(n, p, s), psi_max(n, p, s), epsilon(n, p, s)}) {
          CHECK(std::isfinite(x));
          CHECK(x > 0);
        }
        CHECK(close(psi_max(n, p, s), ref::psi(n, p, s)));
      }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(beta_threshold_1hop_ours(1e4, 0.0, 0.9), DomainError);
  CHECK_THROWS_AS(beta_threshold_1hop_ours(1e4, 1.0, 0.9), DomainError);
  CHECK_THROWS_AS(beta_threshold_2hop_ours(1e4, 0.1, 0.0), DomainError);
  CHECK_THROWS_AS(psi_max(1, 0.1, 0.5), DomainError);
  CHECK_THROWS_AS(delta_1(0.1, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(l_min(1e4, 0.1, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(bound_report({1000, 0.01, 0.9, 0.0}, {}), DomainError);
  CHECK_NOTHROW(bound_report({1000, 0.01, 0.9, 0.5}, {}));
}

TEST_CASE("m_min with empty neighbourhoods") {
  const double n = 1e4, p = 0.001, s = 0.9, beta = 0.5, ln = std::log(n);
  const double rest = -21 * std::pow(n, 3) * std::pow(p * s, 5) -
                      7.5 * std::sqrt(1.5 * std::pow(n, 3) * std::pow(p * s, 4) * ln) - 12.5 * ln;
  CHECK(m_min(n, p, s, beta, 0, 0) == doctest::Approx(rest).epsilon(1e-12));
  CHECK(m_min(n, p, s, beta, 10, 0) == doctest::Approx(rest).epsilon(1e-12));
  CHECK(m_min(n, p, s, beta, 10, 10) > rest);
}

TEST_CASE("x_min + y_min clears psi_max once the one-hop requirement holds") {
  int checked = 0;
  for (double n = 1e5; n <= 1e9; n *= 10)
    for (double gamma : {0.1, 0.2, 0.3, 0.4, 0.5})
      for (double s : {0.7, 0.9, 1.0}) {
        const double p = std::pow(n, -gamma);
        const double need = beta_threshold_1hop_ours(n, p, s).value;
        if (need > 1) continue;
        for (double beta = need; beta <= 1.0; beta += (1.0 - need) / 7 + 1e-9) {
          CHECK(x_min_1hop(n, p, s, beta) + y_min_1hop(n, p, s, beta) >= psi_max(n, p, s));
          ++checked;
        }
      }
  CHECK(checked > 50);
}

TEST_CASE("bound_report wires every field") {
  const ModelParams params{2000, 0.05, 0.8, 0.5};
  NeighborhoodStats st;
  st.a_u_minus_v = 70;
  st.b_u_minus_v = 75;
  st.b_v_minus_u = 80;
  const BoundReport r = bound_report(params, st);
  CHECK(r.epsilon == epsilon(2000, 0.05, 0.8));
  CHECK(r.m_min == m_min(2000, 0.05, 0.8, 0.5, 70, 75));
  CHECK(r.y_max_2hop == y_max_2hop(2000, 0.05, 0.8, 0.5, 70, 80));
  CHECK(r.delta_1 == doctest::Approx(6 * 0.05 * 0.8 / 0.5));
  CHECK(r.z_max == doctest::Approx(4.5 * 2000.0 * 2000.0 * std::pow(0.04, 3)));
  CHECK(r.dense_enough == (2000 * 0.05 * 0.64 >= 128 * std::log(2000.0)));
  CHECK(r.epsilon_small == (r.epsilon <= 1.0 / 3.0));
}

TEST_CASE("neighbourhood statistics respect their invariants") {
  Rng rng(3);
  const CorrelatedInstance inst = make_correlated_pair({300, 0.05, 0.8, 0.5}, rng);
  for (Vertex u = 0; u < 20; ++u) {
    const Vertex v = 299 - u;
    const NeighborhoodStats st = neighborhood_stats(inst, u, v);
    CHECK(st.a_u <= st.d_u);
    CHECK(st.b_u <= st.d_u);
    CHECK(st.c_uu <= std::min(st.a_u, st.b_u));
    CHECK((st.a_u_minus_v == st.a_u || st.a_u_minus_v == st.a_u - 1));
    CHECK(st.a_u_minus_v == st.a_u - (inst.g1.has_edge(u, v) ? 1 : 0));
    CHECK(st.w1_vu <= st.a_v);
  }
}

TEST_CASE("event names round-trip") {
  for (Event e : {Event::lemma1_psi, Event::lemma3_R, Event::lemma6_T, Event::criteria_weak,
                  Event::criteria_strong})
    CHECK(parse_event(event_name(e)) == e);
  CHECK_THROWS_AS(parse_event("lemma2"), UsageError);
}

TEST_CASE("degree-gap event never fails without edge sampling") {
  const EventCheck c = empirical_event_check({500, 0.05, 1.0, 0.3}, Event::lemma6_T, 10, 200, 7);
  CHECK(c.samples == 2000);
  CHECK(c.violations == 0);
}

TEST_CASE("fake-pair one-hop witnesses stay below psi_max") {
  const EventCheck c = empirical_event_check({2000, 0.05, 0.8, 0.5}, Event::lemma1_psi, 10, 100, 8);
  CHECK(c.samples == 1000);
  CHECK(c.rate() <= 0.01);
}

TEST_CASE("event checks do not depend on the worker count") {
  const ModelParams params{400, 0.05, 0.8, 0.5};
  for (Event e : {Event::lemma1_psi, Event::lemma3_R, Event::criteria_strong}) {
    CHECK(empirical_event_check(params, e, 6, 50, 4, 1).violations ==
          empirical_event_check(params, e, 6, 50, 4, 3).violations);
  }
}

TEST_CASE("two-hop strong criterion holds well inside the recovery regime") {
  // Pinned by a pilot: 2-hop recovery is essentially exact here.
  const EventCheck c = empirical_event_check({1000, 0.03, 0.9, 0.3}, Event::criteria_strong, 10, 100, 9);
  CHECK(c.rate() <= 0.05);
}
