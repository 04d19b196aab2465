#include "sgm/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sgm/errors.hpp"
#include "sgm/parallel.hpp"
#include "sgm/rng.hpp"

namespace sgm::theory {

namespace {

void check(double n, double p, double s) {
  if (!(n >= 2)) throw DomainError("bounds need n >= 2");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("bounds need 0 < p < 1");
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("bounds need 0 < s <= 1");
}

void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
}

double covered(double p, double s, double size) { return 1.0 - std::pow(1.0 - p * s, size); }

std::size_t count_common(std::span<const Vertex> a, const std::vector<Vertex>& b_sorted) {
  std::size_t c = 0;
  for (Vertex x : a) c += std::binary_search(b_sorted.begin(), b_sorted.end(), x);
  return c;
}

// G2 neighbourhood of truth(v), pulled back to G1 labels and sorted.
std::vector<Vertex> pulled_neighbors(const CorrelatedInstance& inst, Vertex v) {
  std::vector<Vertex> out;
  for (Vertex y : inst.g2.neighbors(inst.truth.image_or_none(v))) {
    out.push_back(inst.truth.preimage_or_none(y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// W_j(u, truth(v)) with reusable BFS scratch.
class PairCounter {
 public:
  PairCounter(const CorrelatedInstance& inst, unsigned j)
      : inst_(inst), j_(j), e1_(inst.g1), e2_(inst.g2) {}

  std::uint32_t operator()(Vertex u, Vertex v) {
    e1_.collect(u, j_, a_);
    e2_.collect(inst_.truth.image_or_none(v), j_, b_);
    std::uint32_t count = 0;
    for (Vertex w : a_) {
      const Vertex y = inst_.seeds.image_or_none(w);
      if (y != kNoVertex && std::binary_search(b_.begin(), b_.end(), y)) ++count;
    }
    return count;
  }

 private:
  const CorrelatedInstance& inst_;
  unsigned j_;
  KhopExplorer e1_, e2_;
  std::vector<Vertex> a_, b_;
};

}  // namespace

double epsilon(double n, double p, double s) {
  check(n, p, s);
  return std::sqrt(12.0 * std::log(n) / ((n - 1.0) * p * s * s));
}

double psi_max(double n, double p, double s) {
  check(n, p, s);
  const double mean = n * p * p * s * s;
  const double ln = std::log(n);
  return mean + std::sqrt(7.0 * mean * ln) + 7.0 / 3.0 * ln + 2.0;
}

double tau(double n, double p, double s) {
  check(n, p, s);
  const double ln = std::log(n);
  return 2.0 * std::sqrt(10.0 * n * p * s * (1.0 - s) * ln) + 5.0 * ln;
}

double x_min_1hop(double n, double p, double s, double beta) {
  check(n, p, s);
  check_beta(beta);
  const double ln = std::log(n);
  return (n * beta - 1.0) * p * s * s - std::sqrt(5.0 * n * beta * p * s * s * ln) - 5.0 / 3.0 * ln;
}

double y_min_1hop(double n, double p, double s, double beta) {
  check(n, p, s);
  check_beta(beta);
  const double ln = std::log(n);
  const double q = p * p * s * s;
  return (n * (1.0 - beta) - 2.0) * q - 5.0 * std::sqrt(n * q * ln) - 25.0 / 3.0 * ln;
}

double delta_1(double p, double s, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("delta_1 needs 0 < beta <= 1");
  return 6.0 * p * s / beta;
}

double l_min(double n, double p, double s, double beta) {
  check(n, p, s);
  const double d1 = delta_1(p, s, beta);
  const double ln = std::log(n);
  const double core = beta * n * n * p * p * std::pow(s, 4);
  return 7.0 / 24.0 * (1.0 - d1) * core - std::sqrt(35.0 / 16.0 * core * ln) - 2.5 * ln;
}

double m_min(double n, double p, double s, double beta, double a_u_minus_v, double b_u_minus_v) {
  check(n, p, s);
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("m_min needs 0 < beta <= 1");
  const double ln = std::log(n);
  return n * (1.0 - beta) * covered(p, s, a_u_minus_v) * covered(p, s, b_u_minus_v) -
         21.0 * std::pow(n, 3) * std::pow(p * s, 5) -
         7.5 * std::sqrt(1.5 * std::pow(n, 3) * std::pow(p * s, 4) * ln) - 12.5 * ln;
}

double x_max_2hop(double n, double p, double s, double beta) {
  check(n, p, s);
  check_beta(beta);
  return 2.0 * n * beta * (psi_max(n, p, s) * p * s + 2.25 * n * n * std::pow(p * s, 4));
}

double y_max_2hop(double n, double p, double s, double beta, double a_u_minus_v,
                  double b_v_minus_u) {
  check(n, p, s);
  check_beta(beta);
  const double ln = std::log(n);
  return n * (1.0 - beta) * covered(p, s, a_u_minus_v) * covered(p, s, b_v_minus_u) +
         n * n * std::pow(p * s, 3) + 2.5 * std::sqrt(15.0 * std::pow(n, 3) * std::pow(p * s, 4) * ln);
}

double z_max(double n, double p, double s) {
  check(n, p, s);
  return 4.5 * n * n * std::pow(p * s, 3);
}

Threshold beta_threshold_1hop_ours(double n, double p, double s) {
  check(n, p, s);
  const double ln = std::log(n);
  const double q = (1.0 - p) * (1.0 - p) * s * s;
  const double t1 = 45.0 * ln / (n * p * q);
  const double t2 = 30.0 * std::sqrt(ln / (n * q));
  const double value = std::max(t1, t2);
  return {value, value > 1.0};
}

TwoHopThreshold beta_threshold_2hop_ours(double n, double p, double s) {
  check(n, p, s);
  const double ln = std::log(n);
  TwoHopThreshold t;
  t.terms[0] = 600.0 * ln / (n * n * p * p * std::pow(s, 4));
  t.terms[1] = 600.0 * std::sqrt(ln / (n * std::pow(s, 4)));
  t.terms[2] = 600.0 * std::sqrt(n * p * p * p * (1.0 - s) * ln / s);
  t.value = std::max({t.terms[0], t.terms[1], t.terms[2]});
  t.vacuous = t.value > 1.0;
  t.sparse_enough = n * p * p <= 1.0 / ln;
  t.dense_enough = n * p * s * s >= 128.0 * ln;
  return t;
}

PriorThreshold beta_threshold_prior(double n, double p, double s, PriorCondition which) {
  check(n, p, s);
  PriorThreshold t;
  if (which == PriorCondition::noisy_seeds) {
    t.value = 1.0 / (2.0 * n * n * p * p * std::pow(s, 4));
    t.in_window = p > 1.0 / n && p <= std::pow(n, -5.0 / 6.0);
  } else {
    t.value = std::max(16.0 * std::log(n) / (n * p * s * s), 8.0 * p / 3.0);
  }
  t.vacuous = t.value > 1.0;
  return t;
}

double beta_threshold_old_criteria(double n, double p, double s) {
  check(n, p, s);
  const double ln = std::log(n);
  return std::max({ln / (n * n * p * p * std::pow(s, 4)), std::sqrt(ln / (n * std::pow(s, 4))),
                   std::sqrt(n * p * p * p * ln / s)});
}

NeighborhoodStats neighborhood_stats(const CorrelatedInstance& inst, Vertex u, Vertex v) {
  NeighborhoodStats st;
  const auto n1u = inst.g1.neighbors(u);
  const auto n1v = inst.g1.neighbors(v);
  const auto n2u = pulled_neighbors(inst, u);
  const auto n2v = pulled_neighbors(inst, v);
  st.d_u = static_cast<double>(inst.g0.degree(u));
  st.a_u = static_cast<double>(n1u.size());
  st.a_v = static_cast<double>(n1v.size());
  st.b_u = static_cast<double>(n2u.size());
  st.b_v = static_cast<double>(n2v.size());
  st.c_uu = static_cast<double>(count_common(n1u, n2u));
  st.c_vv = static_cast<double>(count_common(n1v, n2v));
  st.c_uv = static_cast<double>(count_common(n1u, n2v));
  st.a_u_minus_v = st.a_u - (inst.g1.has_edge(u, v) ? 1.0 : 0.0);
  st.b_u_minus_v = st.b_u - (std::binary_search(n2u.begin(), n2u.end(), v) ? 1.0 : 0.0);
  st.b_v_minus_u = st.b_v - (std::binary_search(n2v.begin(), n2v.end(), u) ? 1.0 : 0.0);
  // W_1(v, u): seeds w in N1(v) whose image lies in N2(truth(u)).
  std::size_t w1 = 0;
  const auto target = inst.g2.neighbors(inst.truth.image_or_none(u));
  for (Vertex w : n1v) {
    const Vertex y = inst.seeds.image_or_none(w);
    if (y != kNoVertex && std::binary_search(target.begin(), target.end(), y)) ++w1;
  }
  st.w1_vu = static_cast<double>(w1);
  return st;
}

BoundReport bound_report(const ModelParams& params, const NeighborhoodStats& stats) {
  const double n = static_cast<double>(params.n);
  const double p = params.p;
  const double s = params.s;
  const double beta = params.beta;
  check(n, p, s);
  check_beta(beta);
  BoundReport r;
  r.epsilon = epsilon(n, p, s);
  r.psi_max = psi_max(n, p, s);
  r.tau = tau(n, p, s);
  r.x_min_1hop = x_min_1hop(n, p, s, beta);
  r.y_min_1hop = y_min_1hop(n, p, s, beta);
  r.delta_1 = delta_1(p, s, beta);
  r.l_min = l_min(n, p, s, beta);
  r.m_min = m_min(n, p, s, beta, stats.a_u_minus_v, stats.b_u_minus_v);
  r.x_max_2hop = x_max_2hop(n, p, s, beta);
  r.y_max_2hop = y_max_2hop(n, p, s, beta, stats.a_u_minus_v, stats.b_v_minus_u);
  r.z_max = z_max(n, p, s);
  r.beta_req_1hop_ours = beta_threshold_1hop_ours(n, p, s);
  r.beta_req_2hop_ours = beta_threshold_2hop_ours(n, p, s);
  r.beta_req_1hop_prior = beta_threshold_prior(n, p, s, PriorCondition::one_hop_prior);
  r.beta_req_noisyseeds = beta_threshold_prior(n, p, s, PriorCondition::noisy_seeds);
  r.sparse_enough = r.beta_req_2hop_ours.sparse_enough;
  r.dense_enough = r.beta_req_2hop_ours.dense_enough;
  r.epsilon_small = r.epsilon <= 1.0 / 3.0;
  r.noisyseeds_window = r.beta_req_noisyseeds.in_window;
  return r;
}

std::string event_name(Event e) {
  switch (e) {
    case Event::lemma1_psi: return "lemma1_psi";
    case Event::lemma3_R: return "lemma3_R";
    case Event::lemma6_T: return "lemma6_T";
    case Event::criteria_weak: return "criteria_weak";
    case Event::criteria_strong: return "criteria_strong";
  }
  return "?";
}

Event parse_event(const std::string& text) {
  for (Event e : {Event::lemma1_psi, Event::lemma3_R, Event::lemma6_T, Event::criteria_weak,
                  Event::criteria_strong}) {
    if (event_name(e) == text) return e;
  }
  throw UsageError("unknown event '" + text + "'");
}

EventCheck empirical_event_check(const ModelParams& params, Event event, std::size_t trials,
                                 std::size_t pairs_per_trial, std::uint64_t seed,
                                 unsigned threads) {
  params.validate();
  if (params.n < 2) throw DomainError("fake pairs need n >= 2");
  const double n = static_cast<double>(params.n);
  const double p = params.p;
  const double s = params.s;
  check(n, p, s);
  const double psi = psi_max(n, p, s);
  const double eps = epsilon(n, p, s);
  const double t = tau(n, p, s);
  const double deg_lo = (1.0 - eps) * (n - 1.0) * p * s;
  const double deg_hi = (1.0 + eps) * (n - 1.0) * p * s;
  const double com_lo = (1.0 - eps) * (n - 1.0) * p * s * s;
  const double com_hi = (1.0 + eps) * (n - 1.0) * p * s * s;
  auto within = [](double x, double lo, double hi) { return lo < x && x < hi; };

  std::vector<std::size_t> violations(trials, 0);
  parallel_indices(trials, threads, [&](std::size_t trial) {
    Rng rng = make_stream(derive_seed({seed, trial}));
    const CorrelatedInstance inst = make_correlated_pair(params, rng);
    std::uniform_int_distribution<Vertex> pick_u(0, static_cast<Vertex>(params.n - 1));
    std::uniform_int_distribution<Vertex> pick_other(0, static_cast<Vertex>(params.n - 2));

    std::uint32_t diag_min = std::numeric_limits<std::uint32_t>::max();
    PairCounter w1(inst, 1);
    PairCounter w2(inst, 2);
    if (event == Event::criteria_weak) {
      for (Vertex x = 0; x < params.n; ++x) diag_min = std::min(diag_min, w2(x, x));
    }
    std::size_t bad = 0;
    for (std::size_t k = 0; k < pairs_per_trial; ++k) {
      const Vertex u = pick_u(rng);
      Vertex v = pick_other(rng);
      if (v >= u) ++v;
      bool violated = false;
      switch (event) {
        case Event::lemma1_psi:
          violated = w1(u, v) >= psi;
          break;
        case Event::lemma3_R: {
          const NeighborhoodStats st = neighborhood_stats(inst, u, v);
          const bool r = within(st.a_u, deg_lo, deg_hi) && within(st.a_v, deg_lo, deg_hi) &&
                         within(st.b_u, deg_lo, deg_hi) && within(st.b_v, deg_lo, deg_hi) &&
                         within(st.c_uu, com_lo, com_hi) && within(st.c_vv, com_lo, com_hi) &&
                         st.c_uv < psi && st.w1_vu < psi;
          violated = !r;
          break;
        }
        case Event::lemma6_T: {
          const double a_u = static_cast<double>(inst.g1.degree(u));
          const double a_v = static_cast<double>(inst.g1.degree(v));
          const double b_u = static_cast<double>(inst.g2.degree(inst.truth.image_or_none(u)));
          const double b_v = static_cast<double>(inst.g2.degree(inst.truth.image_or_none(v)));
          violated = a_u - a_v > t && b_v - b_u > t;
          break;
        }
        case Event::criteria_weak:
          violated = w2(u, v) >= diag_min;
          break;
        case Event::criteria_strong: {
          const std::uint32_t fake = w2(u, v);
          violated = fake >= w2(u, u) && fake >= w2(v, v);
          break;
        }
      }
      bad += violated;
    }
    violations[trial] = bad;
  });

  EventCheck out;
  out.samples = trials * pairs_per_trial;
  for (std::size_t b : violations) out.violations += b;
  return out;
}

}  // namespace sgm::theory
