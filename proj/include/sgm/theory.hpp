#pragma once

// Closed-form thresholds and concentration bounds for the 1-hop and 2-hop
// witness algorithms on correlated Erdos-Renyi graphs, plus Monte Carlo
// checks of the corresponding high-probability events. Natural log
// throughout. Evaluators require n >= 2, 0 < p < 1, 0 < s <= 1 and throw
// DomainError otherwise.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

#include "sgm/graph.hpp"
#include "sgm/synth.hpp"

namespace sgm::theory {

double epsilon(double n, double p, double s);
double psi_max(double n, double p, double s);
double tau(double n, double p, double s);
double x_min_1hop(double n, double p, double s, double beta);
double y_min_1hop(double n, double p, double s, double beta);
// Throws DomainError for beta == 0.
double delta_1(double p, double s, double beta);
double l_min(double n, double p, double s, double beta);
double m_min(double n, double p, double s, double beta, double a_u_minus_v, double b_u_minus_v);
double x_max_2hop(double n, double p, double s, double beta);
double y_max_2hop(double n, double p, double s, double beta, double a_u_minus_v,
                  double b_v_minus_u);
double z_max(double n, double p, double s);

struct Threshold {
  double value = 0.0;
  bool vacuous = false;  // value > 1: no beta in [0, 1] satisfies it
};

Threshold beta_threshold_1hop_ours(double n, double p, double s);

struct TwoHopThreshold : Threshold {
  std::array<double, 3> terms{};
  bool sparse_enough = false;  // n p^2 <= 1 / log n
  bool dense_enough = false;   // n p s^2 >= 128 log n
};

TwoHopThreshold beta_threshold_2hop_ours(double n, double p, double s);

enum class PriorCondition { noisy_seeds, one_hop_prior };

struct PriorThreshold : Threshold {
  bool in_window = true;  // noisy_seeds only: 1/n < p <= n^(-5/6)
};

PriorThreshold beta_threshold_prior(double n, double p, double s, PriorCondition which);

// The 2-hop requirement without the (1 - s) refinement, constants dropped.
double beta_threshold_old_criteria(double n, double p, double s);

struct NeighborhoodStats {
  double d_u = 0;
  double a_u = 0, a_v = 0;
  double b_u = 0, b_v = 0;
  double c_uu = 0, c_vv = 0, c_uv = 0;
  double a_u_minus_v = 0, b_u_minus_v = 0, b_v_minus_u = 0;
  double w1_vu = 0;
};

// Statistics of the pair (u, v) with G2 read through the true alignment, so
// "b_v" is the degree of truth(v) in g2.
NeighborhoodStats neighborhood_stats(const CorrelatedInstance& inst, Vertex u, Vertex v);

struct BoundReport {
  double epsilon = 0, psi_max = 0, tau = 0;
  double x_min_1hop = 0, y_min_1hop = 0;
  double l_min = 0, m_min = 0, delta_1 = 0;
  double x_max_2hop = 0, y_max_2hop = 0, z_max = 0;
  Threshold beta_req_1hop_ours;
  TwoHopThreshold beta_req_2hop_ours;
  PriorThreshold beta_req_1hop_prior;
  PriorThreshold beta_req_noisyseeds;
  bool sparse_enough = false;
  bool dense_enough = false;
  bool epsilon_small = false;  // epsilon <= 1/3
  bool noisyseeds_window = false;
};

// Throws DomainError for beta == 0 (delta_1, l_min and m_min need beta > 0).
BoundReport bound_report(const ModelParams& params, const NeighborhoodStats& stats);

enum class Event { lemma1_psi, lemma3_R, lemma6_T, criteria_weak, criteria_strong };

std::string event_name(Event e);
Event parse_event(const std::string& text);

struct EventCheck {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double rate() const { return samples == 0 ? 0.0 : static_cast<double>(violations) / static_cast<double>(samples); }
};

// Samples `trials` instances and `pairs_per_trial` fake pairs (u != v) in
// each, and counts pairs where the event fails. Trial t draws from the
// substream derive_seed({seed, t}).
EventCheck empirical_event_check(const ModelParams& params, Event event, std::size_t trials,
                                 std::size_t pairs_per_trial, std::uint64_t seed,
                                 unsigned threads = 1);

}  // namespace sgm::theory
