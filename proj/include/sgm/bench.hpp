#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgm/graph.hpp"
#include "sgm/matcher.hpp"

namespace sgm::bench {

// Fraction of `eligible` vertices u with result(u) == truth(u). Unmatched
// vertices count as wrong. Throws DomainError for an empty eligible set.
double accuracy(const VertexMapping& result, const VertexMapping& truth,
                const std::vector<Vertex>& eligible);
// Eligible set = every vertex on which truth is defined.
double accuracy(const VertexMapping& result, const VertexMapping& truth);

double median(std::vector<double> values);

// Edge probability either fixed or n^(-gamma), evaluated per n.
struct PSpec {
  enum class Kind { constant, power } kind = Kind::constant;
  double value = 0.0;  // p for constant, gamma for power

  double at(std::size_t n) const;
  std::string to_string() const;
  // "0.01", "n^-0.5", "n^-1/3".
  static PSpec parse(const std::string& text);
  friend bool operator==(const PSpec&, const PSpec&) = default;
};

// Scales used to rescale beta when comparing curves across n.
enum class Rescale { raw, one_hop_dense, one_hop_sparse, two_hop_t1, two_hop_t2, two_hop_t3 };

std::string rescale_name(Rescale r);
Rescale parse_rescale(const std::string& text);
double rescale_factor(Rescale r, double n, double p);

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::one_hop();
  unsigned iterations = 0;
  std::vector<std::size_t> n_values;
  PSpec p;
  double s = 1.0;
  // Either betas directly, or x values with beta = x * rescale_factor(n, p).
  std::vector<double> betas;
  std::vector<double> x_values;
  Rescale beta_rescale = Rescale::raw;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  WitnessMethod method = WitnessMethod::automatic;
  bool complete_random = false;
  bool timing = false;
  std::string csv_path;
  std::string svg_path;

  // Throws DomainError (or UsageError for a missing field).
  void validate() const;
  // Deterministic key = value text; parse(serialize()) == *this.
  std::string serialize() const;
  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct TrialResult {
  double accuracy = 0.0;
  std::size_t matched_count = 0;
  bool failure = false;
  double witness_ms = 0.0;
  double match_ms = 0.0;
  double total_ms = 0.0;
  std::uint64_t seed = 0;              // substream that produced the instance
  std::vector<double> round_accuracy;  // one entry per iteration round
};

struct SweepPoint {
  std::size_t n = 0;
  double p = 0.0;
  double s = 0.0;
  double beta = 0.0;
  std::size_t beta_index = 0;
  std::vector<TrialResult> trials;
  double median_accuracy = 0.0;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<SweepPoint> points;  // n-major, then beta index
};

std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::size_t beta_index,
                         std::size_t trial);

// Grid points for one n: (beta index, beta). Rescaled points with beta > 1
// are skipped; indices stay those of the x grid.
std::vector<std::pair<std::size_t, double>> beta_grid(const ExperimentConfig& config, std::size_t n);

// Runs every (n, beta, trial) on `threads` workers. Output does not depend on
// the worker count.
SweepResult run_sweep(const ExperimentConfig& config, unsigned threads = 1);

TrialResult run_trial(const ExperimentConfig& config, std::size_t n, double beta,
                      std::uint64_t seed);

}  // namespace sgm::bench
