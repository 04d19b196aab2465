#include <algorithm>
#include <chrono>

#include "sgm/bench.hpp"
#include "sgm/errors.hpp"
#include "sgm/parallel.hpp"
#include "sgm/synth.hpp"

namespace sgm::bench {

std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::size_t beta_index,
                         std::size_t trial) {
  return derive_seed({master, n, beta_index, trial});
}

std::vector<std::pair<std::size_t, double>> beta_grid(const ExperimentConfig& config, std::size_t n) {
  std::vector<std::pair<std::size_t, double>> out;
  if (!config.betas.empty()) {
    for (std::size_t i = 0; i < config.betas.size(); ++i) out.emplace_back(i, config.betas[i]);
    return out;
  }
  const double scale = rescale_factor(config.beta_rescale, static_cast<double>(n), config.p.at(n));
  for (std::size_t i = 0; i < config.x_values.size(); ++i) {
    const double beta = config.x_values[i] * scale;
    if (beta <= 1.0) out.emplace_back(i, beta);
  }
  return out;
}

TrialResult run_trial(const ExperimentConfig& config, std::size_t n, double beta,
                      std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  Rng rng = make_stream(seed);
  const ModelParams params{n, config.p.at(n), config.s, beta};
  const CorrelatedInstance inst = make_correlated_pair(params, rng);

  RunOptions options;
  options.method = config.method;
  if (config.complete_random) options.complete_random_seed = derive_seed({seed, 0x636f6d70ULL});
  std::vector<MatchResult> rounds;
  const MatchResult final_round =
      iterate(inst.g1, inst.g2, inst.seeds, config.algorithm, config.iterations, options, &rounds);

  TrialResult t;
  t.seed = seed;
  t.accuracy = accuracy(final_round.mapping, inst.truth);
  t.matched_count = final_round.matched_count;
  t.failure = final_round.failure;
  for (const MatchResult& r : rounds) {
    t.round_accuracy.push_back(accuracy(r.mapping, inst.truth));
    t.witness_ms += r.witness_ms;
    t.match_ms += r.match_ms;
  }
  t.total_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return t;
}

SweepResult run_sweep(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  SweepResult result;
  result.config = config;
  for (std::size_t n : config.n_values) {
    for (const auto& [index, beta] : beta_grid(config, n)) {
      SweepPoint point;
      point.n = n;
      point.p = config.p.at(n);
      point.s = config.s;
      point.beta = beta;
      point.beta_index = index;
      point.trials.resize(config.trials);
      result.points.push_back(std::move(point));
    }
  }

  // Largest instances first so a parallel run does not end on one long trial.
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    for (std::size_t t = 0; t < config.trials; ++t) tasks.emplace_back(i, t);
  }
  std::stable_sort(tasks.begin(), tasks.end(), [&](const auto& a, const auto& b) {
    return result.points[a.first].n > result.points[b.first].n;
  });
  parallel_indices(tasks.size(), threads, [&](std::size_t k) {
    auto& point = result.points[tasks[k].first];
    const std::size_t t = tasks[k].second;
    point.trials[t] = run_trial(config, point.n, point.beta,
                                trial_seed(config.seed, point.n, point.beta_index, t));
  });

  for (auto& point : result.points) {
    std::vector<double> acc;
    for (const auto& t : point.trials) acc.push_back(t.accuracy);
    point.median_accuracy = median(std::move(acc));
  }
  return result;
}

}  // namespace sgm::bench
