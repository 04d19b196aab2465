#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sgm/graph.hpp"
#include "sgm/rng.hpp"
#include "sgm/witness.hpp"

namespace sgm {

struct MatchResult {
  VertexMapping mapping;
  std::size_t matched_count = 0;
  bool failure = false;  // parallel_argmax only: some rows collided
  double witness_ms = 0.0;
  double match_ms = 0.0;
};

// Greedy maximum-weight matching over positive entries, ties broken by
// ascending (u, v). Sorts every positive entry; kept as the reference.
MatchResult gmwm_reference(const WitnessMatrix& w);

// Same output as gmwm_reference. Keeps one candidate per row (its best free
// column) in a max-heap and rescans a row only when its candidate was taken.
MatchResult gmwm(const WitnessMatrix& w);

// Every row picks its largest column (smallest v on ties); rows without a
// positive entry stay unmatched. Rows that pick the same column are all left
// unmatched and the failure flag is set.
MatchResult parallel_argmax(const WitnessMatrix& w, unsigned threads = 1);

// Percolation from the seeds. Spreading (w, w') adds a mark to every pair in
// N1(w) x N2(w'); a pair whose endpoints are both unused becomes matched once
// it holds r marks and is queued to spread. Pairs crossing r during one
// spread are taken in (u, v) order. Seeds are not part of the output.
MatchResult noisy_seeds(const Graph& g1, const Graph& g2, const VertexMapping& seeds, unsigned r);

// Pairs the unmatched rows with the unused columns uniformly at random.
void complete_randomly(MatchResult& result, Rng& rng);

enum class AlgorithmKind { j_hop, parallel_argmax, noisy_seeds };

struct Algorithm {
  AlgorithmKind kind = AlgorithmKind::j_hop;
  unsigned j = 1;  // hops for j_hop and parallel_argmax
  unsigned r = 2;  // threshold for noisy_seeds

  static Algorithm one_hop() { return {AlgorithmKind::j_hop, 1, 2}; }
  static Algorithm two_hop() { return {AlgorithmKind::j_hop, 2, 2}; }
  static Algorithm j_hop(unsigned j) { return {AlgorithmKind::j_hop, j, 2}; }
  static Algorithm argmax() { return {AlgorithmKind::parallel_argmax, 2, 2}; }
  static Algorithm percolation(unsigned r) { return {AlgorithmKind::noisy_seeds, 1, r}; }

  // "one_hop", "two_hop", "j_hop(3)", "noisy_seeds(5)", "parallel_argmax".
  std::string name() const;
  // Inverse of name(); also accepts "j_hop:3" and "noisy_seeds:5".
  static Algorithm parse(const std::string& text);

  friend bool operator==(const Algorithm&, const Algorithm&) = default;
};

struct RunOptions {
  unsigned threads = 1;
  WitnessMethod method = WitnessMethod::automatic;
  // When set, every round's output is completed to a full matching.
  std::optional<std::uint64_t> complete_random_seed;
};

MatchResult run_algorithm(const Graph& g1, const Graph& g2, const VertexMapping& seeds,
                          const Algorithm& algorithm, const RunOptions& options = {},
                          unsigned round = 0);

// Runs the algorithm iterations + 1 times, each round seeded by the previous
// output. `history`, when given, receives every round's result.
MatchResult iterate(const Graph& g1, const Graph& g2, const VertexMapping& seeds,
                    const Algorithm& algorithm, unsigned iterations,
                    const RunOptions& options = {}, std::vector<MatchResult>* history = nullptr);

}  // namespace sgm
