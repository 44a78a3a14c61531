// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tss/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <utility>

#include "tss/error.hpp"
#include "tss/parallel.hpp"

namespace tss {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Candidate {
  std::size_t index;
  double gain;
};

// Lowest index among candidates whose gain is within kTieTolerance of the
// maximum. `candidates` need not be sorted.
Candidate PickWinner(const std::vector<Candidate>& candidates) {
  double best = kNegInf;
  for (const Candidate& c : candidates) best = std::max(best, c.gain);
  Candidate winner{std::numeric_limits<std::size_t>::max(), kNegInf};
  for (const Candidate& c : candidates) {
    if (c.gain >= best - kTieTolerance && c.index < winner.index) winner = c;
  }
  return winner;
}

std::vector<Candidate> ProbeAll(const ObjectiveState& state,
                                std::size_t workers) {
  std::vector<Candidate> candidates;
  for (std::size_t a = 0; a < state.ground_size(); ++a) {
    if (!state.contains(a)) candidates.push_back({a, 0.0});
  }
  ParallelFor(candidates.size(), workers,
              [&](std::size_t begin, std::size_t end) {
                for (std::size_t c = begin; c < end; ++c) {
                  candidates[c].gain = state.Gain(candidates[c].index);
                }
              });
  return candidates;
}

void Record(SelectionResult& result, ObjectiveState& state,
            const Candidate& winner) {
  state.Commit(winner.index);
  result.selected.push_back(winner.index);
  result.gains.push_back(winner.gain);
}

SelectionResult RunNaive(ObjectiveState& state, std::size_t steps,
                         std::size_t workers) {
  SelectionResult result;
  result.algorithm = GreedyAlgorithm::kNaive;
  for (std::size_t step = 0; step < steps; ++step) {
    const auto candidates = ProbeAll(state, workers);
    result.evaluations += candidates.size();
    Record(result, state, PickWinner(candidates));
  }
  return result;
}

// Stale gains from earlier steps bound current gains from above when gains
// never increase. A candidate is re-probed only while its bound could still
// reach the tie window of the best fresh gain, so the pick matches naive
// greedy exactly.
SelectionResult RunLazy(ObjectiveState& state, std::size_t steps,
                        std::size_t workers) {
  SelectionResult result;
  result.algorithm = GreedyAlgorithm::kLazy;
  if (steps == 0) return result;

  auto first = ProbeAll(state, workers);
  result.evaluations += first.size();
  const Candidate winner = PickWinner(first);
  Record(result, state, winner);

  auto worse = [](const Candidate& x, const Candidate& y) {
    if (x.gain != y.gain) return x.gain < y.gain;
    return x.index > y.index;
  };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(worse)> heap(
      worse);
  for (const Candidate& c : first) {
    if (c.index != winner.index) heap.push(c);
  }

  std::vector<Candidate> fresh;
  for (std::size_t step = 1; step < steps; ++step) {
    fresh.clear();
    double best = kNegInf;
    while (!heap.empty()) {
      const Candidate top = heap.top();
      // Room for rounding in the stale bound.
      const double slack = 1e-10 * std::max(1.0, std::abs(top.gain));
      if (!fresh.empty() && top.gain + slack < best - kTieTolerance) break;
      heap.pop();
      const double gain = state.Gain(top.index);
      ++result.evaluations;
      fresh.push_back({top.index, gain});
      best = std::max(best, gain);
    }
    const Candidate pick = PickWinner(fresh);
    Record(result, state, pick);
    for (const Candidate& c : fresh) {
      if (c.index != pick.index) heap.push(c);
    }
  }
  return result;
}

double LogBinomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// Calls visit(subset) for every size-k subset of {0..n-1} in lexicographic
// order until visit returns false.
template <typename Visit>
void ForEachSubset(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> subset(k);
  for (std::size_t i = 0; i < k; ++i) subset[i] = i;
  while (visit(std::as_const(subset))) {
    std::size_t pos = k;
    while (pos > 0 && subset[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return;
    ++subset[pos - 1];
    for (std::size_t i = pos; i < k; ++i) subset[i] = subset[i - 1] + 1;
  }
}

}  // namespace

const char* ToString(GreedyAlgorithm algorithm) {
  switch (algorithm) {
    case GreedyAlgorithm::kNaive:
      return "naive";
    case GreedyAlgorithm::kLazy:
      return "lazy";
    case GreedyAlgorithm::kExhaustive:
      return "exhaustive";
  }
  return "naive";
}

GreedyAlgorithm ParseGreedyAlgorithm(std::string_view name) {
  for (GreedyAlgorithm a : {GreedyAlgorithm::kNaive, GreedyAlgorithm::kLazy,
                            GreedyAlgorithm::kExhaustive}) {
    if (name == ToString(a)) return a;
  }
  throw Error(ErrorCode::kConfiguration, "unknown algorithm '" +
                                             std::string(name) +
                                             "' (naive|lazy|exhaustive)");
}

SelectionResult GreedyMaximize(const ObjectiveSpec& spec,
                               const SelectionConfig& cfg) {
  if (cfg.algorithm == GreedyAlgorithm::kExhaustive) {
    return ExhaustiveMaximize(spec, cfg.budget);
  }
  ObjectiveState state(spec);
  const std::size_t n = state.ground_size();
  const std::size_t steps = std::min(cfg.budget, n);
  const bool lazy = cfg.algorithm == GreedyAlgorithm::kLazy &&
                    HasDiminishingGains(spec.kind);
  SelectionResult result = lazy ? RunLazy(state, steps, cfg.workers)
                                : RunNaive(state, steps, cfg.workers);
  result.total_value = state.value();
  result.truncated = cfg.budget > n;
  return result;
}

SelectionResult ExhaustiveMaximize(const ObjectiveSpec& spec, std::size_t k) {
  spec.Validate();
  const std::size_t n = spec.GroundSize();
  const std::size_t size = std::min(k, n);
  if (LogBinomial(n, size) > std::log(kMaxExhaustiveSubsets) + 1e-9) {
    throw Error(ErrorCode::kSize, "exhaustive search over C(" +
                                      std::to_string(n) + ", " +
                                      std::to_string(size) +
                                      ") subsets exceeds the 1e6 limit");
  }

  SelectionResult result;
  result.algorithm = GreedyAlgorithm::kExhaustive;
  result.truncated = k > n;

  // Two passes: find the optimum, then the lexicographically first subset
  // within the tie window, which is the first one met in enumeration order.
  double best = kNegInf;
  ForEachSubset(n, size, [&](const std::vector<std::size_t>& subset) {
    best = std::max(best, Evaluate(spec, subset));
    ++result.evaluations;
    return true;
  });
  std::vector<std::size_t> chosen;
  ForEachSubset(n, size, [&](const std::vector<std::size_t>& subset) {
    if (Evaluate(spec, subset) < best - kTieTolerance) return true;
    chosen = subset;
    return false;
  });

  ObjectiveState state(spec);
  for (std::size_t a : chosen) {
    result.gains.push_back(state.Gain(a));
    state.Commit(a);
  }
  result.selected = std::move(chosen);
  result.total_value = Evaluate(spec, result.selected);
  return result;
}

}  // namespace tss
