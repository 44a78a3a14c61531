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

//
// Cardinality-constrained maximization.
//
// Greedy always spends the whole budget, even when the best remaining gain
// is zero or negative. At each step the winner is the lowest index whose
// gain is within kTieTolerance of the step's maximum gain; naive, lazy and
// exhaustive search share this rule so their outputs are comparable index by
// index.
//

#ifndef TSS_OPTIMIZER_HPP_
#define TSS_OPTIMIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "tss/objectives.hpp"

namespace tss {

inline constexpr double kTieTolerance = 1e-12;

enum class GreedyAlgorithm { kNaive, kLazy, kExhaustive };

const char* ToString(GreedyAlgorithm algorithm);
GreedyAlgorithm ParseGreedyAlgorithm(std::string_view name);

struct SelectionConfig {
  std::size_t budget = 0;
  GreedyAlgorithm algorithm = GreedyAlgorithm::kLazy;
  // Only consumed by randomized baselines; kept here so a run is fully
  // described by one config.
  std::uint64_t rng_seed = 0;
  // Threads used to probe candidate gains within one greedy step.
  std::size_t workers = 1;
};

struct SelectionResult {
  std::vector<std::size_t> selected;  // in selection order
  std::vector<double> gains;          // marginal gain of each pick
  double total_value = 0.0;
  std::size_t evaluations = 0;        // marginal-gain or set evaluations
  bool truncated = false;             // budget exceeded the ground set
  // Algorithm that actually ran (lazy falls back to naive for objectives
  // whose gains can grow).
  GreedyAlgorithm algorithm = GreedyAlgorithm::kNaive;
};

SelectionResult GreedyMaximize(const ObjectiveSpec& spec,
                               const SelectionConfig& cfg);

// True optimum over all subsets of size min(k, n) (fixed-budget semantics,
// like greedy); among sets within kTieTolerance of the optimum the
// lexicographically smallest sorted index sequence wins. Throws kSize when C(n, k) exceeds kMaxExhaustiveSubsets.
inline constexpr double kMaxExhaustiveSubsets = 1e6;
SelectionResult ExhaustiveMaximize(const ObjectiveSpec& spec, std::size_t k);

}  // namespace tss

#endif  // TSS_OPTIMIZER_HPP_
