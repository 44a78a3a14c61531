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
// Selection baselines that are not submodular maximizers: random sampling,
// entropy-based uncertainty sampling, target-weighted uncertainty sampling
// and k-means++ seeding over gradient embeddings. All return a
// SelectionResult so callers can treat every method alike; all are
// deterministic given their inputs and seed.
//

#ifndef TSS_BASELINES_HPP_
#define TSS_BASELINES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "tss/datastore.hpp"
#include "tss/kernel.hpp"
#include "tss/optimizer.hpp"

namespace tss {

enum class BaselineKind { kRandom, kUs, kTus, kBadge };

const char* ToString(BaselineKind kind);
bool ParseBaselineKind(std::string_view name, BaselineKind* kind);

// Shannon entropy in nats with 0 ln 0 = 0.
double Entropy(std::span<const double> probabilities);

// k distinct indices drawn uniformly without replacement; gains are zero.
SelectionResult RandomSelect(std::size_t n, std::size_t k, std::uint64_t seed);

// Top-k rows by predictive entropy, lowest index on ties.
SelectionResult UncertaintySelect(const ProbabilityMatrix& probs,
                                  std::size_t k);

// Top-k rows by entropy times best similarity to the target set.
SelectionResult TargetedUncertaintySelect(const ProbabilityMatrix& probs,
                                          const SimilarityKernel& s_ut,
                                          std::size_t k);

// k-means++ seeding: the first row uniformly, then each next row with
// probability proportional to its squared distance to the nearest chosen
// row (uniform over unchosen rows if every distance is zero). Gains are the
// squared distances at draw time.
SelectionResult BadgeSelect(const FeatureMatrix& embeddings, std::size_t k,
                            std::uint64_t seed);

}  // namespace tss

#endif  // TSS_BASELINES_HPP_
