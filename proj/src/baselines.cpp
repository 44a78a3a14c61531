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

#include "tss/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "tss/error.hpp"
#include "tss/simd.hpp"

namespace tss {
namespace {

void CheckBudget(std::size_t n, std::size_t k) {
  if (k > n) {
    throw Error(ErrorCode::kSize, "budget " + std::to_string(k) +
                                      " exceeds pool size " + std::to_string(n));
  }
}

// Top-k by score, ties to the lower index. Gains are the scores.
SelectionResult TopK(const std::vector<double>& scores, std::size_t k) {
  CheckBudget(scores.size(), k);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return scores[x] > scores[y];
  });
  SelectionResult result;
  result.evaluations = scores.size();
  for (std::size_t r = 0; r < k; ++r) {
    result.selected.push_back(order[r]);
    result.gains.push_back(scores[order[r]]);
    result.total_value += scores[order[r]];
  }
  return result;
}

}  // namespace

const char* ToString(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kRandom:
      return "random";
    case BaselineKind::kUs:
      return "us";
    case BaselineKind::kTus:
      return "tus";
    case BaselineKind::kBadge:
      return "badge";
  }
  return "random";
}

bool ParseBaselineKind(std::string_view name, BaselineKind* kind) {
  for (BaselineKind k : {BaselineKind::kRandom, BaselineKind::kUs,
                         BaselineKind::kTus, BaselineKind::kBadge}) {
    if (name == ToString(k)) {
      *kind = k;
      return true;
    }
  }
  return false;
}

double Entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

SelectionResult RandomSelect(std::size_t n, std::size_t k, std::uint64_t seed) {
  CheckBudget(n, k);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  SelectionResult result;
  // Partial Fisher-Yates: position r receives a uniform draw from [r, n).
  for (std::size_t r = 0; r < k; ++r) {
    std::uniform_int_distribution<std::size_t> pick(r, n - 1);
    std::swap(pool[r], pool[pick(rng)]);
    result.selected.push_back(pool[r]);
  }
  result.gains.assign(k, 0.0);
  return result;
}

SelectionResult UncertaintySelect(const ProbabilityMatrix& probs,
                                  std::size_t k) {
  std::vector<double> scores(probs.rows());
  for (std::size_t i = 0; i < probs.rows(); ++i) scores[i] = Entropy(probs.row(i));
  return TopK(scores, k);
}

SelectionResult TargetedUncertaintySelect(const ProbabilityMatrix& probs,
                                          const SimilarityKernel& s_ut,
                                          std::size_t k) {
  if (probs.rows() != s_ut.rows()) {
    throw Error(ErrorCode::kShape,
                "probability rows (" + std::to_string(probs.rows()) +
                    ") differ from kernel rows (" +
                    std::to_string(s_ut.rows()) + ")");
  }
  if (s_ut.cols() == 0) {
    throw Error(ErrorCode::kConfiguration, "tus needs a nonempty target set");
  }
  std::vector<double> scores(probs.rows());
  for (std::size_t i = 0; i < probs.rows(); ++i) {
    scores[i] = Entropy(probs.row(i)) * simd::MaxElement(s_ut.row(i));
  }
  return TopK(scores, k);
}

SelectionResult BadgeSelect(const FeatureMatrix& embeddings, std::size_t k,
                            std::uint64_t seed) {
  const std::size_t n = embeddings.rows();
  CheckBudget(n, k);
  SelectionResult result;
  if (k == 0) return result;

  std::mt19937_64 rng(seed);
  std::vector<char> chosen(n, 0);
  auto take = [&](std::size_t index, double weight) {
    chosen[index] = 1;
    result.selected.push_back(index);
    result.gains.push_back(weight);
    result.total_value += weight;
  };

  const std::size_t first =
      std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  take(first, 0.0);

  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) {
    nearest[i] = simd::SquaredDistance(embeddings.row(i), embeddings.row(first));
  }
  result.evaluations = n;

  std::vector<double> weights(n);
  while (result.selected.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      weights[i] = chosen[i] ? 0.0 : nearest[i];
      total += weights[i];
    }
    if (!(total > 0.0)) {
      for (std::size_t i = 0; i < n; ++i) weights[i] = chosen[i] ? 0.0 : 1.0;
    }
    std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
    const std::size_t next = draw(rng);
    take(next, nearest[next]);
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(
          nearest[i], simd::SquaredDistance(embeddings.row(i), embeddings.row(next)));
    }
    result.evaluations += n;
  }
  return result;
}

}  // namespace tss
