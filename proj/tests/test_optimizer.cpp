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

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "test_util.hpp"
#include "tss/optimizer.hpp"

using tss::ErrorCode;
using tss::GreedyAlgorithm;
using tss::Matrix;
using tss::ObjectiveKind;
using tss::ObjectiveSpec;
using tss::SelectionConfig;

namespace {

ObjectiveSpec GcmiSpec(Matrix cross) {
  ObjectiveSpec s;
  s.kind = ObjectiveKind::kGcmi;
  s.s_ut = std::make_shared<const tss::SimilarityKernel>(std::move(cross), false);
  return s;
}

SelectionConfig Config(std::size_t k, GreedyAlgorithm a = GreedyAlgorithm::kLazy,
                       std::size_t workers = 1) {
  SelectionConfig cfg;
  cfg.budget = k;
  cfg.algorithm = a;
  cfg.workers = workers;
  return cfg;
}

}  // namespace

TEST_CASE("gcmi greedy picks the largest row sums") {
  // Row sums 0.7, 0.5, 0.9.
  const auto spec = GcmiSpec(Matrix{{0.4, 0.3}, {0.25, 0.25}, {0.5, 0.4}});
  for (auto a : {GreedyAlgorithm::kNaive, GreedyAlgorithm::kLazy}) {
    const auto r = tss::GreedyMaximize(spec, Config(2, a));
    CHECK(r.selected == std::vector<std::size_t>{2, 0});
    REQUIRE(r.gains.size() == 2);
    CHECK(r.gains[0] == doctest::Approx(1.8));
    CHECK(r.gains[1] == doctest::Approx(1.4));
    CHECK(r.total_value == doctest::Approx(3.2));
    CHECK_FALSE(r.truncated);
  }
}

TEST_CASE("zero budget selects nothing") {
  const auto spec = GcmiSpec(Matrix{{0.4}, {0.2}});
  const auto r = tss::GreedyMaximize(spec, Config(0));
  CHECK(r.selected.empty());
  CHECK(r.total_value == 0.0);
}

TEST_CASE("ties go to the lowest index") {
  const auto spec = GcmiSpec(Matrix(4, 3, 0.25));
  for (auto a : {GreedyAlgorithm::kNaive, GreedyAlgorithm::kLazy,
                 GreedyAlgorithm::kExhaustive}) {
    CHECK(tss::GreedyMaximize(spec, Config(2, a)).selected ==
          std::vector<std::size_t>{0, 1});
  }
}

TEST_CASE("budget beyond the ground set selects everything and flags it") {
  const auto spec = GcmiSpec(Matrix{{0.1}, {0.3}, {0.2}});
  const auto r = tss::GreedyMaximize(spec, Config(5));
  CHECK(r.selected == std::vector<std::size_t>{1, 2, 0});
  CHECK(r.truncated);
}

TEST_CASE("greedy spends the full budget even when gains turn negative") {
  std::mt19937_64 rng(31);
  ObjectiveSpec spec = oracle::RandomSpec(rng, ObjectiveKind::kGc, 6, 1);
  spec.lambda_gc = 1.0;
  const auto r = tss::GreedyMaximize(spec, Config(6));
  CHECK(r.selected.size() == 6);
  CHECK(r.gains.back() < 0.0);
}

TEST_CASE("exhaustive search") {
  SUBCASE("modular objective matches greedy as a set") {
    const auto spec = GcmiSpec(Matrix{{0.4, 0.3}, {0.25, 0.25}, {0.5, 0.4}});
    const auto r = tss::ExhaustiveMaximize(spec, 2);
    CHECK(r.selected == std::vector<std::size_t>{0, 2});
    CHECK(r.total_value == doctest::Approx(3.2));
  }
  SUBCASE("full budget returns the full set") {
    std::mt19937_64 rng(32);
    for (ObjectiveKind kind : tss::kAllObjectiveKinds) {
      const auto spec = oracle::RandomSpec(rng, kind, 5, 2);
      CHECK(tss::ExhaustiveMaximize(spec, 5).selected ==
            std::vector<std::size_t>{0, 1, 2, 3, 4});
    }
  }
  SUBCASE("greedy is within the approximation bound on facility location") {
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 20; ++rep) {
      const auto spec = oracle::RandomSpec(rng, ObjectiveKind::kFl, 8, 1);
      const double opt = tss::ExhaustiveMaximize(spec, 3).total_value;
      const double greedy = tss::GreedyMaximize(spec, Config(3)).total_value;
      CHECK(greedy >= (1.0 - 1.0 / std::exp(1.0)) * opt - 1e-9);
      CHECK(greedy <= opt + 1e-9);
    }
  }
  SUBCASE("too many subsets is a size error") {
    const auto spec = GcmiSpec(Matrix(40, 1, 0.5));
    CHECK(test::CaptureError([&] { tss::ExhaustiveMaximize(spec, 20); }).code ==
          ErrorCode::kSize);
    CHECK_NOTHROW(tss::ExhaustiveMaximize(spec, 2));
  }
}

TEST_CASE("lazy and naive agree and lazy probes no more") {
  std::mt19937_64 rng(34);
  for (ObjectiveKind kind : tss::kAllObjectiveKinds) {
    CAPTURE(std::string(tss::ToString(kind)));
    for (int rep = 0; rep < 20; ++rep) {
      const std::size_t n = 5 + rep % 20;
      const auto spec = oracle::RandomSpec(rng, kind, n, 1 + rep % 4);
      const std::size_t k = 1 + rep % n;
      const auto naive = tss::GreedyMaximize(spec, Config(k, GreedyAlgorithm::kNaive));
      const auto lazy = tss::GreedyMaximize(spec, Config(k, GreedyAlgorithm::kLazy));
      CHECK(lazy.selected == naive.selected);
      CHECK(lazy.evaluations <= naive.evaluations);
      if (!tss::HasDiminishingGains(kind)) {
        CHECK(lazy.algorithm == GreedyAlgorithm::kNaive);
      }
    }
  }
}

TEST_CASE("worker count does not change selections") {
  std::mt19937_64 rng(35);
  for (ObjectiveKind kind : tss::kAllObjectiveKinds) {
    const auto spec = oracle::RandomSpec(rng, kind, 30, 3);
    for (auto a : {GreedyAlgorithm::kNaive, GreedyAlgorithm::kLazy}) {
      const auto one = tss::GreedyMaximize(spec, Config(10, a, 1));
      const auto four = tss::GreedyMaximize(spec, Config(10, a, 4));
      CHECK(one.selected == four.selected);
      CHECK(one.gains == four.gains);
      CHECK(one.total_value == four.total_value);
    }
  }
}

TEST_CASE("algorithm names round-trip") {
  for (auto a : {GreedyAlgorithm::kNaive, GreedyAlgorithm::kLazy,
                 GreedyAlgorithm::kExhaustive}) {
    CHECK(tss::ParseGreedyAlgorithm(tss::ToString(a)) == a);
  }
  CHECK(test::CaptureError([] { tss::ParseGreedyAlgorithm("stochastic"); }).code ==
        ErrorCode::kConfiguration);
}
