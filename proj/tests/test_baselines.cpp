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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "test_util.hpp"
#include "tss/baselines.hpp"

using tss::ErrorCode;
using tss::Matrix;
using tss::ProbabilityMatrix;

TEST_CASE("random selection") {
  CHECK(tss::RandomSelect(5, 0, 1).selected.empty());
  const auto all = tss::RandomSelect(6, 6, 9);
  std::vector<std::size_t> sorted = all.selected;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
  CHECK(tss::RandomSelect(100, 10, 42).selected ==
        tss::RandomSelect(100, 10, 42).selected);
  CHECK(tss::RandomSelect(100, 10, 42).selected !=
        tss::RandomSelect(100, 10, 43).selected);
  // A prefix of a longer draw with the same seed.
  const auto short_draw = tss::RandomSelect(50, 5, 7).selected;
  const auto long_draw = tss::RandomSelect(50, 20, 7).selected;
  CHECK(std::equal(short_draw.begin(), short_draw.end(), long_draw.begin()));
  CHECK(test::CaptureError([] { tss::RandomSelect(3, 4, 0); }).code ==
        ErrorCode::kSize);
}

TEST_CASE("entropy") {
  const std::vector<double> half = {0.5, 0.5};
  CHECK(tss::Entropy(half) == doctest::Approx(std::log(2.0)));
  const std::vector<double> onehot = {1.0, 0.0};
  CHECK(tss::Entropy(onehot) == 0.0);
  const std::vector<double> uniform(7, 1.0 / 7);
  CHECK(tss::Entropy(uniform) == doctest::Approx(std::log(7.0)));
}

TEST_CASE("uncertainty sampling") {
  const ProbabilityMatrix probs(Matrix{{0.5, 0.5}, {1, 0}, {0.9, 0.1}});
  const auto r = tss::UncertaintySelect(probs, 1);
  CHECK(r.selected == std::vector<std::size_t>{0});
  CHECK(r.gains[0] == doctest::Approx(0.6931).epsilon(1e-4));
  CHECK(tss::UncertaintySelect(probs, 3).selected ==
        std::vector<std::size_t>{0, 2, 1});

  const ProbabilityMatrix onehot(Matrix{{0, 1}, {1, 0}, {0, 1}, {1, 0}});
  CHECK(tss::UncertaintySelect(onehot, 2).selected ==
        std::vector<std::size_t>{0, 1});
  CHECK(test::CaptureError([&] { tss::UncertaintySelect(onehot, 5); }).code ==
        ErrorCode::kSize);
}

TEST_CASE("uncertainty sampling ignores class column order") {
  std::mt19937_64 rng(41);
  std::gamma_distribution<double> g(1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix p(30, 4);
    for (std::size_t i = 0; i < 30; ++i) {
      double total = 0.0;
      for (std::size_t c = 0; c < 4; ++c) total += (p(i, c) = g(rng));
      for (std::size_t c = 0; c < 4; ++c) p(i, c) /= total;
    }
    std::vector<std::size_t> perm = {0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix q(30, 4);
    for (std::size_t i = 0; i < 30; ++i) {
      for (std::size_t c = 0; c < 4; ++c) q(i, c) = p(i, perm[c]);
    }
    // Entropy sums in a different order after the permutation, so scores
    // agree up to rounding; random scores are far apart, so ranks agree.
    const auto a = tss::UncertaintySelect(ProbabilityMatrix(p), 5);
    const auto b = tss::UncertaintySelect(ProbabilityMatrix(q), 5);
    for (std::size_t r = 0; r < 5; ++r) {
      CHECK(a.gains[r] == doctest::Approx(b.gains[r]).epsilon(1e-12));
    }
    CHECK(a.selected == b.selected);
  }
}

TEST_CASE("targeted uncertainty sampling") {
  const ProbabilityMatrix probs(Matrix{{0.5, 0.5}, {1, 0}, {0.9, 0.1}});
  const tss::SimilarityKernel s_ut(Matrix{{0.1, 0.05}, {1.0, 0.2}, {0.3, 1.0}},
                                   false);
  const auto r = tss::TargetedUncertaintySelect(probs, s_ut, 1);
  CHECK(r.selected == std::vector<std::size_t>{2});
  CHECK(r.gains[0] == doctest::Approx(0.3251).epsilon(1e-3));

  const tss::SimilarityKernel zero(Matrix(3, 2, 0.0), false);
  CHECK(tss::TargetedUncertaintySelect(probs, zero, 2).selected ==
        std::vector<std::size_t>{0, 1});
  CHECK(tss::TargetedUncertaintySelect(probs, zero, 0).selected.empty());

  const tss::SimilarityKernel short_kernel(Matrix(2, 2, 0.5), false);
  CHECK(test::CaptureError([&] {
          tss::TargetedUncertaintySelect(probs, short_kernel, 1);
        }).code == ErrorCode::kShape);
}

TEST_CASE("k-means++ seeding") {
  SUBCASE("coincident points have zero weight") {
    const tss::FeatureMatrix pts(Matrix{{0, 0}, {0, 0}, {10, 0}});
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto r = tss::BadgeSelect(pts, 2, seed);
      if (r.selected[0] != 2) {
        CHECK(r.selected[1] == 2);
        CHECK(r.gains[1] == doctest::Approx(100.0));
      }
    }
  }
  SUBCASE("identical points fall back to uniform without repeats") {
    const tss::FeatureMatrix pts(Matrix(5, 3, 1.0));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto r = tss::BadgeSelect(pts, 5, seed);
      CHECK(std::set<std::size_t>(r.selected.begin(), r.selected.end()).size() == 5);
    }
  }
  SUBCASE("single draws cover the pool") {
    const tss::FeatureMatrix pts(Matrix{{0}, {1}, {2}, {3}});
    std::set<std::size_t> seen;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      seen.insert(tss::BadgeSelect(pts, 1, seed).selected[0]);
    }
    CHECK(seen.size() == 4);
  }
  SUBCASE("deterministic and duplicate-free on random embeddings") {
    std::mt19937_64 rng(42);
    const tss::FeatureMatrix pts(oracle::RandomPoints(rng, 200, 12));
    const auto a = tss::BadgeSelect(pts, 40, 5);
    const auto b = tss::BadgeSelect(pts, 40, 5);
    CHECK(a.selected == b.selected);
    CHECK(std::set<std::size_t>(a.selected.begin(), a.selected.end()).size() == 40);
    CHECK(tss::BadgeSelect(pts, 0, 5).selected.empty());
    CHECK(test::CaptureError([&] { tss::BadgeSelect(pts, 201, 5); }).code ==
          ErrorCode::kSize);
  }
}

TEST_CASE("baseline names round-trip") {
  for (auto k : {tss::BaselineKind::kRandom, tss::BaselineKind::kUs,
                 tss::BaselineKind::kTus, tss::BaselineKind::kBadge}) {
    tss::BaselineKind parsed;
    REQUIRE(tss::ParseBaselineKind(tss::ToString(k), &parsed));
    CHECK(parsed == k);
  }
}
