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

// Every vector kernel table available on this CPU must agree with the scalar
// reference. Reductions may differ by summation order, so they are compared
// with a tolerance scaled by the sum of magnitudes; elementwise max is exact.

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "tss/simd.hpp"

namespace {

using tss::simd::KernelTable;
using tss::simd::Level;

std::vector<double> RandomVector(std::mt19937_64& rng, std::size_t n,
                                 double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

double AbsSum(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] * b[i]);
  return s;
}

// Lengths covering empty input, sub-vector tails and multiple unrolled blocks.
constexpr std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17,
                                    31, 33, 64, 100, 257};

}  // namespace

TEST_CASE("scalar level is always available and first") {
  const auto levels = tss::simd::AvailableLevels();
  REQUIRE_FALSE(levels.empty());
  CHECK(levels.front() == Level::kScalar);
}

TEST_CASE("SetLevel switches the active table and rejects unsupported levels") {
  const Level original = tss::simd::ActiveLevel();
  for (Level level : tss::simd::AvailableLevels()) {
    CHECK(tss::simd::SetLevel(level));
    CHECK(tss::simd::ActiveLevel() == level);
    CHECK(&tss::simd::Active() == &tss::simd::TableFor(level));
  }
#if defined(__x86_64__)
  CHECK_FALSE(tss::simd::SetLevel(Level::kNeon));
#endif
  CHECK(tss::simd::SetLevel(original));
}

TEST_CASE("vector kernels match the scalar reference") {
  const KernelTable& ref = tss::simd::scalar::Table();
  std::mt19937_64 rng(7);
  for (Level level : tss::simd::AvailableLevels()) {
    const KernelTable& t = tss::simd::TableFor(level);
    CAPTURE(std::string(tss::simd::ToString(level)));
    for (std::size_t n : kLengths) {
      CAPTURE(n);
      for (int rep = 0; rep < 20; ++rep) {
        const auto a = RandomVector(rng, n);
        const auto b = RandomVector(rng, n);
        const auto cap = RandomVector(rng, n, 0.0, 1.5);
        const double scale = 1e-14 * (1.0 + AbsSum(a, b) + AbsSum(a, a));

        CHECK(std::abs(t.dot(a.data(), b.data(), n) -
                       ref.dot(a.data(), b.data(), n)) <= scale);
        CHECK(std::abs(t.sum(a.data(), n) - ref.sum(a.data(), n)) <=
              1e-14 * (1.0 + n * 2.0));
        CHECK(t.max_element(a.data(), n) == ref.max_element(a.data(), n));
        CHECK(std::abs(t.squared_distance(a.data(), b.data(), n) -
                       ref.squared_distance(a.data(), b.data(), n)) <=
              1e-14 * (1.0 + 16.0 * n));
        CHECK(std::abs(t.positive_gain(a.data(), b.data(), n) -
                       ref.positive_gain(a.data(), b.data(), n)) <=
              1e-14 * (1.0 + 4.0 * n));
        CHECK(std::abs(t.capped_gain(a.data(), b.data(), cap.data(), n) -
                       ref.capped_gain(a.data(), b.data(), cap.data(), n)) <=
              1e-14 * (1.0 + 4.0 * n));

        auto m1 = a;
        auto m2 = a;
        t.max_in_place(m1.data(), b.data(), n);
        ref.max_in_place(m2.data(), b.data(), n);
        CHECK(m1 == m2);

        auto y1 = b;
        auto y2 = b;
        t.axpy(0.37, a.data(), y1.data(), n);
        ref.axpy(0.37, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
          CHECK(std::abs(y1[i] - y2[i]) <= 1e-15 * (1.0 + std::abs(y2[i])));
        }
      }
    }
  }
}

TEST_CASE("max_element of an empty range is negative infinity") {
  for (Level level : tss::simd::AvailableLevels()) {
    CHECK(tss::simd::TableFor(level).max_element(nullptr, 0) ==
          -std::numeric_limits<double>::infinity());
  }
}

TEST_CASE("capped gain on a hand-computed case") {
  // current [0.1, 0.5], row [0.9, 0.2], cap [0.3, 1.0] -> (0.3 - 0.1) + 0.
  const std::vector<double> row = {0.9, 0.2};
  const std::vector<double> current = {0.1, 0.5};
  const std::vector<double> cap = {0.3, 1.0};
  for (Level level : tss::simd::AvailableLevels()) {
    CHECK(tss::simd::TableFor(level).capped_gain(row.data(), current.data(),
                                                  cap.data(), 2) ==
          doctest::Approx(0.2));
  }
}
