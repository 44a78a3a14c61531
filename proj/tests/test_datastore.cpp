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
#include <filesystem>
#include <limits>
#include <random>
#include <string>

#include "doctest.h"
#include "test_util.hpp"
#include "tss/datastore.hpp"
#include "tss/error.hpp"

using tss::ErrorCode;

TEST_CASE("features parse row-major") {
  const auto m = tss::ParseFeatures("1.0,0.0\n0.0,1.0");
  REQUIRE(m.rows() == 2);
  REQUIRE(m.dims() == 2);
  CHECK(m.values() == tss::Matrix{{1, 0}, {0, 1}});

  const auto single = tss::ParseFeatures("1.0,2.0,3.0");
  CHECK(single.rows() == 1);
  CHECK(single.dims() == 3);
}

TEST_CASE("a trailing newline, spaces and a leading plus are accepted") {
  const auto m = tss::ParseFeatures(" 1.5 , +2\r\n-3e-1,4\n");
  CHECK(m.values() == tss::Matrix{{1.5, 2.0}, {-0.3, 4.0}});
}

TEST_CASE("feature parse errors carry the right code and line") {
  const auto ragged = test::CaptureError([] { tss::ParseFeatures("1.0,2.0\n3.0"); });
  CHECK(ragged.code == ErrorCode::kFormat);
  CHECK(ragged.message.find(":2") != std::string::npos);

  CHECK(test::CaptureError([] { tss::ParseFeatures("1.0,abc"); }).code ==
        ErrorCode::kParse);
  CHECK(test::CaptureError([] { tss::ParseFeatures("1.0,nan"); }).code ==
        ErrorCode::kParse);
  CHECK(test::CaptureError([] { tss::ParseFeatures("inf"); }).code ==
        ErrorCode::kParse);
  CHECK(test::CaptureError([] { tss::ParseFeatures("1.0,"); }).code ==
        ErrorCode::kParse);
  CHECK(test::CaptureError([] { tss::ParseFeatures(""); }).code ==
        ErrorCode::kEmptyInput);
  CHECK(test::CaptureError([] { tss::ParseFeatures(" \n\n"); }).code ==
        ErrorCode::kEmptyInput);
  CHECK(test::CaptureError([] { tss::ParseFeatures("1\n\n2"); }).code ==
        ErrorCode::kFormat);
}

TEST_CASE("labels parse and are range checked") {
  const auto l = tss::ParseLabels("0\n1\n0", 2);
  CHECK(std::vector<int>(l.values().begin(), l.values().end()) ==
        std::vector<int>{0, 1, 0});
  CHECK(tss::ParseLabels("1\n1", 10).size() == 2);
  CHECK(test::CaptureError([] { tss::ParseLabels("2", 2); }).code ==
        ErrorCode::kRange);
  CHECK(test::CaptureError([] { tss::ParseLabels("-1", 2); }).code ==
        ErrorCode::kRange);
  CHECK(test::CaptureError([] { tss::ParseLabels("1.5", 2); }).code ==
        ErrorCode::kParse);
  CHECK(test::CaptureError([] { tss::LabelVector({0, 3}, 3); }).code ==
        ErrorCode::kRange);
}

TEST_CASE("probabilities are range and normalization checked") {
  const auto p = tss::ParseProbabilities("0.5,0.5");
  CHECK(p.rows() == 1);
  CHECK(p.classes() == 2);
  CHECK(tss::ParseProbabilities("1.0,0.0\n0.25,0.75").rows() == 2);
  CHECK(test::CaptureError([] { tss::ParseProbabilities("0.6,0.3"); }).code ==
        ErrorCode::kNormalization);
  CHECK(test::CaptureError([] { tss::ParseProbabilities("-0.5,1.5"); }).code ==
        ErrorCode::kRange);
  // Within tolerance of one.
  CHECK_NOTHROW(tss::ParseProbabilities("0.5,0.5000005"));
}

TEST_CASE("write then load reproduces features bit-exactly") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1e3);
  tss::Matrix m(17, 5);
  for (double& v : m.data()) v = normal(rng);
  m(0, 0) = std::numeric_limits<double>::min();
  m(0, 1) = std::numeric_limits<double>::max();
  m(0, 2) = -0.0;
  m(0, 3) = 0.1;
  m(0, 4) = std::nextafter(1.0, 2.0);
  const tss::FeatureMatrix original(m);

  test::TempDir dir;
  const auto path = dir.path() / "features.csv";
  tss::WriteFeatures(path, original);
  const auto loaded = tss::LoadFeatures(path);
  REQUIRE(loaded.rows() == original.rows());
  for (std::size_t i = 0; i < m.data().size(); ++i) {
    CHECK(std::bit_cast<std::uint64_t>(loaded.values().data()[i]) ==
          std::bit_cast<std::uint64_t>(m.data()[i]));
  }
}

TEST_CASE("labels and probabilities round-trip through files") {
  test::TempDir dir;
  const tss::LabelVector labels({0, 2, 1, 2}, 3);
  tss::WriteLabels(dir.path() / "labels.csv", labels);
  CHECK(tss::LoadLabels(dir.path() / "labels.csv", 3) == labels);

  const tss::ProbabilityMatrix probs(tss::Matrix{{0.1, 0.9}, {1.0 / 3, 2.0 / 3}});
  tss::WriteProbabilities(dir.path() / "probs.csv", probs);
  CHECK(tss::LoadProbabilities(dir.path() / "probs.csv").values() ==
        probs.values());
}

TEST_CASE("missing files are I/O errors") {
  CHECK(test::CaptureError([] {
          tss::LoadFeatures("/nonexistent/definitely/missing.csv");
        }).code == ErrorCode::kIo);
}

TEST_CASE("Select returns rows in the requested order") {
  const tss::FeatureMatrix m(tss::Matrix{{1, 2}, {3, 4}, {5, 6}});
  const std::vector<std::size_t> idx = {2, 0};
  CHECK(m.Select(idx).values() == tss::Matrix{{5, 6}, {1, 2}});
  const std::vector<std::size_t> bad = {3};
  CHECK(test::CaptureError([&] { m.Select(bad); }).code == ErrorCode::kBounds);
}

TEST_CASE("error codes map to process exit codes") {
  CHECK(tss::ExitCodeFor(ErrorCode::kFormat) == 2);
  CHECK(tss::ExitCodeFor(ErrorCode::kParse) == 2);
  CHECK(tss::ExitCodeFor(ErrorCode::kEmptyInput) == 2);
  CHECK(tss::ExitCodeFor(ErrorCode::kNormalization) == 2);
  CHECK(tss::ExitCodeFor(ErrorCode::kConfiguration) == 3);
  CHECK(tss::ExitCodeFor(ErrorCode::kIndefiniteKernel) == 4);
  CHECK(tss::ExitCodeFor(ErrorCode::kDivergence) == 4);
}
