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
// Feature, label and probability containers and their flat-file formats.
//
// Features and probabilities are headerless CSV, one instance per line.
// Labels are one integer per line. Loaded containers are immutable.
//

#ifndef TSS_DATASTORE_HPP_
#define TSS_DATASTORE_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "tss/matrix.hpp"

namespace tss {

// n x d matrix of per-instance feature vectors; n, d >= 1, all finite.
class FeatureMatrix {
 public:
  explicit FeatureMatrix(Matrix values);

  std::size_t rows() const noexcept { return values_.rows(); }
  std::size_t dims() const noexcept { return values_.cols(); }
  std::span<const double> row(std::size_t i) const { return values_.row(i); }
  const Matrix& values() const noexcept { return values_; }

  // Rows `indices` in the given order.
  FeatureMatrix Select(std::span<const std::size_t> indices) const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  Matrix values_;
};

// Class ids in [0, num_classes).
class LabelVector {
 public:
  LabelVector(std::vector<int> labels, int num_classes);

  std::size_t size() const noexcept { return labels_.size(); }
  int num_classes() const noexcept { return num_classes_; }
  int operator[](std::size_t i) const { return labels_[i]; }
  std::span<const int> values() const noexcept { return labels_; }

  friend bool operator==(const LabelVector&, const LabelVector&) = default;

 private:
  std::vector<int> labels_;
  int num_classes_;
};

// n x C row-stochastic predicted class probabilities.
class ProbabilityMatrix {
 public:
  static constexpr double kRowSumTolerance = 1e-6;

  explicit ProbabilityMatrix(Matrix values);

  std::size_t rows() const noexcept { return values_.rows(); }
  std::size_t classes() const noexcept { return values_.cols(); }
  std::span<const double> row(std::size_t i) const { return values_.row(i); }
  const Matrix& values() const noexcept { return values_; }

 private:
  Matrix values_;
};

// Parsing from in-memory text; `source` names the origin in diagnostics.
FeatureMatrix ParseFeatures(std::string_view text,
                            std::string_view source = "<memory>");
LabelVector ParseLabels(std::string_view text, int num_classes,
                        std::string_view source = "<memory>");
ProbabilityMatrix ParseProbabilities(std::string_view text,
                                     std::string_view source = "<memory>");

FeatureMatrix LoadFeatures(const std::filesystem::path& path);
LabelVector LoadLabels(const std::filesystem::path& path, int num_classes);
ProbabilityMatrix LoadProbabilities(const std::filesystem::path& path);

// Writes 17 significant digits so that LoadFeatures reproduces every value.
void WriteFeatures(const std::filesystem::path& path, const FeatureMatrix& m);
void WriteProbabilities(const std::filesystem::path& path,
                        const ProbabilityMatrix& m);
void WriteLabels(const std::filesystem::path& path, const LabelVector& labels);

std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace tss

#endif  // TSS_DATASTORE_HPP_
