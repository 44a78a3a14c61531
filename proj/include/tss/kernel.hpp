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

#ifndef TSS_KERNEL_HPP_
#define TSS_KERNEL_HPP_

#include <cstddef>
#include <span>
#include <string_view>

#include "tss/datastore.hpp"
#include "tss/matrix.hpp"

namespace tss {

enum class SimilarityMetric { kCosine, kDot };

// Post-processing applied to every raw similarity.
enum class SimilarityTransform {
  kNone,
  kShiftScale,  // s <- (1 + s) / 2
  kClip,        // s <- max(0, s)
};

struct KernelConfig {
  SimilarityMetric metric = SimilarityMetric::kCosine;
  SimilarityTransform transform = SimilarityTransform::kShiftScale;
  // Added to the diagonal of within-set kernels after the transform.
  double psd_ridge = 0.0;
  std::size_t workers = 1;
};

const char* ToString(SimilarityMetric metric);
const char* ToString(SimilarityTransform transform);
SimilarityMetric ParseMetric(std::string_view name);
SimilarityTransform ParseTransform(std::string_view name);

// Dense r x c matrix of pairwise similarities. `symmetric` marks a
// within-set kernel, for which s_ij == s_ji holds bit-exactly.
class SimilarityKernel {
 public:
  SimilarityKernel() = default;
  // Throws kShape if `symmetric` is set but the values are not.
  SimilarityKernel(Matrix values, bool symmetric);

  std::size_t rows() const noexcept { return values_.rows(); }
  std::size_t cols() const noexcept { return values_.cols(); }
  bool symmetric() const noexcept { return symmetric_; }
  double operator()(std::size_t i, std::size_t j) const {
    return values_(i, j);
  }
  std::span<const double> row(std::size_t i) const { return values_.row(i); }
  const Matrix& values() const noexcept { return values_; }

  SimilarityKernel Transposed() const;

 private:
  Matrix values_;
  bool symmetric_ = false;
};

// Similarities between every row of `a` and every row of `b`. When `a` and
// `b` hold identical values the result is a symmetric within-set kernel
// (upper triangle mirrored; unit diagonal under cosine).
SimilarityKernel BuildKernel(const FeatureMatrix& a, const FeatureMatrix& b,
                             const KernelConfig& cfg = {});

// Adds `ridge` to every diagonal entry of a symmetric kernel.
SimilarityKernel RegularizePsd(const SimilarityKernel& k, double ridge);

}  // namespace tss

#endif  // TSS_KERNEL_HPP_
