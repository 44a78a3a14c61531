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

#include "tss/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tss/error.hpp"
#include "tss/parallel.hpp"
#include "tss/simd.hpp"

namespace tss {
namespace {

std::vector<double> RowNorms(const FeatureMatrix& m, std::string_view name) {
  std::vector<double> norms(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    norms[i] = std::sqrt(simd::Dot(m.row(i), m.row(i)));
    if (norms[i] == 0.0) {
      throw Error(ErrorCode::kDegenerateFeature,
                  std::string(name) + " row " + std::to_string(i) +
                      " has zero norm; cosine similarity is undefined");
    }
  }
  return norms;
}

double Transform(double s, SimilarityTransform t) {
  switch (t) {
    case SimilarityTransform::kNone:
      return s;
    case SimilarityTransform::kShiftScale:
      return 0.5 * (1.0 + s);
    case SimilarityTransform::kClip:
      return std::max(0.0, s);
  }
  return s;
}

}  // namespace

const char* ToString(SimilarityMetric metric) {
  return metric == SimilarityMetric::kCosine ? "cosine" : "dot";
}

const char* ToString(SimilarityTransform transform) {
  switch (transform) {
    case SimilarityTransform::kNone:
      return "none";
    case SimilarityTransform::kShiftScale:
      return "shift-scale";
    case SimilarityTransform::kClip:
      return "clip";
  }
  return "none";
}

SimilarityMetric ParseMetric(std::string_view name) {
  if (name == "cosine") return SimilarityMetric::kCosine;
  if (name == "dot") return SimilarityMetric::kDot;
  throw Error(ErrorCode::kConfiguration,
              "unknown metric '" + std::string(name) + "' (cosine|dot)");
}

SimilarityTransform ParseTransform(std::string_view name) {
  if (name == "none") return SimilarityTransform::kNone;
  if (name == "shift-scale") return SimilarityTransform::kShiftScale;
  if (name == "clip") return SimilarityTransform::kClip;
  throw Error(ErrorCode::kConfiguration,
              "unknown transform '" + std::string(name) +
                  "' (none|shift-scale|clip)");
}

SimilarityKernel::SimilarityKernel(Matrix values, bool symmetric)
    : values_(std::move(values)), symmetric_(symmetric) {
  for (double v : values_.data()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kRange, "kernel has a non-finite entry");
    }
  }
  if (!symmetric_) return;
  if (values_.rows() != values_.cols()) {
    throw Error(ErrorCode::kShape, "symmetric kernel must be square");
  }
  for (std::size_t i = 0; i < values_.rows(); ++i) {
    for (std::size_t j = i + 1; j < values_.cols(); ++j) {
      if (values_(i, j) != values_(j, i)) {
        throw Error(ErrorCode::kShape,
                    "kernel flagged symmetric but s(" + std::to_string(i) +
                        "," + std::to_string(j) + ") != s(" +
                        std::to_string(j) + "," + std::to_string(i) + ")");
      }
    }
  }
}

SimilarityKernel SimilarityKernel::Transposed() const {
  SimilarityKernel t;
  t.values_ = values_.Transposed();
  t.symmetric_ = symmetric_;
  return t;
}

SimilarityKernel BuildKernel(const FeatureMatrix& a, const FeatureMatrix& b,
                             const KernelConfig& cfg) {
  if (a.dims() != b.dims()) {
    throw Error(ErrorCode::kShape, "feature dimensions differ: " +
                                       std::to_string(a.dims()) + " vs " +
                                       std::to_string(b.dims()));
  }
  if (cfg.psd_ridge < 0.0) {
    throw Error(ErrorCode::kConfiguration, "psd ridge must be nonnegative");
  }
  const bool same = (&a == &b) || a == b;
  const bool cosine = cfg.metric == SimilarityMetric::kCosine;
  std::vector<double> norm_a, norm_b;
  if (cosine) {
    norm_a = RowNorms(a, same ? "features" : "left features");
    norm_b = same ? norm_a : RowNorms(b, "right features");
  }

  auto similarity = [&](std::size_t i, std::size_t j) {
    double s = simd::Dot(a.row(i), b.row(j));
    if (cosine) s = std::clamp(s / (norm_a[i] * norm_b[j]), -1.0, 1.0);
    return Transform(s, cfg.transform);
  };

  Matrix out(a.rows(), b.rows());
  if (same) {
    // Each worker owns rows [begin, end) of the upper triangle.
    ParallelFor(a.rows(), cfg.workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        out(i, i) = cosine ? Transform(1.0, cfg.transform) : similarity(i, i);
        for (std::size_t j = i + 1; j < b.rows(); ++j) out(i, j) = similarity(i, j);
      }
    });
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < i; ++j) out(i, j) = out(j, i);
      out(i, i) += cfg.psd_ridge;
    }
  } else {
    ParallelFor(a.rows(), cfg.workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) out(i, j) = similarity(i, j);
      }
    });
  }
  return SimilarityKernel(std::move(out), same);
}

SimilarityKernel RegularizePsd(const SimilarityKernel& k, double ridge) {
  if (!k.symmetric()) {
    throw Error(ErrorCode::kShape, "ridge regularization needs a symmetric kernel");
  }
  if (ridge < 0.0) {
    throw Error(ErrorCode::kConfiguration, "ridge must be nonnegative");
  }
  Matrix values = k.values();
  for (std::size_t i = 0; i < values.rows(); ++i) values(i, i) += ridge;
  return SimilarityKernel(std::move(values), true);
}

}  // namespace tss
