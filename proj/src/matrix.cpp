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

#include "tss/matrix.hpp"

#include <algorithm>

#include "tss/error.hpp"

namespace tss {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::kShape, "matrix literal has ragged rows");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::Transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

const char* ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kEmptyInput: return "empty input";
    case ErrorCode::kRange: return "range error";
    case ErrorCode::kNormalization: return "normalization error";
    case ErrorCode::kShape: return "shape error";
    case ErrorCode::kDegenerateFeature: return "degenerate feature";
    case ErrorCode::kConfiguration: return "configuration error";
    case ErrorCode::kDuplicate: return "duplicate index";
    case ErrorCode::kBounds: return "index out of bounds";
    case ErrorCode::kSize: return "size error";
    case ErrorCode::kIndefiniteKernel: return "indefinite kernel";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kIo: return "i/o error";
  }
  return "error";
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFormat:
    case ErrorCode::kParse:
    case ErrorCode::kEmptyInput:
    case ErrorCode::kRange:
    case ErrorCode::kNormalization:
    case ErrorCode::kShape:
    case ErrorCode::kDegenerateFeature:
    case ErrorCode::kIo:
      return 2;
    case ErrorCode::kConfiguration:
    case ErrorCode::kDuplicate:
    case ErrorCode::kBounds:
    case ErrorCode::kSize:
      return 3;
    case ErrorCode::kIndefiniteKernel:
    case ErrorCode::kDivergence:
      return 4;
  }
  return 1;
}

}  // namespace tss
