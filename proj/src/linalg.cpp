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

#include "tss/linalg.hpp"

#include <cmath>

namespace tss::linalg {

bool CholeskyInPlace(Matrix& a) {
  const std::size_t n = a.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= a(j, k) * a(j, k);
    if (!(pivot > 0.0)) return false;
    const double root = std::sqrt(pivot);
    a(j, j) = root;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= a(i, k) * a(j, k);
      a(i, j) = v / root;
    }
  }
  return true;
}

std::optional<double> LogDetPd(Matrix a) {
  if (!CholeskyInPlace(a)) return std::nullopt;
  double total = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) total += 2.0 * std::log(a(i, i));
  return total;
}

void ForwardSubstitute(const Matrix& lower, std::span<double> b) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= lower(i, k) * b[k];
    b[i] = v / lower(i, i);
  }
}

}  // namespace tss::linalg
