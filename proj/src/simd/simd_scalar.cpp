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

// Reference kernels. These define the semantics the vector variants are
// tested against.

#include <algorithm>
#include <limits>

#include "tss/simd.hpp"

namespace tss::simd::scalar {
namespace {

double Dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double Sum(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

double MaxElement(const double* a, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, a[i]);
  return m;
}

double SquaredDistance(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double PositiveGain(const double* row, const double* current, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::max(row[i] - current[i], 0.0);
  return acc;
}

double CappedGain(const double* row, const double* current, const double* cap,
                  std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double before = std::min(current[i], cap[i]);
    const double after = std::min(std::max(current[i], row[i]), cap[i]);
    acc += after - before;
  }
  return acc;
}

void MaxInPlace(double* current, const double* row, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) current[i] = std::max(current[i], row[i]);
}

void Axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

constexpr KernelTable kTable{
    &Dot,          &Sum,        &MaxElement, &SquaredDistance,
    &PositiveGain, &CappedGain, &MaxInPlace, &Axpy,
};

}  // namespace

const KernelTable& Table() { return kTable; }

}  // namespace tss::simd::scalar
