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

// AArch64 NEON kernels (two doubles per lane group). Advanced SIMD is
// mandatory on AArch64, so no runtime probe is needed there.

#include "tss/simd.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include <algorithm>
#include <limits>

namespace tss::simd::neon {
namespace {

double Dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double Sum(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += a[i];
  return total;
}

double MaxElement(const double* a, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 2) {
    float64x2_t acc = vdupq_n_f64(m);
    for (; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vld1q_f64(a + i));
    m = vmaxvq_f64(acc);
  }
  for (; i < n; ++i) m = std::max(m, a[i]);
  return m;
}

double SquaredDistance(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vfmaq_f64(acc, d, d);
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

double PositiveGain(const double* row, const double* current, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t acc = zero;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(row + i), vld1q_f64(current + i));
    acc = vaddq_f64(acc, vmaxq_f64(d, zero));
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += std::max(row[i] - current[i], 0.0);
  return total;
}

double CappedGain(const double* row, const double* current, const double* cap,
                  std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t c = vld1q_f64(current + i);
    const float64x2_t k = vld1q_f64(cap + i);
    const float64x2_t before = vminq_f64(c, k);
    const float64x2_t after = vminq_f64(vmaxq_f64(c, vld1q_f64(row + i)), k);
    acc = vaddq_f64(acc, vsubq_f64(after, before));
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double before = std::min(current[i], cap[i]);
    const double after = std::min(std::max(current[i], row[i]), cap[i]);
    total += after - before;
  }
  return total;
}

void MaxInPlace(double* current, const double* row, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(current + i, vmaxq_f64(vld1q_f64(current + i), vld1q_f64(row + i)));
  }
  for (; i < n; ++i) current[i] = std::max(current[i], row[i]);
}

void Axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t a = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), a, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

constexpr KernelTable kTable{
    &Dot,          &Sum,        &MaxElement, &SquaredDistance,
    &PositiveGain, &CappedGain, &MaxInPlace, &Axpy,
};

}  // namespace

const KernelTable* Table() { return &kTable; }

}  // namespace tss::simd::neon

#else

namespace tss::simd::neon {
const KernelTable* Table() { return nullptr; }
}  // namespace tss::simd::neon

#endif
