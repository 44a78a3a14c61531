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

// AVX2 + FMA kernels. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here runs unless the dispatcher has confirmed CPU
// support.

#include "tss/simd.hpp"

#if defined(TSS_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <limits>

namespace tss::simd::avx2 {
namespace {

inline double HorizontalSum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline double HorizontalMax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double Dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                           acc0);
  }
  double acc = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double Sum(const double* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(a + i + 4));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
  double acc = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i];
  return acc;
}

double MaxElement(const double* a, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_set1_pd(m);
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(a + i));
    m = HorizontalMax(acc);
  }
  for (; i < n; ++i) m = std::max(m, a[i]);
  return m;
}

double SquaredDistance(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i),
                                    _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double total = HorizontalSum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

double PositiveGain(const double* row, const double* current, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(row + i),
                                    _mm256_loadu_pd(current + i));
    acc = _mm256_add_pd(acc, _mm256_max_pd(d, zero));
  }
  double total = HorizontalSum(acc);
  for (; i < n; ++i) total += std::max(row[i] - current[i], 0.0);
  return total;
}

double CappedGain(const double* row, const double* current, const double* cap,
                  std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d c = _mm256_loadu_pd(current + i);
    const __m256d r = _mm256_loadu_pd(row + i);
    const __m256d k = _mm256_loadu_pd(cap + i);
    const __m256d before = _mm256_min_pd(c, k);
    const __m256d after = _mm256_min_pd(_mm256_max_pd(c, r), k);
    acc = _mm256_add_pd(acc, _mm256_sub_pd(after, before));
  }
  double total = HorizontalSum(acc);
  for (; i < n; ++i) {
    const double before = std::min(current[i], cap[i]);
    const double after = std::min(std::max(current[i], row[i]), cap[i]);
    total += after - before;
  }
  return total;
}

void MaxInPlace(double* current, const double* row, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(current + i, _mm256_max_pd(_mm256_loadu_pd(current + i),
                                                _mm256_loadu_pd(row + i)));
  }
  for (; i < n; ++i) current[i] = std::max(current[i], row[i]);
}

void Axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

constexpr KernelTable kTable{
    &Dot,          &Sum,        &MaxElement, &SquaredDistance,
    &PositiveGain, &CappedGain, &MaxInPlace, &Axpy,
};

}  // namespace

const KernelTable* Table() { return &kTable; }

}  // namespace tss::simd::avx2

#else

namespace tss::simd::avx2 {
const KernelTable* Table() { return nullptr; }
}  // namespace tss::simd::avx2

#endif
