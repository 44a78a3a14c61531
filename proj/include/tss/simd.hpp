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
// Vectorized inner loops shared by kernel construction, objective caches and
// k-means++ seeding. Each routine has a scalar reference implementation and
// optional AVX2/NEON variants; the variant is picked once at startup from the
// CPU feature set and may be overridden with TSS_SIMD=scalar|avx2|neon or
// SetLevel(). All variants agree to within floating-point reassociation.
//

#ifndef TSS_SIMD_HPP_
#define TSS_SIMD_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace tss::simd {

enum class Level { kScalar, kAvx2, kNeon };

const char* ToString(Level level);

// Function table for one instruction-set level. Lengths are passed
// explicitly; every pointer argument refers to at least `n` doubles.
struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  double (*max_element)(const double* a, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  // sum_i max(row_i - current_i, 0)
  double (*positive_gain)(const double* row, const double* current,
                          std::size_t n);
  // sum_i min(max(current_i, row_i), cap_i) - min(current_i, cap_i)
  double (*capped_gain)(const double* row, const double* current,
                        const double* cap, std::size_t n);
  // current_i = max(current_i, row_i)
  void (*max_in_place)(double* current, const double* row, std::size_t n);
  // y_i += alpha * x_i
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

namespace scalar {
const KernelTable& Table();
}
namespace avx2 {
// Null when the library was built without AVX2 support.
const KernelTable* Table();
}
namespace neon {
const KernelTable* Table();
}

// Best level the running CPU supports.
Level DetectLevel();
// Levels that are both compiled in and supported by this CPU.
std::vector<Level> AvailableLevels();

Level ActiveLevel();
// Returns false (leaving the active level unchanged) if `level` is not
// available on this machine.
bool SetLevel(Level level);

const KernelTable& TableFor(Level level);
const KernelTable& Active();

inline double Dot(std::span<const double> a, std::span<const double> b) {
  return Active().dot(a.data(), b.data(), a.size());
}
inline double Sum(std::span<const double> a) {
  return Active().sum(a.data(), a.size());
}
inline double MaxElement(std::span<const double> a) {
  return Active().max_element(a.data(), a.size());
}
inline double SquaredDistance(std::span<const double> a,
                              std::span<const double> b) {
  return Active().squared_distance(a.data(), b.data(), a.size());
}
inline double PositiveGain(std::span<const double> row,
                           std::span<const double> current) {
  return Active().positive_gain(row.data(), current.data(), row.size());
}
inline double CappedGain(std::span<const double> row,
                         std::span<const double> current,
                         std::span<const double> cap) {
  return Active().capped_gain(row.data(), current.data(), cap.data(),
                              row.size());
}
inline void MaxInPlace(std::span<double> current,
                       std::span<const double> row) {
  Active().max_in_place(current.data(), row.data(), current.size());
}
inline void Axpy(double alpha, std::span<const double> x, std::span<double> y) {
  Active().axpy(alpha, x.data(), y.data(), y.size());
}

}  // namespace tss::simd

#endif  // TSS_SIMD_HPP_
