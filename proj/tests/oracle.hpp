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

// Independent reference implementations used by the tests.
//
// Everything here is written from the textbook definitions with plain loops
// over std::vector and shares no code with the library: set functions are
// evaluated by direct double sums, determinants by cofactor expansion or
// Gaussian elimination, and the log-det mutual information via the Schur
// complement identity on the joint block matrix (so no matrix inverse is
// needed). Random instance generators live here too.

#ifndef TSS_TESTS_ORACLE_HPP_
#define TSS_TESTS_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "tss/kernel.hpp"
#include "tss/matrix.hpp"
#include "tss/objectives.hpp"

namespace oracle {

using Grid = std::vector<std::vector<double>>;
using Set = std::vector<std::size_t>;

// Determinant by Laplace expansion along the first row (n <= 7 or so).
inline double CofactorDet(const Grid& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1.0;
  if (n == 1) return a[0][0];
  double det = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    Grid minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<double> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(a[r][c]);
      }
      minor.push_back(row);
    }
    const double sign = (col % 2 == 0) ? 1.0 : -1.0;
    det += sign * a[0][col] * CofactorDet(minor);
  }
  return det;
}

// Determinant by Gaussian elimination with partial pivoting.
inline double LuDet(Grid a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(a[r][k]) > std::abs(a[pivot][k])) pivot = r;
    }
    if (a[pivot][k] == 0.0) return 0.0;
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a[r][k] / a[k][k];
      for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
    }
  }
  return det;
}

inline double Det(const Grid& a) {
  return a.size() <= 6 ? CofactorDet(a) : LuDet(a);
}

inline Grid ToGrid(const tss::SimilarityKernel& k) {
  Grid g(k.rows(), std::vector<double>(k.cols()));
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) g[i][j] = k(i, j);
  }
  return g;
}

struct Instance {
  tss::ObjectiveKind kind = tss::ObjectiveKind::kGcmi;
  double eta = 1.0;
  double gamma = 1.0;
  double lambda = 0.5;
  double ridge = 0.0;
  Grid uu;  // n x n
  Grid ut;  // n x m
  Grid tt;  // m x m
};

inline Instance FromSpec(const tss::ObjectiveSpec& spec) {
  Instance in;
  in.kind = spec.kind;
  in.eta = spec.eta;
  in.gamma = spec.gamma;
  in.lambda = spec.lambda_gc;
  in.ridge = spec.ridge;
  if (spec.s_uu) in.uu = ToGrid(*spec.s_uu);
  if (spec.s_ut) in.ut = ToGrid(*spec.s_ut);
  if (spec.s_tt) in.tt = ToGrid(*spec.s_tt);
  return in;
}

inline double Eval(const Instance& in, const Set& a) {
  using K = tss::ObjectiveKind;
  if (a.empty()) return 0.0;
  const std::size_t n = in.uu.empty() ? in.ut.size() : in.uu.size();

  auto gcmi = [&] {
    double s = 0.0;
    for (std::size_t i : a) {
      for (double v : in.ut[i]) s += v;
    }
    return 2.0 * s;
  };
  auto dsum = [&] {
    double s = 0.0;
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = x + 1; y < a.size(); ++y) s += 1.0 - in.uu[a[x]][a[y]];
    }
    return s;
  };
  auto best_in_a = [&](std::size_t i) {
    double best = in.uu[i][a[0]];
    for (std::size_t j : a) best = std::max(best, in.uu[i][j]);
    return best;
  };
  auto row_max = [&](std::size_t i) {
    double best = in.ut[i][0];
    for (double v : in.ut[i]) best = std::max(best, v);
    return best;
  };
  auto ridged_a = [&] {
    Grid g(a.size(), std::vector<double>(a.size()));
    for (std::size_t r = 0; r < a.size(); ++r) {
      for (std::size_t c = 0; c < a.size(); ++c) {
        g[r][c] = in.uu[a[r]][a[c]] + (r == c ? in.ridge : 0.0);
      }
    }
    return g;
  };

  switch (in.kind) {
    case K::kGcmi:
      return gcmi();
    case K::kGcmiDiv:
      return gcmi() + in.gamma * dsum();
    case K::kDsum:
      return dsum();
    case K::kFl: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += best_in_a(i);
      return s;
    }
    case K::kFl1mi: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        s += std::min(best_in_a(i), in.eta * row_max(i));
      }
      return s;
    }
    case K::kFl2mi: {
      double cover = 0.0;
      for (std::size_t t = 0; t < in.ut[0].size(); ++t) {
        double best = in.ut[a[0]][t];
        for (std::size_t i : a) best = std::max(best, in.ut[i][t]);
        cover += best;
      }
      double relevance = 0.0;
      for (std::size_t i : a) relevance += row_max(i);
      return cover + in.eta * relevance;
    }
    case K::kGc: {
      double cover = 0.0;
      double redundancy = 0.0;
      for (std::size_t j : a) {
        for (std::size_t i = 0; i < n; ++i) cover += in.uu[i][j];
        for (std::size_t i : a) redundancy += in.uu[i][j];
      }
      return cover - in.lambda * redundancy;
    }
    case K::kLogdet:
      return std::log(Det(ridged_a()));
    case K::kLogdetmi: {
      // det(S_A - eta^2 S_AT S_T^-1 S_TA) = det(J) / det(S_T) where J is the
      // block matrix [[S_A, eta S_AT], [eta S_TA, S_T]] (Schur complement).
      const std::size_t m = in.tt.size();
      const std::size_t s = a.size();
      Grid joint(s + m, std::vector<double>(s + m));
      Grid target(m, std::vector<double>(m));
      const Grid sa = ridged_a();
      for (std::size_t r = 0; r < s; ++r) {
        for (std::size_t c = 0; c < s; ++c) joint[r][c] = sa[r][c];
        for (std::size_t t = 0; t < m; ++t) {
          joint[r][s + t] = in.eta * in.ut[a[r]][t];
          joint[s + t][r] = in.eta * in.ut[a[r]][t];
        }
      }
      for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = 0; y < m; ++y) {
          target[x][y] = in.tt[x][y] + (x == y ? in.ridge : 0.0);
          joint[s + x][s + y] = target[x][y];
        }
      }
      return std::log(Det(sa)) + std::log(Det(target)) - std::log(LuDet(joint));
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Random instance generation.

// Cosine similarity of random Gaussian points, shifted into [0, 1]: a
// nonnegative symmetric unit-diagonal kernel. With dims >= rows the Gram
// matrix is almost surely strictly positive definite.
inline tss::Matrix RandomPoints(std::mt19937_64& rng, std::size_t rows,
                                std::size_t dims) {
  std::normal_distribution<double> normal(0.0, 1.0);
  tss::Matrix m(rows, dims);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < dims; ++j) m(i, j) = normal(rng);
  }
  return m;
}

inline double Cos(std::span<const double> x, std::span<const double> y) {
  double xy = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xy += x[i] * y[i];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  return xy / std::sqrt(xx * yy);
}

// Joint kernel over pool rows followed by target rows.
struct JointKernels {
  tss::KernelPtr uu, ut, tt;
};

// Kernels from random points. Shift-scaled cosine (1 + c) / 2 is the average
// of the all-ones matrix and a cosine Gram matrix, so the joint kernel over
// pool and target rows is positive semidefinite and nonnegative; with enough
// dimensions it is strictly positive definite almost surely.
inline JointKernels RandomKernels(std::mt19937_64& rng, std::size_t n,
                                  std::size_t m, bool shift_scale = true) {
  const std::size_t dims = n + m + 2;
  const tss::Matrix pool = RandomPoints(rng, n, dims);
  const tss::Matrix target = RandomPoints(rng, m, dims);
  auto build = [&](const tss::Matrix& a, const tss::Matrix& b, bool sym) {
    tss::Matrix k(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < b.rows(); ++j) {
        if (sym && j < i) {
          k(i, j) = k(j, i);
          continue;
        }
        const double c = (sym && i == j) ? 1.0 : Cos(a.row(i), b.row(j));
        k(i, j) = shift_scale ? (1.0 + c) / 2.0 : c;
      }
    }
    return std::make_shared<const tss::SimilarityKernel>(std::move(k), sym);
  };
  return {build(pool, pool, true), build(pool, target, false),
          build(target, target, true)};
}

inline tss::ObjectiveSpec RandomSpec(std::mt19937_64& rng,
                                     tss::ObjectiveKind kind, std::size_t n,
                                     std::size_t m, double ridge = 1e-3) {
  const JointKernels k = RandomKernels(rng, n, m);
  tss::ObjectiveSpec spec;
  spec.kind = kind;
  spec.ridge = ridge;
  const tss::KernelNeeds needs = tss::NeedsFor(kind);
  if (needs.within_pool) spec.s_uu = k.uu;
  if (needs.cross) spec.s_ut = k.ut;
  if (needs.within_target) spec.s_tt = k.tt;
  return spec;
}

inline Set RandomSubset(std::mt19937_64& rng, std::size_t n, std::size_t size) {
  Set all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(size);
  return all;
}

inline double RelativeError(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace oracle

#endif  // TSS_TESTS_ORACLE_HPP_
