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

#ifndef TSS_LINALG_HPP_
#define TSS_LINALG_HPP_

#include <optional>
#include <span>

#include "tss/matrix.hpp"

namespace tss::linalg {

// Overwrites the lower triangle of the symmetric matrix `a` with its
// Cholesky factor L (a = L L^T). Returns false on a non-positive pivot.
bool CholeskyInPlace(Matrix& a);

// log det(a) for symmetric positive definite `a`; nullopt otherwise.
// The empty matrix has log-determinant 0.
std::optional<double> LogDetPd(Matrix a);

// Solves L x = b in place, L lower triangular with nonzero diagonal.
void ForwardSubstitute(const Matrix& lower, std::span<double> b);

}  // namespace tss::linalg

#endif  // TSS_LINALG_HPP_
