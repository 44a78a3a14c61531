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
// Set-function objectives over a ground set U, optionally conditioned on a
// query (target) set T through cross similarities.
//
// Submodular mutual information kinds, with s_ij taken from S_UU (i, j in U)
// or S_UT (i in U, j in T):
//
//   gcmi      2 * sum_{i in A} sum_{j in T} s_ij
//   fl1mi     sum_{i in U} min(max_{j in A} s_ij, eta * max_{j in T} s_ij)
//   fl2mi     sum_{j in T} max_{i in A} s_ij + eta * sum_{i in A} max_{j in T} s_ij
//   logdetmi  log det(S_A) - log det(S_A - eta^2 S_AT S_T^-1 S_AT^T)
//   gcmi_div  gcmi(A) + gamma * dsum(A)
//
// Plain kinds over S_UU:
//
//   fl        sum_{i in U} max_{j in A} s_ij
//   gc        sum_{i in U, j in A} s_ij - lambda * sum_{i, j in A} s_ij
//   logdet    log det(S_A + ridge I)
//   dsum      sum_{i < j in A} (1 - s_ij)
//
// Log-det kinds use S_A + ridge I and S_T + ridge I. Every kind evaluates to
// 0 on the empty set; max over an empty set is 0, which is why the facility
// location kinds require nonnegative similarities.
//

#ifndef TSS_OBJECTIVES_HPP_
#define TSS_OBJECTIVES_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "tss/kernel.hpp"

namespace tss {

enum class ObjectiveKind {
  kGcmi,
  kFl1mi,
  kFl2mi,
  kLogdetmi,
  kGcmiDiv,
  kFl,
  kGc,
  kLogdet,
  kDsum,
};

inline constexpr ObjectiveKind kAllObjectiveKinds[] = {
    ObjectiveKind::kGcmi,    ObjectiveKind::kFl1mi, ObjectiveKind::kFl2mi,
    ObjectiveKind::kLogdetmi, ObjectiveKind::kGcmiDiv, ObjectiveKind::kFl,
    ObjectiveKind::kGc,      ObjectiveKind::kLogdet, ObjectiveKind::kDsum,
};

const char* ToString(ObjectiveKind kind);
// Returns false for names that are not objective kinds.
bool ParseObjectiveKind(std::string_view name, ObjectiveKind* kind);

// Which kernels a kind reads.
struct KernelNeeds {
  bool within_pool = false;    // S_UU
  bool cross = false;          // S_UT
  bool within_target = false;  // S_TT
};
KernelNeeds NeedsFor(ObjectiveKind kind);

// True for the mutual-information kinds, which need a target set.
bool IsTargeted(ObjectiveKind kind);

// True when marginal gains never increase as the selection grows, so that
// stale gains are valid upper bounds for lazy greedy.
bool HasDiminishingGains(ObjectiveKind kind);

using KernelPtr = std::shared_ptr<const SimilarityKernel>;

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::kGcmi;
  double eta = 1.0;
  double gamma = 1.0;
  double lambda_gc = 0.5;
  double ridge = 1e-6;
  KernelPtr s_uu;
  KernelPtr s_ut;
  KernelPtr s_tt;

  // Throws kConfiguration for missing kernels or bad parameters and kShape
  // for inconsistent kernel shapes.
  void Validate() const;
  std::size_t GroundSize() const;
};

// Direct evaluation of the kind's formula on `selection` (no caches).
double Evaluate(const ObjectiveSpec& spec,
                std::span<const std::size_t> selection);

class ObjectiveCache;

// A growing selection A together with the auxiliaries that make marginal
// gains cheap: running max vectors for facility location kinds, running
// similarity sums for the graph-cut and disparity kinds, and incremental
// Cholesky rows for the log-det kinds.
//
// Gain() is const and may be called concurrently for different candidates;
// Commit() needs exclusive access.
class ObjectiveState {
 public:
  explicit ObjectiveState(ObjectiveSpec spec);
  ~ObjectiveState();
  ObjectiveState(const ObjectiveState& other);
  ObjectiveState& operator=(const ObjectiveState& other);
  ObjectiveState(ObjectiveState&&) noexcept;
  ObjectiveState& operator=(ObjectiveState&&) noexcept;

  const ObjectiveSpec& spec() const noexcept { return spec_; }
  std::size_t ground_size() const noexcept { return in_selection_.size(); }
  std::span<const std::size_t> selected() const noexcept { return selected_; }
  bool contains(std::size_t a) const { return in_selection_.at(a) != 0; }
  // f(A) accumulated from committed gains.
  double value() const noexcept { return value_; }

  // f(A + a) - f(A). Throws kDuplicate / kBounds.
  double Gain(std::size_t a) const;
  // Adds `a` to A and updates caches.
  void Commit(std::size_t a);

 private:
  void CheckCandidate(std::size_t a) const;

  ObjectiveSpec spec_;
  std::unique_ptr<ObjectiveCache> cache_;
  std::vector<std::size_t> selected_;
  std::vector<char> in_selection_;
  double value_ = 0.0;
};

}  // namespace tss

#endif  // TSS_OBJECTIVES_HPP_
