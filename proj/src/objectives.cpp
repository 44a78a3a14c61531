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

#include "tss/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "tss/error.hpp"
#include "tss/linalg.hpp"
#include "tss/simd.hpp"

namespace tss {
namespace {

constexpr const char* kIndefiniteAdvice =
    "; increase the ridge (--ridge) to make the kernel positive definite";

void RequireNonnegative(const SimilarityKernel& k, const char* name,
                        ObjectiveKind kind) {
  for (double v : k.values().data()) {
    if (v < 0.0) {
      throw Error(ErrorCode::kConfiguration,
                  std::string(ToString(kind)) + " needs nonnegative " + name +
                      " similarities; use the shift-scale or clip transform");
    }
  }
}

double MaxOrZero(std::span<const double> values) {
  return values.empty() ? 0.0 : simd::MaxElement(values);
}

// Lower Cholesky factor of S_TT + ridge I, or kIndefiniteKernel.
Matrix TargetFactor(const SimilarityKernel& s_tt, double ridge) {
  Matrix factor = s_tt.values();
  for (std::size_t i = 0; i < factor.rows(); ++i) factor(i, i) += ridge;
  if (!linalg::CholeskyInPlace(factor)) {
    throw Error(ErrorCode::kIndefiniteKernel,
                std::string("target kernel is not positive definite") +
                    kIndefiniteAdvice);
  }
  return factor;
}

// Rows w_i = L_T^-1 s_ut(i, :), so that S_UT S_T^-1 S_UT^T = W W^T.
Matrix WhitenedCross(const SimilarityKernel& s_ut, const Matrix& target_factor) {
  Matrix w = s_ut.values();
  for (std::size_t i = 0; i < w.rows(); ++i) {
    linalg::ForwardSubstitute(target_factor, w.row(i));
  }
  return w;
}

// Entry (i, j) of a positive definite matrix over the ground set.
using EntryFn = std::function<double(std::size_t, std::size_t)>;

double LogDetSubset(const EntryFn& entry, std::span<const std::size_t> set) {
  Matrix m(set.size(), set.size());
  for (std::size_t r = 0; r < set.size(); ++r) {
    for (std::size_t c = 0; c < set.size(); ++c) m(r, c) = entry(set[r], set[c]);
  }
  const auto logdet = linalg::LogDetPd(std::move(m));
  if (!logdet) {
    throw Error(ErrorCode::kIndefiniteKernel,
                "selected submatrix is not positive definite" +
                    std::string(kIndefiniteAdvice));
  }
  return *logdet;
}

// Cholesky factor of K_A kept as one row per ground element:
// rows_[a] = L_A^-1 K_{A,a} and residual_[a] = K_aa - |rows_[a]|^2, the
// Schur complement of a given A. Adding a to A multiplies det(K_A) by
// residual_[a], so log residual_[a] is the marginal log-det gain.
class IncrementalCholesky {
 public:
  IncrementalCholesky(std::size_t n, EntryFn entry)
      : n_(n), entry_(std::move(entry)), residual_(n) {
    for (std::size_t a = 0; a < n_; ++a) residual_[a] = entry_(a, a);
  }

  std::size_t rank() const { return rank_; }
  double residual(std::size_t a) const { return residual_[a]; }
  const EntryFn& entry() const { return entry_; }

  // Appends pivot j to the factor. Returns false if the Schur complement of
  // j is not positive, leaving the state unchanged.
  bool Extend(std::size_t j) {
    const double pivot = residual_[j];
    if (!(pivot > 0.0)) return false;
    Reserve(rank_ + 1);
    const double root = std::sqrt(pivot);
    const std::span<const double> row_j(&rows_[j * capacity_], rank_);
    for (std::size_t a = 0; a < n_; ++a) {
      double* row_a = &rows_[a * capacity_];
      const double e =
          (entry_(j, a) - simd::Dot(row_j, {row_a, rank_})) / root;
      row_a[rank_] = e;
      residual_[a] -= e * e;
    }
    ++rank_;
    return true;
  }

  // Recomputes every row from a dense factorization of K_set.
  void Rebuild(std::span<const std::size_t> set) {
    Matrix factor(set.size(), set.size());
    for (std::size_t r = 0; r < set.size(); ++r) {
      for (std::size_t c = 0; c < set.size(); ++c) {
        factor(r, c) = entry_(set[r], set[c]);
      }
    }
    if (!linalg::CholeskyInPlace(factor)) {
      throw Error(ErrorCode::kIndefiniteKernel,
                  "selected submatrix is not positive definite" +
                      std::string(kIndefiniteAdvice));
    }
    rank_ = 0;
    Reserve(set.size());
    rank_ = set.size();
    std::vector<double> column(set.size());
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t r = 0; r < set.size(); ++r) column[r] = entry_(set[r], a);
      linalg::ForwardSubstitute(factor, column);
      std::copy(column.begin(), column.end(), &rows_[a * capacity_]);
      residual_[a] = entry_(a, a) - simd::Dot(column, column);
    }
  }

 private:
  void Reserve(std::size_t needed) {
    if (needed <= capacity_) return;
    const std::size_t cap = std::max<std::size_t>(needed, 2 * capacity_ + 4);
    std::vector<double> grown(n_ * cap, 0.0);
    for (std::size_t a = 0; a < n_ && rank_ > 0; ++a) {
      std::copy_n(rows_.begin() + a * capacity_, rank_,
                  grown.begin() + a * cap);
    }
    rows_ = std::move(grown);
    capacity_ = cap;
  }

  std::size_t n_;
  EntryFn entry_;
  std::vector<double> residual_;
  std::vector<double> rows_;
  std::size_t capacity_ = 0;
  std::size_t rank_ = 0;
};

EntryFn RidgedPoolEntry(KernelPtr s_uu, double ridge) {
  return [s_uu = std::move(s_uu), ridge](std::size_t i, std::size_t j) {
    return (*s_uu)(i, j) + (i == j ? ridge : 0.0);
  };
}

// S_UU + ridge I - eta^2 S_UT (S_TT + ridge I)^-1 S_UT^T.
EntryFn ConditionedEntry(KernelPtr s_uu, std::shared_ptr<const Matrix> w,
                         double ridge, double eta) {
  const double scale = eta * eta;
  return [s_uu = std::move(s_uu), w = std::move(w), ridge, scale](
             std::size_t i, std::size_t j) {
    return (*s_uu)(i, j) + (i == j ? ridge : 0.0) -
           scale * simd::Dot(w->row(i), w->row(j));
  };
}

}  // namespace

// Per-kind incremental state behind ObjectiveState.
class ObjectiveCache {
 public:
  virtual ~ObjectiveCache() = default;
  virtual std::unique_ptr<ObjectiveCache> Clone() const = 0;
  virtual double Gain(std::size_t a,
                      std::span<const std::size_t> selected) const = 0;
  virtual void Commit(std::size_t a, std::span<const std::size_t> selected) = 0;
};

namespace {

template <typename Derived>
class ClonableCache : public ObjectiveCache {
 public:
  std::unique_ptr<ObjectiveCache> Clone() const override {
    return std::make_unique<Derived>(static_cast<const Derived&>(*this));
  }
};

// gcmi: a modular function; the gain of a is 2 * sum_j s_aj.
class GcmiCache final : public ClonableCache<GcmiCache> {
 public:
  explicit GcmiCache(const SimilarityKernel& s_ut) : relevance_(s_ut.rows()) {
    for (std::size_t i = 0; i < s_ut.rows(); ++i) {
      relevance_[i] = 2.0 * simd::Sum(s_ut.row(i));
    }
  }
  double Gain(std::size_t a, std::span<const std::size_t>) const override {
    return relevance_[a];
  }
  void Commit(std::size_t, std::span<const std::size_t>) override {}

 private:
  std::vector<double> relevance_;
};

// dsum and gcmi_div: running within-selection similarity sums.
class DisparityCache final : public ClonableCache<DisparityCache> {
 public:
  DisparityCache(KernelPtr s_uu, std::vector<double> relevance, double gamma)
      : s_uu_(std::move(s_uu)),
        relevance_(std::move(relevance)),
        gamma_(gamma),
        similarity_to_selection_(s_uu_->rows(), 0.0) {}

  double Gain(std::size_t a,
              std::span<const std::size_t> selected) const override {
    const double spread =
        static_cast<double>(selected.size()) - similarity_to_selection_[a];
    return relevance_[a] + gamma_ * spread;
  }
  void Commit(std::size_t a, std::span<const std::size_t>) override {
    simd::Axpy(1.0, s_uu_->row(a), similarity_to_selection_);
  }

 private:
  KernelPtr s_uu_;
  std::vector<double> relevance_;
  double gamma_;
  std::vector<double> similarity_to_selection_;
};

class GraphCutCache final : public ClonableCache<GraphCutCache> {
 public:
  GraphCutCache(KernelPtr s_uu, double lambda)
      : s_uu_(std::move(s_uu)),
        lambda_(lambda),
        coverage_(s_uu_->rows()),
        similarity_to_selection_(s_uu_->rows(), 0.0) {
    for (std::size_t i = 0; i < s_uu_->rows(); ++i) {
      coverage_[i] = simd::Sum(s_uu_->row(i));
    }
  }

  double Gain(std::size_t a, std::span<const std::size_t>) const override {
    return coverage_[a] -
           lambda_ * (2.0 * similarity_to_selection_[a] + (*s_uu_)(a, a));
  }
  void Commit(std::size_t a, std::span<const std::size_t>) override {
    simd::Axpy(1.0, s_uu_->row(a), similarity_to_selection_);
  }

 private:
  KernelPtr s_uu_;
  double lambda_;
  std::vector<double> coverage_;
  std::vector<double> similarity_to_selection_;
};

// fl: best similarity of every ground element to the selection.
class FacilityLocationCache final : public ClonableCache<FacilityLocationCache> {
 public:
  explicit FacilityLocationCache(KernelPtr s_uu)
      : s_uu_(std::move(s_uu)), best_(s_uu_->rows(), 0.0) {}

  double Gain(std::size_t a, std::span<const std::size_t>) const override {
    return simd::PositiveGain(s_uu_->row(a), best_);
  }
  void Commit(std::size_t a, std::span<const std::size_t>) override {
    simd::MaxInPlace(best_, s_uu_->row(a));
  }

 private:
  KernelPtr s_uu_;
  std::vector<double> best_;
};

// fl1mi: facility location over U with each element's coverage capped at
// eta times its best similarity to the target.
class Fl1miCache final : public ClonableCache<Fl1miCache> {
 public:
  Fl1miCache(KernelPtr s_uu, const SimilarityKernel& s_ut, double eta)
      : s_uu_(std::move(s_uu)), best_(s_uu_->rows(), 0.0), cap_(s_uu_->rows()) {
    for (std::size_t i = 0; i < cap_.size(); ++i) {
      cap_[i] = eta * MaxOrZero(s_ut.row(i));
    }
  }

  double Gain(std::size_t a, std::span<const std::size_t>) const override {
    return simd::CappedGain(s_uu_->row(a), best_, cap_);
  }
  void Commit(std::size_t a, std::span<const std::size_t>) override {
    simd::MaxInPlace(best_, s_uu_->row(a));
  }

 private:
  KernelPtr s_uu_;
  std::vector<double> best_;
  std::vector<double> cap_;
};

// fl2mi: coverage of each target element by the selection, plus eta times
// each selected element's best similarity to the target.
class Fl2miCache final : public ClonableCache<Fl2miCache> {
 public:
  Fl2miCache(KernelPtr s_ut, double eta)
      : s_ut_(std::move(s_ut)),
        target_best_(s_ut_->cols(), 0.0),
        relevance_(s_ut_->rows()) {
    for (std::size_t i = 0; i < relevance_.size(); ++i) {
      relevance_[i] = eta * MaxOrZero(s_ut_->row(i));
    }
  }

  double Gain(std::size_t a, std::span<const std::size_t>) const override {
    return simd::PositiveGain(s_ut_->row(a), target_best_) + relevance_[a];
  }
  void Commit(std::size_t a, std::span<const std::size_t>) override {
    simd::MaxInPlace(target_best_, s_ut_->row(a));
  }

 private:
  KernelPtr s_ut_;
  std::vector<double> target_best_;
  std::vector<double> relevance_;
};

// logdet and logdetmi. logdet tracks one factor; logdetmi tracks the ridged
// pool kernel and the target-conditioned kernel and subtracts their gains.
class LogDetCache final : public ClonableCache<LogDetCache> {
 public:
  explicit LogDetCache(IncrementalCholesky joint) : joint_(std::move(joint)) {}
  LogDetCache(IncrementalCholesky joint, IncrementalCholesky conditioned)
      : joint_(std::move(joint)), conditioned_(std::move(conditioned)) {}

  double Gain(std::size_t a,
              std::span<const std::size_t> selected) const override {
    double gain = SideGain(joint_, a, selected);
    if (conditioned_) gain -= SideGain(*conditioned_, a, selected);
    return gain;
  }

  void Commit(std::size_t a, std::span<const std::size_t> selected) override {
    ExtendSide(joint_, a, selected);
    if (conditioned_) ExtendSide(*conditioned_, a, selected);
  }

 private:
  static double SideGain(const IncrementalCholesky& side, std::size_t a,
                         std::span<const std::size_t> selected) {
    const double residual = side.residual(a);
    if (residual > 0.0) return std::log(residual);
    // Rank-one bookkeeping lost positivity; fall back to dense factors.
    std::vector<std::size_t> with_a(selected.begin(), selected.end());
    with_a.push_back(a);
    return LogDetSubset(side.entry(), with_a) -
           LogDetSubset(side.entry(), selected);
  }

  static void ExtendSide(IncrementalCholesky& side, std::size_t a,
                         std::span<const std::size_t> selected) {
    if (side.Extend(a)) return;
    std::vector<std::size_t> with_a(selected.begin(), selected.end());
    with_a.push_back(a);
    side.Rebuild(with_a);
  }

  IncrementalCholesky joint_;
  std::optional<IncrementalCholesky> conditioned_;
};

std::unique_ptr<ObjectiveCache> MakeCache(const ObjectiveSpec& spec) {
  const std::size_t n = spec.GroundSize();
  switch (spec.kind) {
    case ObjectiveKind::kGcmi:
      return std::make_unique<GcmiCache>(*spec.s_ut);
    case ObjectiveKind::kGcmiDiv: {
      std::vector<double> relevance(n);
      for (std::size_t i = 0; i < n; ++i) {
        relevance[i] = 2.0 * simd::Sum(spec.s_ut->row(i));
      }
      return std::make_unique<DisparityCache>(spec.s_uu, std::move(relevance),
                                              spec.gamma);
    }
    case ObjectiveKind::kDsum:
      return std::make_unique<DisparityCache>(spec.s_uu,
                                              std::vector<double>(n, 0.0), 1.0);
    case ObjectiveKind::kGc:
      return std::make_unique<GraphCutCache>(spec.s_uu, spec.lambda_gc);
    case ObjectiveKind::kFl:
      return std::make_unique<FacilityLocationCache>(spec.s_uu);
    case ObjectiveKind::kFl1mi:
      return std::make_unique<Fl1miCache>(spec.s_uu, *spec.s_ut, spec.eta);
    case ObjectiveKind::kFl2mi:
      return std::make_unique<Fl2miCache>(spec.s_ut, spec.eta);
    case ObjectiveKind::kLogdet:
      return std::make_unique<LogDetCache>(
          IncrementalCholesky(n, RidgedPoolEntry(spec.s_uu, spec.ridge)));
    case ObjectiveKind::kLogdetmi: {
      auto w = std::make_shared<const Matrix>(
          WhitenedCross(*spec.s_ut, TargetFactor(*spec.s_tt, spec.ridge)));
      return std::make_unique<LogDetCache>(
          IncrementalCholesky(n, RidgedPoolEntry(spec.s_uu, spec.ridge)),
          IncrementalCholesky(
              n, ConditionedEntry(spec.s_uu, w, spec.ridge, spec.eta)));
    }
  }
  throw Error(ErrorCode::kConfiguration, "unknown objective kind");
}

void CheckSelection(std::span<const std::size_t> selection, std::size_t n) {
  std::vector<char> seen(n, 0);
  for (std::size_t a : selection) {
    if (a >= n) {
      throw Error(ErrorCode::kBounds, "index " + std::to_string(a) +
                                          " outside ground set of size " +
                                          std::to_string(n));
    }
    if (seen[a]) {
      throw Error(ErrorCode::kDuplicate,
                  "index " + std::to_string(a) + " appears twice");
    }
    seen[a] = 1;
  }
}

double MaxOverSelectionOrZero(const SimilarityKernel& k, std::size_t i,
                              std::span<const std::size_t> selection) {
  double best = 0.0;
  bool any = false;
  for (std::size_t j : selection) {
    best = any ? std::max(best, k(i, j)) : k(i, j);
    any = true;
  }
  return best;
}

}  // namespace

const char* ToString(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kGcmi: return "gcmi";
    case ObjectiveKind::kFl1mi: return "fl1mi";
    case ObjectiveKind::kFl2mi: return "fl2mi";
    case ObjectiveKind::kLogdetmi: return "logdetmi";
    case ObjectiveKind::kGcmiDiv: return "gcmi_div";
    case ObjectiveKind::kFl: return "fl";
    case ObjectiveKind::kGc: return "gc";
    case ObjectiveKind::kLogdet: return "logdet";
    case ObjectiveKind::kDsum: return "dsum";
  }
  return "unknown";
}

bool ParseObjectiveKind(std::string_view name, ObjectiveKind* kind) {
  for (ObjectiveKind k : kAllObjectiveKinds) {
    if (name == ToString(k)) {
      *kind = k;
      return true;
    }
  }
  return false;
}

KernelNeeds NeedsFor(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kGcmi:
    case ObjectiveKind::kFl2mi:
      return {false, true, false};
    case ObjectiveKind::kFl1mi:
    case ObjectiveKind::kGcmiDiv:
      return {true, true, false};
    case ObjectiveKind::kLogdetmi:
      return {true, true, true};
    case ObjectiveKind::kFl:
    case ObjectiveKind::kGc:
    case ObjectiveKind::kLogdet:
    case ObjectiveKind::kDsum:
      return {true, false, false};
  }
  return {};
}

bool IsTargeted(ObjectiveKind kind) { return NeedsFor(kind).cross; }

bool HasDiminishingGains(ObjectiveKind kind) {
  switch (kind) {
    // Disparity sums reward spread, so gains can grow. Log-det mutual
    // information can too: once A holds a point, a second point correlated
    // with the target through it may gain more than it did alone.
    case ObjectiveKind::kDsum:
    case ObjectiveKind::kGcmiDiv:
    case ObjectiveKind::kLogdetmi:
      return false;
    default:
      return true;
  }
}

void ObjectiveSpec::Validate() const {
  const KernelNeeds needs = NeedsFor(kind);
  const std::string name = ToString(kind);
  auto missing = [&](const char* kernel) {
    return Error(ErrorCode::kConfiguration,
                 name + " requires the " + kernel + " kernel");
  };
  if (needs.within_pool && !s_uu) throw missing("pool-pool (S_UU)");
  if (needs.cross && !s_ut) throw missing("pool-target (S_UT)");
  if (needs.within_target && !s_tt) throw missing("target-target (S_TT)");

  for (double p : {eta, gamma, ridge}) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::kConfiguration,
                  "eta, gamma and ridge must be finite and nonnegative");
    }
  }
  if (!(lambda_gc >= 0.0 && lambda_gc <= 1.0)) {
    throw Error(ErrorCode::kConfiguration, "lambda_gc must lie in [0, 1]");
  }

  if (needs.within_pool && !s_uu->symmetric()) {
    throw Error(ErrorCode::kShape, "S_UU must be a symmetric within-set kernel");
  }
  if (needs.within_target && !s_tt->symmetric()) {
    throw Error(ErrorCode::kShape, "S_TT must be a symmetric within-set kernel");
  }
  if (needs.cross) {
    if (s_ut->cols() == 0) {
      throw Error(ErrorCode::kConfiguration, name + " needs a nonempty target set");
    }
    if (needs.within_pool && s_ut->rows() != s_uu->rows()) {
      throw Error(ErrorCode::kShape, "S_UT rows do not match S_UU size");
    }
    if (needs.within_target && s_tt->rows() != s_ut->cols()) {
      throw Error(ErrorCode::kShape, "S_TT size does not match S_UT columns");
    }
  }

  switch (kind) {
    case ObjectiveKind::kFl:
      RequireNonnegative(*s_uu, "pool", kind);
      break;
    case ObjectiveKind::kFl1mi:
      RequireNonnegative(*s_uu, "pool", kind);
      RequireNonnegative(*s_ut, "pool-target", kind);
      break;
    case ObjectiveKind::kFl2mi:
      RequireNonnegative(*s_ut, "pool-target", kind);
      break;
    default:
      break;
  }
}

std::size_t ObjectiveSpec::GroundSize() const {
  if (NeedsFor(kind).within_pool && s_uu) return s_uu->rows();
  if (s_ut) return s_ut->rows();
  return s_uu ? s_uu->rows() : 0;
}

double Evaluate(const ObjectiveSpec& spec,
                std::span<const std::size_t> selection) {
  spec.Validate();
  const std::size_t n = spec.GroundSize();
  CheckSelection(selection, n);
  if (selection.empty()) return 0.0;

  auto gcmi = [&] {
    double total = 0.0;
    for (std::size_t i : selection) {
      for (std::size_t j = 0; j < spec.s_ut->cols(); ++j) total += (*spec.s_ut)(i, j);
    }
    return 2.0 * total;
  };
  auto dsum = [&] {
    double total = 0.0;
    for (std::size_t x = 0; x < selection.size(); ++x) {
      for (std::size_t y = x + 1; y < selection.size(); ++y) {
        total += 1.0 - (*spec.s_uu)(selection[x], selection[y]);
      }
    }
    return total;
  };

  switch (spec.kind) {
    case ObjectiveKind::kGcmi:
      return gcmi();
    case ObjectiveKind::kGcmiDiv:
      return gcmi() + spec.gamma * dsum();
    case ObjectiveKind::kDsum:
      return dsum();
    case ObjectiveKind::kFl: {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        total += MaxOverSelectionOrZero(*spec.s_uu, i, selection);
      }
      return total;
    }
    case ObjectiveKind::kFl1mi: {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double coverage = MaxOverSelectionOrZero(*spec.s_uu, i, selection);
        const double relevance = spec.eta * MaxOrZero(spec.s_ut->row(i));
        total += std::min(coverage, relevance);
      }
      return total;
    }
    case ObjectiveKind::kFl2mi: {
      const SimilarityKernel& s = *spec.s_ut;
      double coverage = 0.0;
      for (std::size_t j = 0; j < s.cols(); ++j) {
        double best = s(selection[0], j);
        for (std::size_t i : selection) best = std::max(best, s(i, j));
        coverage += best;
      }
      double relevance = 0.0;
      for (std::size_t i : selection) relevance += MaxOrZero(s.row(i));
      return coverage + spec.eta * relevance;
    }
    case ObjectiveKind::kGc: {
      double cover = 0.0;
      for (std::size_t j : selection) {
        for (std::size_t i = 0; i < n; ++i) cover += (*spec.s_uu)(i, j);
      }
      double redundancy = 0.0;
      for (std::size_t i : selection) {
        for (std::size_t j : selection) redundancy += (*spec.s_uu)(i, j);
      }
      return cover - spec.lambda_gc * redundancy;
    }
    case ObjectiveKind::kLogdet:
      return LogDetSubset(RidgedPoolEntry(spec.s_uu, spec.ridge), selection);
    case ObjectiveKind::kLogdetmi: {
      const Matrix factor = TargetFactor(*spec.s_tt, spec.ridge);
      const std::size_t m = selection.size();
      Matrix w(m, spec.s_ut->cols());
      for (std::size_t r = 0; r < m; ++r) {
        const auto src = spec.s_ut->row(selection[r]);
        std::copy(src.begin(), src.end(), w.row(r).begin());
        linalg::ForwardSubstitute(factor, w.row(r));
      }
      Matrix joint(m, m);
      Matrix conditioned(m, m);
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
          joint(r, c) = (*spec.s_uu)(selection[r], selection[c]) +
                        (r == c ? spec.ridge : 0.0);
          double projected = 0.0;
          for (std::size_t t = 0; t < w.cols(); ++t) projected += w(r, t) * w(c, t);
          conditioned(r, c) = joint(r, c) - spec.eta * spec.eta * projected;
        }
      }
      const auto joint_logdet = linalg::LogDetPd(std::move(joint));
      const auto conditioned_logdet = linalg::LogDetPd(std::move(conditioned));
      if (!joint_logdet || !conditioned_logdet) {
        throw Error(ErrorCode::kIndefiniteKernel,
                    "selected submatrix is not positive definite" +
                        std::string(kIndefiniteAdvice));
      }
      return *joint_logdet - *conditioned_logdet;
    }
  }
  throw Error(ErrorCode::kConfiguration, "unknown objective kind");
}

ObjectiveState::ObjectiveState(ObjectiveSpec spec) : spec_(std::move(spec)) {
  spec_.Validate();
  in_selection_.assign(spec_.GroundSize(), 0);
  cache_ = MakeCache(spec_);
}

ObjectiveState::~ObjectiveState() = default;

ObjectiveState::ObjectiveState(const ObjectiveState& other)
    : spec_(other.spec_),
      cache_(other.cache_->Clone()),
      selected_(other.selected_),
      in_selection_(other.in_selection_),
      value_(other.value_) {}

ObjectiveState& ObjectiveState::operator=(const ObjectiveState& other) {
  if (this != &other) *this = ObjectiveState(other);
  return *this;
}

ObjectiveState::ObjectiveState(ObjectiveState&&) noexcept = default;
ObjectiveState& ObjectiveState::operator=(ObjectiveState&&) noexcept = default;

void ObjectiveState::CheckCandidate(std::size_t a) const {
  if (a >= in_selection_.size()) {
    throw Error(ErrorCode::kBounds, "index " + std::to_string(a) +
                                        " outside ground set of size " +
                                        std::to_string(in_selection_.size()));
  }
  if (in_selection_[a]) {
    throw Error(ErrorCode::kDuplicate,
                "index " + std::to_string(a) + " is already selected");
  }
}

double ObjectiveState::Gain(std::size_t a) const {
  CheckCandidate(a);
  return cache_->Gain(a, selected_);
}

void ObjectiveState::Commit(std::size_t a) {
  CheckCandidate(a);
  const double gain = cache_->Gain(a, selected_);
  cache_->Commit(a, selected_);
  value_ += gain;
  selected_.push_back(a);
  in_selection_[a] = 1;
}

}  // namespace tss
