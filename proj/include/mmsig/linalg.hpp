// Copyright 2026 The mmsig Authors.
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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mmsig {

/// Default relative zero threshold used by inertia(): an eigenvalue counts as
/// zero when |lambda| <= tol_rel * n * max|lambda|.
inline constexpr double kDefaultTolRel = 1e-9;

/// Dense real symmetric matrix. Symmetry is exact by construction: set()
/// writes both (i, j) and (j, i).
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n, double fill = 0.0);

  /// Builds from a row-major n*n buffer; throws InvalidInput unless the
  /// buffer is exactly symmetric with finite entries.
  static SymMatrix from_row_major(std::span<const double> values, std::size_t n);
  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> diag);

  std::size_t order() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return a_[i * n_ + j];
  }
  void set(std::size_t i, std::size_t j, double v) noexcept {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }
  std::span<const double> row_major() const noexcept { return a_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(a_).subspan(i * n_, n_);
  }

  /// Principal submatrix on `index` (in the given order).
  SymMatrix principal(std::span<const std::size_t> index) const;
  double max_abs() const noexcept;
  bool all_finite() const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Counts of negative, zero and positive eigenvalues, together with the zero
/// threshold that produced them.
struct Inertia {
  std::size_t s_minus = 0;
  std::size_t s_zero = 0;
  std::size_t s_plus = 0;
  double theta = 0.0;

  std::size_t order() const noexcept { return s_minus + s_zero + s_plus; }
  bool same_counts(const Inertia& other) const noexcept {
    return s_minus == other.s_minus && s_zero == other.s_zero &&
           s_plus == other.s_plus;
  }
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;   // ascending
  std::vector<double> eigenvectors;  // row k holds the unit eigenvector of eigenvalue k

  std::size_t order() const noexcept { return eigenvalues.size(); }
  std::span<const double> vector(std::size_t k) const noexcept {
    return std::span<const double>(eigenvectors).subspan(k * order(), order());
  }
};

/// Householder tridiagonalization followed by implicit-shift QL.
/// Throws InvalidInput on non-finite entries and NoConvergence when an
/// eigenvalue needs more than the iteration cap.
EigenDecomposition eig_sym(const SymMatrix& a);

/// Eigenvalues only (ascending); roughly half the work of eig_sym.
std::vector<double> eigenvalues_sym(const SymMatrix& a);

Inertia inertia_from_eigenvalues(std::span<const double> eigenvalues,
                                 double tol_rel = kDefaultTolRel);
Inertia inertia(const SymMatrix& a, double tol_rel = kDefaultTolRel);
/// Counts against a caller-supplied absolute threshold theta.
Inertia inertia_with_threshold(std::span<const double> eigenvalues, double theta);

/// Reciprocal 2-norm condition number below which a Schur block is refused.
inline constexpr double kMinBlockRcond = 1e-12;

/// A / A[block, block] over the remaining indices in increasing order.
/// Throws SingularBlock if the block's reciprocal condition is below
/// kMinBlockRcond.
SymMatrix schur_complement(const SymMatrix& a, std::span<const std::size_t> block);

/// Haynsworth inertia additivity:
/// inertia(A) == inertia(A[block]) + inertia(A / A[block]), compared by counts.
bool haynsworth_check(const SymMatrix& a, std::span<const std::size_t> block,
                      double tol_rel = kDefaultTolRel);

/// Pi S Pi with Pi = Id - 1 1^T / n.
SymMatrix double_center(const SymMatrix& s);

/// Weighted centering C_w S C_w^T, without the M^{1/2} congruence. Its
/// diagonal-minus-off-diagonal combination reproduces -2 S_ij.
SymMatrix weighted_center_kernel(const SymMatrix& s, std::span<const double> w);

/// M^{1/2} C_w S C_w^T M^{1/2} with C_w = Id - 1 w^T and M = diag(w).
/// Throws InvalidMeasure for negative weights or |sum(w) - 1| > 1e-12.
SymMatrix weighted_center(const SymMatrix& s, std::span<const double> w);

/// M^{1/2} S M^{1/2}; same validation as weighted_center.
SymMatrix weighted_congruence(const SymMatrix& s, std::span<const double> w);

void validate_probability_weights(std::span<const double> w);

}  // namespace mmsig
