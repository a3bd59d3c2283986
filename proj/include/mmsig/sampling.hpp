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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mmsig/linalg.hpp"
#include "mmsig/spaces.hpp"

namespace mmsig {

class CounterRng;

/// Probability measure on the points of a finite space, or a rule on the
/// natural numbers (vertex indices 0, 1, 2, ... of a countable model).
class DiscreteMeasure {
 public:
  enum class Kind {
    kFinite,          // explicit weights on 0..n-1
    kGeometric,       // (1 - q) q^k, k >= 0
    kSuperGeometric,  // proportional to 2^{-(k+1)^2}, k >= 0
    kClassBiased,     // j + 1 classes of equal mass, geometric(q) within a class
  };

  /// Throws InvalidMeasure unless weights are nonnegative and sum to 1
  /// within 1e-12.
  explicit DiscreteMeasure(std::vector<double> weights);

  static DiscreteMeasure uniform(std::size_t n);
  static DiscreteMeasure dirac(std::size_t n, std::size_t at);
  static DiscreteMeasure geometric(double q);
  static DiscreteMeasure super_geometric();
  /// Vertex v = l * (classes + 1) + c belongs to class c (class 0 is the
  /// unbiased class) at rank l; its weight is (1 - q) q^l / (classes + 1).
  static DiscreteMeasure class_biased(std::size_t classes, double q);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::kFinite; }
  /// Number of atoms; only meaningful for finite measures.
  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double q() const noexcept { return q_; }
  std::size_t classes() const noexcept { return classes_; }

  double weight(std::uint64_t k) const noexcept;
  bool full_support() const noexcept;
  std::vector<std::size_t> support() const;

  /// First n weights renormalized to a probability vector (identity for a
  /// finite measure of size n).
  DiscreteMeasure truncated(std::size_t n) const;

  /// One draw by inverse CDF.
  std::uint64_t draw(CounterRng& rng) const;

  /// Short text form, e.g. "geometric:0.9".
  std::string describe() const;

 private:
  DiscreteMeasure() = default;
  void build_cumulative();

  Kind kind_ = Kind::kFinite;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  double q_ = 0.0;
  std::size_t classes_ = 0;
};

/// Raw i.i.d. draws and their first-occurrence subsequence.
struct SampleTrajectory {
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> raw;
  std::vector<std::uint64_t> dedup;
};

/// Cancels repeated entries, keeping first occurrences in order.
std::vector<std::uint64_t> first_occurrences(std::span<const std::uint64_t> raw);

/// m i.i.d. draws from `measure`, deterministic in `seed`.
SampleTrajectory gv_sample(const DiscreteMeasure& measure, std::size_t m, std::uint64_t seed);

struct DedupInertia {
  Inertia raw;
  Inertia dedup;
};

/// Inertia of S on the raw index sequence (repeated points give repeated
/// rows and columns) and on its dedup subsequence.
DedupInertia dedup_matrix_invariance(const FiniteMetricSpace& space,
                                     const SampleTrajectory& traj,
                                     double tol_rel = kDefaultTolRel);

/// M^{1/2} S M^{1/2}; congruent to the finite K operator.
SymMatrix k_matrix(const FiniteMetricSpace& space, const DiscreteMeasure& measure);

/// M^{1/2} C_w S C_w^T M^{1/2}; congruent to the finite T operator.
SymMatrix t_matrix(const FiniteMetricSpace& space, const DiscreteMeasure& measure);

}  // namespace mmsig
