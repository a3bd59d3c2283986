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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmsig/linalg.hpp"
#include "mmsig/sampling.hpp"
#include "mmsig/spaces.hpp"

namespace mmsig {

/// S(X) = -1/2 (d^2(x_i, x_j)).
SymMatrix s_matrix(const FiniteMetricSpace& space);

/// S on an index sequence that may repeat points.
SymMatrix s_matrix_on(const FiniteMetricSpace& space, std::span<const std::uint64_t> index);

Inertia space_signature(const FiniteMetricSpace& space, double tol_rel = kDefaultTolRel);

/// Inertia of Pi S Pi. The constants are always in the kernel, so s_zero >= 1.
Inertia centered_signature(const FiniteMetricSpace& space, double tol_rel = kDefaultTolRel);

struct SignatureTrajectory {
  std::vector<std::size_t> sizes;
  std::vector<Inertia> inertias;
  std::size_t window = 0;
  /// (s_minus, s_plus) if the last `window` entries agree. Always tentative:
  /// a finite plateau does not certify the limit.
  std::optional<std::pair<std::size_t, std::size_t>> stabilized;
};

enum class TrajectoryThreshold {
  /// One theta for every prefix, from the longest one. Cauchy interlacing
  /// then makes the counts monotone.
  kShared,
  /// The standalone rule per prefix; theta grows with the prefix, so tiny
  /// eigenvalues can drop out and trip the monotonicity check.
  kPerPrefix,
};

struct TrajectoryOptions {
  double tol_rel = kDefaultTolRel;
  TrajectoryThreshold threshold = TrajectoryThreshold::kShared;
  std::size_t window = 25;
  /// Prefix lengths to evaluate, strictly increasing. Empty means 1..length.
  std::vector<std::size_t> sizes;
};

/// Distance between two points of an underlying (possibly countable) space.
using DistanceFn = std::function<double(std::uint64_t, std::uint64_t)>;

/// Inertia of S on prefixes of `sequence`. Repeated entries are cancelled
/// before the eigensolve; s_zero is then increased by the number of
/// cancelled repeats, which leaves s_minus and s_plus unchanged. Throws
/// MonotonicityViolation if s_minus or s_plus ever decreases.
SignatureTrajectory limit_signature_trajectory(const DistanceFn& distance,
                                               std::span<const std::uint64_t> sequence,
                                               const TrajectoryOptions& options = {});

/// Nested prefixes of a finite space in the given order (identity if empty).
SignatureTrajectory limit_signature_trajectory(const FiniteMetricSpace& space,
                                               std::span<const std::size_t> order,
                                               const TrajectoryOptions& options = {});

/// Gromov-Vershik sampling of a finite space; sizes count raw draws.
SignatureTrajectory limit_signature_trajectory(const FiniteMetricSpace& space,
                                               const DiscreteMeasure& measure, std::size_t m,
                                               std::uint64_t seed,
                                               const TrajectoryOptions& options = {});

/// Classical MDS into R^{n,p} from the uniform-measure double-centred
/// matrix. Coordinates are sqrt|lambda_k| u_k(i) over eigenpairs with
/// |lambda_k| > theta: negative eigenvalues first (most negative first),
/// then positive ones (largest first). Each eigenvector is signed so that
/// its largest-magnitude entry is positive.
PseudoEuclideanPointSet mds_embed(const FiniteMetricSpace& space,
                                  double tol_rel = kDefaultTolRel);

/// max_{i,j} |d_{n,p}(z_i, z_j) - d(x_i, x_j)|. Throws ConeViolation when a
/// squared interval is below -theta, theta = tol_rel * n * max|interval|.
double verify_isometry(const PseudoEuclideanPointSet& embedding,
                       const FiniteMetricSpace& space, double tol_rel = kDefaultTolRel);

struct EmbeddabilityVerdict {
  enum class Kind { kEuclidean, kHilbertLike, kPseudo };
  Kind kind = Kind::kEuclidean;
  std::size_t n_neg = 0;
  std::size_t n_pos = 0;
  Inertia certificate;  // inertia of Pi S Pi

  std::string to_string() const;
};

/// euclidean(p) when s_minus(T) = 0, else pseudo(n, p). For finite spaces
/// Hilbert embeddability coincides with the Euclidean case, so kHilbertLike
/// is never produced here.
EmbeddabilityVerdict classify_embeddability(const FiniteMetricSpace& space,
                                            double tol_rel = kDefaultTolRel);

/// Rebuilds t_matrix(space, measure) from its eigendecomposition and
/// returns the largest entrywise deviation.
double kernel_reconstruction_check(const FiniteMetricSpace& space,
                                   const DiscreteMeasure& measure);

}  // namespace mmsig
