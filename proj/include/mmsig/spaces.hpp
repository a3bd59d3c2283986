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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mmsig {

class FiniteMetricSpace;

namespace detail {
FiniteMetricSpace make_trusted_space(std::size_t n, std::vector<double> dist,
                                     std::vector<std::string> labels);
}  // namespace detail

/// A validated finite metric space: symmetric, zero diagonal, strictly
/// positive off-diagonal, triangle inequality. Instances only come out of the
/// constructors below, so every instance satisfies the axioms.
class FiniteMetricSpace {
 public:
  std::size_t size() const noexcept { return n_; }
  double distance(std::size_t i, std::size_t j) const noexcept { return dist_[i * n_ + j]; }
  std::span<const double> distances() const noexcept { return dist_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double diameter() const noexcept;

  /// Subspace on distinct indices, in the given order.
  FiniteMetricSpace subspace(std::span<const std::size_t> index) const;

 private:
  friend FiniteMetricSpace detail::make_trusted_space(std::size_t, std::vector<double>,
                                                      std::vector<std::string>);
  FiniteMetricSpace() = default;

  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<std::string> labels_;
};

/// Simple undirected graph on vertices 0..n-1. Edges are stored as (u, v)
/// with u < v, sorted, without duplicates.
class Graph {
 public:
  Graph() = default;
  /// Throws InvalidInput on self-loops, out-of-range vertices or duplicates.
  Graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept {
    return edges_;
  }
  std::vector<std::vector<std::size_t>> adjacency_lists() const;
  bool has_edge(std::size_t u, std::size_t v) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// Points of R^{n,p}: the first n_neg coordinates enter the form with a minus
/// sign. Coordinates are stored row-major, one row per point. The cone
/// condition is checked by the consumers (from_pseudo_euclidean,
/// verify_isometry), not on construction.
struct PseudoEuclideanPointSet {
  std::size_t n_neg = 0;
  std::size_t n_pos = 0;
  std::size_t count = 0;
  std::vector<double> coords;

  std::size_t dim() const noexcept { return n_neg + n_pos; }
  std::span<const double> point(std::size_t i) const noexcept {
    return std::span<const double>(coords).subspan(i * dim(), dim());
  }
  /// (x, y)_{n,p} for two vectors of length dim().
  double form(std::span<const double> x, std::span<const double> y) const noexcept;
  /// (z_i - z_j, z_k - z_l)_{n,p}.
  double form_of_differences(std::size_t i, std::size_t j, std::size_t k,
                             std::size_t l) const noexcept;
  double squared_interval(std::size_t i, std::size_t j) const noexcept {
    return form_of_differences(i, j, i, j);
  }
};

struct ValidationOptions {
  bool strict = false;
  /// Triangle slack (relative to the diameter) required by the strict test.
  double strict_margin = 1e-12;
  /// Tolerance (relative to the diameter) of the non-strict test and of the
  /// symmetry / zero-diagonal checks.
  double tolerance = 1e-12;
};

/// Returns a witness (i, j, k) with d(i,k) > d(i,j) + d(j,k) + tol (or, when
/// strict, d(i,k) >= d(i,j) + d(j,k) - margin), if any. Distances are
/// row-major n*n.
std::optional<std::array<std::size_t, 3>> triangle_witness(
    std::span<const double> dist, std::size_t n, const ValidationOptions& options);

FiniteMetricSpace from_distance_matrix(std::span<const double> dist, std::size_t n,
                                       const ValidationOptions& options = {},
                                       std::vector<std::string> labels = {});

/// Hop-count metric. Throws Disconnected with a witness pair.
FiniteMetricSpace from_graph(const Graph& g);

/// Euclidean distances between rows of a row-major count x dim buffer.
/// Throws DuplicatePoints on coincident points.
FiniteMetricSpace from_euclidean_points(std::span<const double> coords, std::size_t count,
                                        std::size_t dim);

/// d_{n,p} distances. Throws ConeViolation (squared interval <= 0 for a
/// distinct pair) or TriangleViolation.
FiniteMetricSpace from_pseudo_euclidean(const PseudoEuclideanPointSet& ps);

/// (z_i - z_j, z_j - z_k) < d(z_i, z_j) d(z_j, z_k); equivalent to the
/// strict triangle inequality d(z_i, z_k) < d(z_i, z_j) + d(z_j, z_k).
bool strict_cauchy_schwarz_check(const PseudoEuclideanPointSet& ps, std::size_t i,
                                 std::size_t j, std::size_t k);

struct ExampleParams {
  std::size_t n = 0;    // point count
  std::size_t dim = 0;  // sphere dimension
  std::uint64_t seed = 0;
  double side = 1.0;    // simplex edge length
};

/// tripod | tripod_extended (n >= 5) | simplex (n >= 2, side > 0) |
/// sphere (dim >= 1, n >= 1, seed) | sphere_sqrt (same parameters).
FiniteMetricSpace named_example(std::string_view name, const ExampleParams& params = {});

/// `count` uniform points on the unit sphere of R^ambient_dim, row-major.
class CounterRng;
std::vector<double> sample_sphere_points(std::size_t ambient_dim, std::size_t count,
                                         CounterRng& rng);

}  // namespace mmsig
