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
#include <limits>
#include <span>
#include <vector>

#include "mmsig/linalg.hpp"
#include "mmsig/spaces.hpp"

namespace mmsig {

/// Vertices forced to be mutually adjacent: the explicit members, plus (when
/// `modulus` > 0) every vertex v with v % modulus != 0.
struct PlantedClique {
  std::vector<std::uint64_t> members;  // sorted, unique
  std::uint64_t modulus = 0;

  bool contains(std::uint64_t v) const noexcept;
  bool empty() const noexcept { return members.empty() && modulus == 0; }

  static PlantedClique from_members(std::vector<std::uint64_t> members);
  /// Vertices 0..k-1.
  static PlantedClique prefix(std::uint64_t k);
};

/// Erdos-Renyi graph on the natural numbers with lazily evaluated edges. The
/// bit for {i, j} is a 64-bit mix of (seed, min(i, j), max(i, j)) compared
/// against p * 2^64, so any finite prefix is reproducible and every prefix is
/// an induced subgraph of the longer ones.
class CountableRadoModel {
 public:
  /// Throws BadParams unless 0 < p < 1.
  CountableRadoModel(double p, std::uint64_t seed, PlantedClique clique = {});

  double p() const noexcept { return p_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const PlantedClique& clique() const noexcept { return clique_; }

  bool adjacent(std::uint64_t u, std::uint64_t v) const noexcept;
  /// The {1, 2} rule of the infinite graph: 0 on the diagonal, 1 for edges,
  /// 2 otherwise.
  double distance(std::uint64_t u, std::uint64_t v) const noexcept {
    if (u == v) return 0.0;
    return adjacent(u, v) ? 1.0 : 2.0;
  }

 private:
  double p_;
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t threshold_;
  PlantedClique clique_;
};

/// Induced graph on vertices 0..n-1.
Graph er_adjacency(const CountableRadoModel& model, std::size_t n);

/// Off-diagonal (3/2) A_ij - 2, zero diagonal.
SymMatrix rado_s_matrix(const Graph& g);

/// True iff g is connected with hop diameter <= 2, i.e. rado_s_matrix(g)
/// equals S of the graph metric.
bool rado_consistency_check(const Graph& g);

struct PerturbationOptions {
  double tol_rel = kDefaultTolRel;
  /// Optional bound on max |d - d_eps|; halving continues until it holds.
  double max_deviation = std::numeric_limits<double>::infinity();
  double strict_margin = 1e-12;
};

struct PerturbationResult {
  FiniteMetricSpace space;
  double epsilon = 0.0;        // 0 when the input was returned unchanged
  double max_deviation = 0.0;  // max |d - d_eps|
  Inertia centered_before;
  Inertia centered_after;
};

/// d_eps^2 = d^2 - eps |v_i - v_j|^2 with Gaussian v_i in R^N, eps halved
/// from 0.5 * (min triangle slack) / max |v_i - v_j|^2 until d_eps is a
/// strictly triangular metric with s_plus(T_eps) = s_plus(T) and
/// s_minus(T_eps) = N - 1 - s_plus(T). Throws StrictnessViolated if the
/// input has a degenerate triple, EpsilonUnderflow if eps drops below 1e-300.
PerturbationResult perturb_to_max_negative(const FiniteMetricSpace& space, std::uint64_t seed,
                                           const PerturbationOptions& options = {});

/// An (n + p + 1)-point space whose double-centred matrix has s_minus = n
/// and s_plus = p: points in general position on the unit sphere of R^p,
/// then perturbed. Requires n >= 1, p >= 2.
FiniteMetricSpace prescribed_signature_space(std::size_t n, std::size_t p, std::uint64_t seed,
                                             double tol_rel = kDefaultTolRel);

struct UnionSpace {
  FiniteMetricSpace space;
  /// R = (h^2 / 2) 1 1^T + S(X); block diagonal with blocks R_i.
  SymMatrix block_matrix;
  std::vector<std::size_t> offsets;  // first index of each component, plus the total
};

/// Disjoint union with cross-component distance h. Throws DiameterTooLarge
/// (witness: component, i, j) if some component has diameter > 2h.
UnionSpace union_space(std::span<const FiniteMetricSpace> components, double h);

}  // namespace mmsig
