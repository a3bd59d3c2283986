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

#include "mmsig/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "mmsig/error.hpp"
#include "mmsig/rng.hpp"
#include "mmsig/signature.hpp"

namespace mmsig {

bool PlantedClique::contains(std::uint64_t v) const noexcept {
  if (modulus > 0 && v % modulus != 0) return true;
  return std::binary_search(members.begin(), members.end(), v);
}

PlantedClique PlantedClique::from_members(std::vector<std::uint64_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  PlantedClique c;
  c.members = std::move(members);
  return c;
}

PlantedClique PlantedClique::prefix(std::uint64_t k) {
  PlantedClique c;
  c.members.resize(k);
  for (std::uint64_t i = 0; i < k; ++i) c.members[i] = i;
  return c;
}

CountableRadoModel::CountableRadoModel(double p, std::uint64_t seed, PlantedClique clique)
    : p_(p), seed_(seed), key_(mix64(seed ^ 0x5851f42d4c957f2dULL)), clique_(std::move(clique)) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::kBadParams, "edge probability must lie in (0, 1)");
  }
  std::sort(clique_.members.begin(), clique_.members.end());
  clique_.members.erase(std::unique(clique_.members.begin(), clique_.members.end()),
                        clique_.members.end());
  // p < 1, so p * 2^64 < 2^64 after rounding down to an integer.
  const double scaled = std::ldexp(p, 64);
  threshold_ = scaled >= 0x1.0p64 ? ~std::uint64_t{0} : static_cast<std::uint64_t>(scaled);
}

bool CountableRadoModel::adjacent(std::uint64_t u, std::uint64_t v) const noexcept {
  if (u == v) return false;
  if (u > v) std::swap(u, v);
  if (!clique_.empty() && clique_.contains(u) && clique_.contains(v)) return true;
  return mix64(key_ ^ mix64(u ^ mix64(v))) < threshold_;
}

Graph er_adjacency(const CountableRadoModel& model, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (model.adjacent(i, j)) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

SymMatrix rado_s_matrix(const Graph& g) {
  const std::size_t n = g.vertex_count();
  SymMatrix s(n, -2.0);
  for (std::size_t i = 0; i < n; ++i) s.set(i, i, 0.0);
  for (const auto& [u, v] : g.edges()) s.set(u, v, -0.5);
  return s;
}

bool rado_consistency_check(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 1) return true;
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> bits(n * words, 0);
  for (const auto& [u, v] : g.edges()) {
    bits[u * words + v / 64] |= std::uint64_t{1} << (v % 64);
    bits[v * words + u / 64] |= std::uint64_t{1} << (u % 64);
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (bits[u * words + v / 64] >> (v % 64) & 1U) continue;
      bool common = false;
      for (std::size_t w = 0; w < words && !common; ++w) {
        common = (bits[u * words + w] & bits[v * words + w]) != 0;
      }
      if (!common) return false;
    }
  }
  return true;
}

namespace {

constexpr int kMaxDirectionDraws = 16;
constexpr std::size_t kDirectionWidth = 4;
constexpr double kEpsilonFloor = 1e-300;

}  // namespace

PerturbationResult perturb_to_max_negative(const FiniteMetricSpace& space, std::uint64_t seed,
                                           const PerturbationOptions& options) {
  const std::size_t n = space.size();
  ValidationOptions strict;
  strict.strict = true;
  strict.strict_margin = options.strict_margin;
  if (auto w = triangle_witness(space.distances(), n, strict)) {
    std::ostringstream msg;
    msg << "input is not strictly triangular on (" << (*w)[0] << ", " << (*w)[1] << ", "
        << (*w)[2] << ")";
    throw Error(ErrorCode::kStrictnessViolated, msg.str(), {(*w)[0], (*w)[1], (*w)[2]});
  }

  const Inertia before = centered_signature(space, options.tol_rel);
  const std::size_t target_plus = before.s_plus;
  if (n < 2 || target_plus + 1 >= n) {
    return PerturbationResult{space, 0.0, 0.0, before, before};
  }
  const std::size_t target_minus = n - 1 - target_plus;

  // Gaussian directions in R^{4n}: a square Gaussian Gram matrix has a
  // smallest eigenvalue of order 1/n, which would push the new negative
  // eigenvalues under the zero threshold; a wider one stays well conditioned.
  const std::size_t width = kDirectionWidth * n;
  CounterRng rng(seed);
  std::vector<double> q(n * n, 0.0);
  for (int attempt = 0;; ++attempt) {
    if (attempt == kMaxDirectionDraws) {
      throw Error(ErrorCode::kEpsilonUnderflow, "could not draw independent directions");
    }
    std::vector<double> v(n * width);
    for (double& x : v) x = rng.normal();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t c = 0; c < width; ++c) {
          const double t = v[i * width + c] - v[j * width + c];
          acc += t * t;
        }
        q[i * n + j] = q[j * n + i] = acc;
      }
    SymMatrix gram(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) gram.set(i, j, -0.5 * q[i * n + j]);
    if (inertia(double_center(gram), options.tol_rel).s_plus == n - 1) break;
  }

  // Halve from the positivity bound: the first eps meeting every condition is
  // the largest one on the dyadic grid.
  double eps = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d0 = space.distance(i, j);
      eps = std::min(eps, d0 * d0 / q[i * n + j]);
    }
  std::vector<double> d(n * n, 0.0);
  for (; eps >= kEpsilonFloor; eps *= 0.5) {
    bool positive = true;
    double deviation = 0.0;
    for (std::size_t i = 0; i < n && positive; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d0 = space.distance(i, j);
        const double g = d0 * d0 - eps * q[i * n + j];
        if (!(g > 0.0)) {
          positive = false;
          break;
        }
        d[i * n + j] = d[j * n + i] = std::sqrt(g);
        deviation = std::max(deviation, d0 - d[i * n + j]);
      }
    if (!positive || deviation > options.max_deviation) continue;
    if (triangle_witness(d, n, strict)) continue;
    FiniteMetricSpace candidate = detail::make_trusted_space(n, d, space.labels());
    const Inertia after = centered_signature(candidate, options.tol_rel);
    if (after.s_plus != target_plus || after.s_minus != target_minus) continue;
    return PerturbationResult{std::move(candidate), eps, deviation, before, after};
  }
  throw Error(ErrorCode::kEpsilonUnderflow,
              "perturbation size underflowed before the signature conditions held");
}

FiniteMetricSpace prescribed_signature_space(std::size_t n, std::size_t p, std::uint64_t seed,
                                             double tol_rel) {
  if (n < 1 || p < 2) throw Error(ErrorCode::kBadParams, "need n >= 1 and p >= 2");
  const std::size_t count = n + p + 1;
  CounterRng rng(seed);
  ValidationOptions strict;
  strict.strict = true;
  constexpr int kMaxDraws = 64;
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    const std::vector<double> pts = sample_sphere_points(p, count, rng);
    std::optional<FiniteMetricSpace> drawn;
    try {
      drawn.emplace(from_euclidean_points(pts, count, p));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDuplicatePoints) throw;
      continue;
    }
    const FiniteMetricSpace& base = *drawn;
    if (centered_signature(base, tol_rel).s_plus != p) continue;
    if (triangle_witness(base.distances(), count, strict)) continue;
    PerturbationOptions opts;
    opts.tol_rel = tol_rel;
    return perturb_to_max_negative(base, mix64(seed ^ static_cast<std::uint64_t>(attempt)), opts)
        .space;
  }
  throw Error(ErrorCode::kBadParams, "could not sample points in general position");
}

UnionSpace union_space(std::span<const FiniteMetricSpace> components, double h) {
  if (components.empty()) throw Error(ErrorCode::kBadParams, "union needs at least one component");
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::kBadParams, "h must be positive");
  std::vector<std::size_t> offsets{0};
  for (std::size_t c = 0; c < components.size(); ++c) {
    const FiniteMetricSpace& x = components[c];
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j)
        if (x.distance(i, j) > 2.0 * h * (1.0 + 1e-12)) {
          std::ostringstream msg;
          msg << "component " << c << " has diameter " << x.diameter() << " > 2h = " << 2.0 * h;
          throw Error(ErrorCode::kDiameterTooLarge, msg.str(), {c, i, j});
        }
    offsets.push_back(offsets.back() + x.size());
  }
  const std::size_t total = offsets.back();

  std::vector<double> d(total * total, h);
  std::vector<std::string> labels;
  labels.reserve(total);
  SymMatrix r(total, 0.0);
  for (std::size_t c = 0; c < components.size(); ++c) {
    const FiniteMetricSpace& x = components[c];
    const std::size_t o = offsets[c];
    for (std::size_t i = 0; i < x.size(); ++i) {
      labels.push_back(components.size() == 1 ? x.labels()[i]
                                              : std::to_string(c) + ":" + x.labels()[i]);
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double dij = x.distance(i, j);
        d[(o + i) * total + o + j] = dij;
        r.set(o + i, o + j, 0.5 * (h * h - dij * dij));
      }
    }
  }
  if (components.size() == 1) {
    return UnionSpace{components[0], std::move(r), std::move(offsets)};
  }
  return UnionSpace{detail::make_trusted_space(total, std::move(d), std::move(labels)),
                    std::move(r), std::move(offsets)};
}

}  // namespace mmsig
