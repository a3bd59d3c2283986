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

#include "mmsig/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "mmsig/error.hpp"
#include "mmsig/rng.hpp"

namespace mmsig {

namespace detail {

FiniteMetricSpace make_trusted_space(std::size_t n, std::vector<double> dist,
                                     std::vector<std::string> labels) {
  FiniteMetricSpace s;
  s.n_ = n;
  s.dist_ = std::move(dist);
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  s.labels_ = std::move(labels);
  return s;
}

}  // namespace detail

double FiniteMetricSpace::diameter() const noexcept {
  double d = 0.0;
  for (double v : dist_) d = std::max(d, v);
  return d;
}

FiniteMetricSpace FiniteMetricSpace::subspace(std::span<const std::size_t> index) const {
  const std::size_t m = index.size();
  std::vector<bool> seen(n_, false);
  for (std::size_t i : index) {
    if (i >= n_) throw Error(ErrorCode::kInvalidInput, "subspace index out of range", {i});
    if (seen[i]) throw Error(ErrorCode::kInvalidInput, "subspace indices must be distinct", {i});
    seen[i] = true;
  }
  std::vector<double> d(m * m);
  std::vector<std::string> labels;
  labels.reserve(m);
  for (std::size_t a = 0; a < m; ++a) {
    labels.push_back(labels_[index[a]]);
    for (std::size_t b = 0; b < m; ++b) d[a * m + b] = distance(index[a], index[b]);
  }
  return detail::make_trusted_space(m, std::move(d), std::move(labels));
}

Graph::Graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) : n_(n) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw Error(ErrorCode::kInvalidInput, "edge vertex out of range", {u, v});
    if (u == v) throw Error(ErrorCode::kInvalidInput, "self-loop in edge list", {u});
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw Error(ErrorCode::kInvalidInput, "duplicate edge", {dup->first, dup->second});
  }
  edges_ = std::move(edges);
}

std::vector<std::vector<std::size_t>> Graph::adjacency_lists() const {
  std::vector<std::vector<std::size_t>> adj(n_);
  for (const auto& [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

double PseudoEuclideanPointSet::form(std::span<const double> x,
                                     std::span<const double> y) const noexcept {
  double acc = 0.0;
  for (std::size_t c = 0; c < dim(); ++c) {
    const double t = x[c] * y[c];
    acc += c < n_neg ? -t : t;
  }
  return acc;
}

double PseudoEuclideanPointSet::form_of_differences(std::size_t i, std::size_t j,
                                                    std::size_t k,
                                                    std::size_t l) const noexcept {
  const auto zi = point(i), zj = point(j), zk = point(k), zl = point(l);
  double acc = 0.0;
  for (std::size_t c = 0; c < dim(); ++c) {
    const double t = (zi[c] - zj[c]) * (zk[c] - zl[c]);
    acc += c < n_neg ? -t : t;
  }
  return acc;
}

std::optional<std::array<std::size_t, 3>> triangle_witness(
    std::span<const double> dist, std::size_t n, const ValidationOptions& options) {
  double diam = 0.0;
  for (double v : dist) diam = std::max(diam, v);
  const double slack = options.strict ? -options.strict_margin * diam : options.tolerance * diam;
  for (std::size_t i = 0; i < n; ++i) {
    const double* di = dist.data() + i * n;
    for (std::size_t k = i + 1; k < n; ++k) {
      const double* dk = dist.data() + k * n;
      const double target = di[k];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double via = di[j] + dk[j] + slack;
        if (options.strict ? target >= via : target > via) {
          return std::array<std::size_t, 3>{i, j, k};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

std::string describe_triple(const std::array<std::size_t, 3>& t,
                            const std::vector<std::string>& labels) {
  std::ostringstream os;
  auto name = [&](std::size_t x) { return labels.empty() ? std::to_string(x) : labels[x]; };
  os << "(" << name(t[0]) << ", " << name(t[1]) << ", " << name(t[2]) << ")";
  return os.str();
}

}  // namespace

FiniteMetricSpace from_distance_matrix(std::span<const double> dist, std::size_t n,
                                       const ValidationOptions& options,
                                       std::vector<std::string> labels) {
  if (n == 0) throw Error(ErrorCode::kInvalidInput, "a metric space needs at least one point");
  if (dist.size() != n * n) {
    throw Error(ErrorCode::kInvalidInput, "distance buffer size does not match point count");
  }
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorCode::kInvalidInput, "label count does not match point count");
  }
  double diam = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) {
    if (!std::isfinite(dist[i])) {
      throw Error(ErrorCode::kInvalidInput, "non-finite distance", {i / n, i % n});
    }
    diam = std::max(diam, std::abs(dist[i]));
  }
  const double tol = options.tolerance * diam;
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(dist[i * n + i]) > tol) {
      throw Error(ErrorCode::kInvalidInput, "nonzero diagonal distance", {i, i});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = dist[i * n + j];
      const double b = dist[j * n + i];
      if (std::abs(a - b) > tol) {
        throw Error(ErrorCode::kAsymmetry, "distance matrix is not symmetric", {i, j});
      }
      if (a < 0.0 || b < 0.0) {
        throw Error(ErrorCode::kNegativeDistance, "negative distance", {i, j});
      }
      if (a == 0.0 || b == 0.0) {
        throw Error(ErrorCode::kZeroOffDiagonal, "zero distance between distinct points", {i, j});
      }
      d[i * n + j] = d[j * n + i] = 0.5 * (a + b);
    }
  }
  if (auto w = triangle_witness(d, n, options)) {
    std::string msg = options.strict ? "strict triangle inequality fails on "
                                     : "triangle inequality fails on ";
    throw Error(ErrorCode::kTriangleViolation, msg + describe_triple(*w, labels),
                {(*w)[0], (*w)[1], (*w)[2]});
  }
  return detail::make_trusted_space(n, std::move(d), std::move(labels));
}

FiniteMetricSpace from_graph(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw Error(ErrorCode::kInvalidInput, "graph has no vertices");
  const auto adj = g.adjacency_lists();
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<double> d(n * n);
  std::vector<std::size_t> hops(n);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(hops.begin(), hops.end(), kUnseen);
    hops[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : adj[u]) {
        if (hops[v] == kUnseen) {
          hops[v] = hops[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (hops[t] == kUnseen) {
        throw Error(ErrorCode::kDisconnected,
                    "graph is disconnected: no path between " + std::to_string(s) + " and " +
                        std::to_string(t),
                    {s, t});
      }
      d[s * n + t] = static_cast<double>(hops[t]);
    }
  }
  return detail::make_trusted_space(n, std::move(d), {});
}

FiniteMetricSpace from_euclidean_points(std::span<const double> coords, std::size_t count,
                                        std::size_t dim) {
  if (count == 0) throw Error(ErrorCode::kInvalidInput, "need at least one point");
  if (coords.size() != count * dim) {
    throw Error(ErrorCode::kInvalidInput, "coordinate buffer size does not match count * dim");
  }
  std::vector<double> d(count * count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        const double t = coords[i * dim + c] - coords[j * dim + c];
        acc += t * t;
      }
      if (!std::isfinite(acc)) throw Error(ErrorCode::kInvalidInput, "non-finite coordinate");
      if (acc == 0.0) throw Error(ErrorCode::kDuplicatePoints, "coincident points", {i, j});
      d[i * count + j] = d[j * count + i] = std::sqrt(acc);
    }
  }
  return detail::make_trusted_space(count, std::move(d), {});
}

FiniteMetricSpace from_pseudo_euclidean(const PseudoEuclideanPointSet& ps) {
  const std::size_t n = ps.count;
  if (n == 0) throw Error(ErrorCode::kInvalidInput, "need at least one point");
  if (ps.coords.size() != n * ps.dim()) {
    throw Error(ErrorCode::kInvalidInput, "coordinate buffer size does not match count * dim");
  }
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double q = ps.squared_interval(i, j);
      if (!std::isfinite(q)) throw Error(ErrorCode::kInvalidInput, "non-finite coordinate");
      if (q <= 0.0) {
        std::ostringstream msg;
        msg << "pair (" << i << ", " << j << ") is outside the positive cone (squared interval "
            << q << ")";
        throw Error(ErrorCode::kConeViolation, msg.str(), {i, j});
      }
      d[i * n + j] = d[j * n + i] = std::sqrt(q);
    }
  }
  if (auto w = triangle_witness(d, n, {})) {
    throw Error(ErrorCode::kTriangleViolation,
                "triangle inequality fails on " + describe_triple(*w, {}),
                {(*w)[0], (*w)[1], (*w)[2]});
  }
  return detail::make_trusted_space(n, std::move(d), {});
}

bool strict_cauchy_schwarz_check(const PseudoEuclideanPointSet& ps, std::size_t i,
                                 std::size_t j, std::size_t k) {
  if (i >= ps.count || j >= ps.count || k >= ps.count) {
    throw Error(ErrorCode::kInvalidInput, "point index out of range");
  }
  const double qij = ps.squared_interval(i, j);
  const double qjk = ps.squared_interval(j, k);
  const double qik = ps.squared_interval(i, k);
  if (qij < 0.0) throw Error(ErrorCode::kConeViolation, "pair outside the positive cone", {i, j});
  if (qjk < 0.0) throw Error(ErrorCode::kConeViolation, "pair outside the positive cone", {j, k});
  if (qik < 0.0) throw Error(ErrorCode::kConeViolation, "pair outside the positive cone", {i, k});
  return ps.form_of_differences(i, j, j, k) < std::sqrt(qij) * std::sqrt(qjk);
}

std::vector<double> sample_sphere_points(std::size_t ambient_dim, std::size_t count,
                                         CounterRng& rng) {
  std::vector<double> pts(ambient_dim * count);
  for (std::size_t i = 0; i < count; ++i) {
    double* p = pts.data() + i * ambient_dim;
    double norm2 = 0.0;
    while (norm2 < 1e-200) {
      norm2 = 0.0;
      for (std::size_t c = 0; c < ambient_dim; ++c) {
        p[c] = rng.normal();
        norm2 += p[c] * p[c];
      }
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t c = 0; c < ambient_dim; ++c) p[c] *= inv;
  }
  return pts;
}

namespace {

FiniteMetricSpace sphere_space(std::size_t dim, std::size_t n, std::uint64_t seed,
                               bool square_root) {
  const std::size_t ambient = dim + 1;
  CounterRng rng(seed);
  std::vector<double> pts;
  std::vector<double> d(n * n, 0.0);
  // Coincident samples are redrawn; the metric axioms forbid zero distances.
  for (;;) {
    pts = sample_sphere_points(ambient, n, rng);
    bool collision = false;
    for (std::size_t i = 0; i < n && !collision; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double chord2 = 0.0;
        for (std::size_t c = 0; c < ambient; ++c) {
          const double t = pts[i * ambient + c] - pts[j * ambient + c];
          chord2 += t * t;
        }
        const double chord = std::sqrt(chord2);
        double arc = 2.0 * std::asin(std::min(1.0, 0.5 * chord));
        if (arc == 0.0) {
          collision = true;
          break;
        }
        if (square_root) arc = std::sqrt(arc);
        d[i * n + j] = d[j * n + i] = arc;
      }
    }
    if (!collision) break;
  }
  return detail::make_trusted_space(n, std::move(d), {});
}

}  // namespace

FiniteMetricSpace named_example(std::string_view name, const ExampleParams& params) {
  auto build = [](std::size_t n, auto&& rule) {
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) d[i * n + j] = rule(i, j);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    return detail::make_trusted_space(n, std::move(d), std::move(labels));
  };
  // The tripod's centre is the fourth point (index 3).
  auto tripod_rule = [](std::size_t i, std::size_t j) {
    const bool spoke = (i == 3 && j < 3) || (j == 3 && i < 3);
    return spoke ? 1.0 : 2.0;
  };

  if (name == "tripod") return build(4, tripod_rule);
  if (name == "tripod_extended") {
    if (params.n < 5) throw Error(ErrorCode::kBadParams, "tripod_extended needs n >= 5");
    return build(params.n, tripod_rule);
  }
  if (name == "simplex") {
    if (params.n < 2) throw Error(ErrorCode::kBadParams, "simplex needs n >= 2");
    if (!(params.side > 0.0) || !std::isfinite(params.side)) {
      throw Error(ErrorCode::kBadParams, "simplex side must be positive");
    }
    const double side = params.side;
    return build(params.n, [side](std::size_t, std::size_t) { return side; });
  }
  if (name == "sphere" || name == "sphere_sqrt") {
    if (params.dim < 1) throw Error(ErrorCode::kBadParams, "sphere needs dim >= 1");
    if (params.n < 1) throw Error(ErrorCode::kBadParams, "sphere needs n >= 1");
    return sphere_space(params.dim, params.n, params.seed, name == "sphere_sqrt");
  }
  throw Error(ErrorCode::kUnknownName, "unknown example '" + std::string(name) + "'");
}

}  // namespace mmsig
