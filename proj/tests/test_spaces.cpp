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

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "mmsig/constructions.hpp"
#include "mmsig/error.hpp"
#include "mmsig/rng.hpp"
#include "mmsig/signature.hpp"
#include "mmsig/spaces.hpp"
#include "oracle.hpp"

using mmsig::ErrorCode;
using mmsig::FiniteMetricSpace;
using mmsig::Graph;
using mmsig::PseudoEuclideanPointSet;

namespace {

mmsig::Error error_of(auto&& f) {
  try {
    f();
  } catch (const mmsig::Error& e) {
    return e;
  }
  FAIL("no error raised");
  return mmsig::Error(ErrorCode::kInvalidInput, "");
}

FiniteMetricSpace revalidate(const FiniteMetricSpace& x) {
  return mmsig::from_distance_matrix(x.distances(), x.size());
}

}  // namespace

TEST_CASE("from_distance_matrix accepts valid input") {
  const std::vector<double> d{0, 1, 1, 0};
  const FiniteMetricSpace x = mmsig::from_distance_matrix(d, 2);
  CHECK(x.size() == 2);
  CHECK(x.distance(0, 1) == 1.0);
  CHECK(x.labels() == std::vector<std::string>{"0", "1"});
  CHECK(x.diameter() == 1.0);

  const auto one = mmsig::from_distance_matrix(std::vector<double>{0.0}, 1);
  CHECK(one.size() == 1);
  CHECK(one.diameter() == 0.0);
}

TEST_CASE("from_distance_matrix reports the failing check") {
  CHECK(error_of([] {
          mmsig::from_distance_matrix(std::vector<double>{0, 1, 1.5, 0}, 2);
        }).code() == ErrorCode::kAsymmetry);
  CHECK(error_of([] {
          mmsig::from_distance_matrix(std::vector<double>{0, -1, -1, 0}, 2);
        }).code() == ErrorCode::kNegativeDistance);
  CHECK(error_of([] {
          mmsig::from_distance_matrix(std::vector<double>{0, 0, 0, 0}, 2);
        }).code() == ErrorCode::kZeroOffDiagonal);
  CHECK(error_of([] {
          mmsig::from_distance_matrix(std::vector<double>{0, NAN, NAN, 0}, 2);
        }).code() == ErrorCode::kInvalidInput);
  CHECK(error_of([] {
          mmsig::from_distance_matrix(std::vector<double>{1, 1, 1, 0}, 2);
        }).code() == ErrorCode::kInvalidInput);
  CHECK(error_of([] { mmsig::from_distance_matrix(std::vector<double>{}, 0); }).code() ==
        ErrorCode::kInvalidInput);

  // d(1,3) = 5 against d(1,2) = d(2,3) = 1.
  const std::vector<double> bad{0, 1, 5, 1, 0, 1, 5, 1, 0};
  const auto e = error_of([&] { mmsig::from_distance_matrix(bad, 3); });
  CHECK(e.code() == ErrorCode::kTriangleViolation);
  CHECK(e.witness() == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("tripod is a metric but not a strict one") {
  const auto d = fixtures::b_distances(4);
  CHECK_NOTHROW(mmsig::from_distance_matrix(d, 4));
  mmsig::ValidationOptions strict;
  strict.strict = true;
  const auto e = error_of([&] { mmsig::from_distance_matrix(d, 4, strict); });
  CHECK(e.code() == ErrorCode::kTriangleViolation);
  // d(1,2) = d(1,4) + d(4,2) in 1-based labels.
  CHECK(e.witness() == std::vector<std::size_t>{0, 3, 1});
}

TEST_CASE("triangle tolerance scales with the diameter") {
  const double big = 1e6;
  const std::vector<double> d{0, big, 2 * big + 1e-7, big, 0, big, 2 * big + 1e-7, big, 0};
  CHECK_NOTHROW(mmsig::from_distance_matrix(d, 3));
  const std::vector<double> e{0, big, 2 * big + 1e-3, big, 0, big, 2 * big + 1e-3, big, 0};
  CHECK_THROWS_AS(mmsig::from_distance_matrix(e, 3), mmsig::Error);
}

TEST_CASE("graph metrics") {
  const FiniteMetricSpace p3 = mmsig::from_graph(Graph(3, {{0, 1}, {1, 2}}));
  CHECK(p3.distance(0, 2) == 2.0);
  CHECK(p3.distance(0, 1) == 1.0);

  for (std::size_t n = 2; n <= 8; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    const auto kn = mmsig::from_graph(Graph(n, edges));
    const auto simplex = mmsig::named_example("simplex", {.n = n});
    CHECK(std::vector<double>(kn.distances().begin(), kn.distances().end()) ==
          std::vector<double>(simplex.distances().begin(), simplex.distances().end()));
  }

  const auto e = error_of([] { mmsig::from_graph(Graph(4, {{0, 1}, {2, 3}})); });
  CHECK(e.code() == ErrorCode::kDisconnected);
  REQUIRE(e.witness().size() == 2);
  CHECK(e.witness()[0] < 2);
  CHECK(e.witness()[1] >= 2);
}

TEST_CASE("union-construction graph reproduces its distance table") {
  // Two tripods and a triangle, joined through a hub at distance 1 from every
  // point: cross-component hop distance is then 2 = h, within-component
  // distances stay 1 or 2.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto tripod = [&](std::size_t o) {
    for (std::size_t i = 0; i < 3; ++i) edges.emplace_back(o + i, o + 3);
  };
  tripod(0);
  tripod(4);
  edges.emplace_back(8, 9);
  edges.emplace_back(8, 10);
  edges.emplace_back(9, 10);
  for (std::size_t v = 0; v < 11; ++v) edges.emplace_back(v, 11);
  const auto g = mmsig::from_graph(Graph(12, edges));
  const auto tri = mmsig::named_example("tripod");
  const auto simplex = mmsig::named_example("simplex", {.n = 3});
  const std::vector<FiniteMetricSpace> parts{tri, tri, simplex};
  const auto u = mmsig::union_space(parts, 2.0);
  const std::vector<std::size_t> first11 = fixtures::iota(11);
  const auto sub = g.subspace(first11);
  for (std::size_t i = 0; i < 11; ++i)
    for (std::size_t j = 0; j < 11; ++j) CHECK(sub.distance(i, j) == u.space.distance(i, j));
}

TEST_CASE("graph validation") {
  CHECK(error_of([] { Graph(3, {{0, 0}}); }).code() == ErrorCode::kInvalidInput);
  CHECK(error_of([] { Graph(3, {{0, 3}}); }).code() == ErrorCode::kInvalidInput);
  CHECK(error_of([] { Graph(3, {{0, 1}, {1, 0}}); }).code() == ErrorCode::kInvalidInput);
  const Graph g(4, {{2, 1}, {0, 3}});
  CHECK(g.edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 3}, {1, 2}});
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(0, 1));
}

TEST_CASE("Euclidean point sets") {
  const auto sq = mmsig::from_euclidean_points(fixtures::unit_square(), 4, 2);
  CHECK(sq.distance(0, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sq.distance(0, 1) == 1.0);

  // Equilateral triangle of side 2 is the tripod's leaf set.
  const double h = std::sqrt(3.0);
  const std::vector<double> tri{0, 0, 2, 0, 1, h};
  const auto t = mmsig::from_euclidean_points(tri, 3, 2);
  const auto tripod = mmsig::named_example("tripod");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(t.distance(i, j) == doctest::Approx(tripod.distance(i, j)));

  const std::vector<double> line{0, 1, 3};
  const auto l = mmsig::from_euclidean_points(line, 3, 1);
  CHECK(l.distance(0, 2) == 3.0);
  CHECK(l.distance(0, 2) == l.distance(0, 1) + l.distance(1, 2));

  const std::vector<double> dup{0, 0, 1, 1, 0, 0};
  const auto e = error_of([&] { mmsig::from_euclidean_points(dup, 3, 2); });
  CHECK(e.code() == ErrorCode::kDuplicatePoints);
  CHECK(e.witness() == std::vector<std::size_t>{0, 2});
}

TEST_CASE("pseudo-Euclidean point sets") {
  PseudoEuclideanPointSet ps{1, 1, 2, {0, 0, 0.6, 1.0}};
  const auto x = mmsig::from_pseudo_euclidean(ps);
  CHECK(x.distance(0, 1) == doctest::Approx(0.8).epsilon(1e-15));

  PseudoEuclideanPointSet cone{1, 1, 2, {0, 0, 1.0, 0.5}};
  CHECK(cone.squared_interval(0, 1) == doctest::Approx(-0.75));
  const auto e = error_of([&] { mmsig::from_pseudo_euclidean(cone); });
  CHECK(e.code() == ErrorCode::kConeViolation);
  CHECK(e.witness() == std::vector<std::size_t>{0, 1});

  // n_neg = 0 is the Euclidean case.
  oracle::Gen g(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = g.index(2, 12), dim = g.index(1, 4);
    const auto pts = g.gaussian_points(n, dim);
    PseudoEuclideanPointSet eu{0, dim, n, pts};
    const auto a = mmsig::from_pseudo_euclidean(eu);
    const auto b = mmsig::from_euclidean_points(pts, n, dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(std::abs(a.distance(i, j) - b.distance(i, j)) <= 4e-16 * b.diameter());
  }
}

TEST_CASE("pseudo-Euclidean triangle failures are reported") {
  // Three spacelike-separated points on a line in R^{1,1} where the form
  // makes the middle leg long: |z0 z2| > |z0 z1| + |z1 z2|.
  PseudoEuclideanPointSet ps{1, 1, 3, {0, 0, 0.9, 1.0, 0, 2.0}};
  const auto e = error_of([&] { mmsig::from_pseudo_euclidean(ps); });
  CHECK(e.code() == ErrorCode::kTriangleViolation);
}

TEST_CASE("strict Cauchy-Schwarz check") {
  const std::vector<double> tri{0, 0, 1, 0, 0, 1};
  PseudoEuclideanPointSet a{0, 2, 3, tri};
  CHECK(mmsig::strict_cauchy_schwarz_check(a, 0, 1, 2));
  const std::vector<double> line{0, 0, 1, 0, 3, 0};
  PseudoEuclideanPointSet b{0, 2, 3, line};
  CHECK_FALSE(mmsig::strict_cauchy_schwarz_check(b, 0, 1, 2));

  // Random admissible triples in R^{1,2} against the direct distance test.
  oracle::Gen g(4);
  int checked = 0;
  while (checked < 500) {
    std::vector<double> z(9);
    for (double& v : z) v = g.normal();
    for (std::size_t i = 0; i < 3; ++i) z[3 * i] *= 0.3;  // keep most pairs spacelike
    PseudoEuclideanPointSet ps{1, 2, 3, z};
    if (ps.squared_interval(0, 1) <= 0 || ps.squared_interval(1, 2) <= 0 ||
        ps.squared_interval(0, 2) <= 0)
      continue;
    const double d01 = std::sqrt(ps.squared_interval(0, 1));
    const double d12 = std::sqrt(ps.squared_interval(1, 2));
    const double d02 = std::sqrt(ps.squared_interval(0, 2));
    CHECK(mmsig::strict_cauchy_schwarz_check(ps, 0, 1, 2) == (d02 < d01 + d12));
    ++checked;
  }

  PseudoEuclideanPointSet cone{1, 1, 3, {0, 0, 1.0, 0.5, 0, 3}};
  CHECK(error_of([&] { mmsig::strict_cauchy_schwarz_check(cone, 0, 1, 2); }).code() ==
        ErrorCode::kConeViolation);
}

TEST_CASE("named examples") {
  const auto s5 = mmsig::named_example("simplex", {.n = 5});
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(s5.distance(i, j) == (i == j ? 0.0 : 1.0));

  const auto t6 = mmsig::named_example("tripod_extended", {.n = 6});
  const auto b6 = fixtures::b_matrix(6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(t6.distance(i, j) * t6.distance(i, j) == b6(i, j));

  const auto tri = mmsig::named_example("tripod");
  CHECK(tri.labels() == std::vector<std::string>{"1", "2", "3", "4"});
  CHECK(tri.distance(0, 3) == 1.0);
  CHECK(tri.distance(0, 1) == 2.0);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = mmsig::named_example("sphere", {.n = 3, .dim = 1, .seed = seed});
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(c.distance(i, j) <= std::numbers::pi);
    CHECK_NOTHROW(revalidate(c));
  }

  CHECK(error_of([] { mmsig::named_example("torus"); }).code() == ErrorCode::kUnknownName);
  CHECK(error_of([] { mmsig::named_example("simplex", {.n = 1}); }).code() == ErrorCode::kBadParams);
  CHECK(error_of([] { mmsig::named_example("tripod_extended", {.n = 4}); }).code() ==
        ErrorCode::kBadParams);
  CHECK(error_of([] { mmsig::named_example("sphere", {.n = 4, .dim = 0}); }).code() ==
        ErrorCode::kBadParams);
}

TEST_CASE("sphere samples are deterministic and seed-dependent") {
  const auto a = mmsig::named_example("sphere", {.n = 30, .dim = 2, .seed = 5});
  const auto b = mmsig::named_example("sphere", {.n = 30, .dim = 2, .seed = 5});
  const auto c = mmsig::named_example("sphere", {.n = 30, .dim = 2, .seed = 6});
  CHECK(std::equal(a.distances().begin(), a.distances().end(), b.distances().begin()));
  CHECK_FALSE(std::equal(a.distances().begin(), a.distances().end(), c.distances().begin()));

  // Sample points are on the unit sphere.
  mmsig::CounterRng rng(1);
  const auto pts = mmsig::sample_sphere_points(4, 50, rng);
  for (std::size_t i = 0; i < 50; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < 4; ++k) s += pts[4 * i + k] * pts[4 * i + k];
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("property: constructor outputs pass validation") {
  oracle::Gen g(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = g.index(2, 25);
    CHECK_NOTHROW(revalidate(oracle::random_space(g, n)));
    CHECK_NOTHROW(revalidate(oracle::random_graph_space(g, n, 0.2)));
    CHECK_NOTHROW(revalidate(mmsig::named_example("sphere", {.n = n, .dim = g.index(1, 4),
                                                              .seed = g.index(0, 1000)})));
    CHECK_NOTHROW(revalidate(mmsig::named_example("sphere_sqrt", {.n = n, .dim = g.index(1, 4),
                                                                   .seed = g.index(0, 1000)})));
  }
  CHECK_NOTHROW(revalidate(mmsig::named_example("tripod_extended", {.n = 30})));
}

TEST_CASE("property: square-root sphere metrics are Hilbertian") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (std::size_t dim : {1, 2, 3}) {
      const auto x = mmsig::named_example("sphere_sqrt", {.n = 60, .dim = dim, .seed = seed});
      CHECK(mmsig::centered_signature(x).s_minus == 0);
    }
  }
}

TEST_CASE("subspace") {
  const auto x = mmsig::named_example("tripod");
  const std::vector<std::size_t> idx{3, 0};
  const auto s = x.subspace(idx);
  CHECK(s.size() == 2);
  CHECK(s.distance(0, 1) == 1.0);
  CHECK(s.labels() == std::vector<std::string>{"4", "1"});
  const std::vector<std::size_t> bad{0, 0};
  CHECK(error_of([&] { x.subspace(bad); }).code() == ErrorCode::kInvalidInput);
}
