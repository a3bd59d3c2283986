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
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "mmsig/constructions.hpp"
#include "mmsig/error.hpp"
#include "mmsig/rng.hpp"
#include "mmsig/signature.hpp"
#include "oracle.hpp"

using mmsig::CountableRadoModel;
using mmsig::ErrorCode;
using mmsig::FiniteMetricSpace;
using mmsig::PlantedClique;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const mmsig::Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidInput;
}

FiniteMetricSpace circle_points(std::size_t n, std::uint64_t seed) {
  oracle::Gen g(seed);
  std::vector<double> xy;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2 * M_PI * (i + 0.3 * g.uniform()) / n;
    xy.push_back(std::cos(t));
    xy.push_back(std::sin(t));
  }
  return mmsig::from_euclidean_points(xy, n, 2);
}

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

std::vector<double> block_eigs(const mmsig::SymMatrix& r, std::size_t lo, std::size_t hi) {
  Eigen::MatrixXd b(hi - lo, hi - lo);
  for (std::size_t i = lo; i < hi; ++i)
    for (std::size_t j = lo; j < hi; ++j) b(i - lo, j - lo) = r(i, j);
  return oracle::eigenvalues(b);
}

}  // namespace

TEST_CASE("perturbation reaches the maximal negative count") {
  const auto sq = mmsig::from_euclidean_points(fixtures::unit_square(), 4, 2);
  const auto r = mmsig::perturb_to_max_negative(sq, 1);
  CHECK(r.centered_before.s_plus == 2);
  CHECK(r.epsilon > 0.0);
  const auto t = mmsig::centered_signature(r.space);
  CHECK(t.s_minus == 1);
  CHECK(t.s_plus == 2);
  // Independent check of the output signature.
  const auto c = oracle::centering(4);
  const auto o = oracle::inertia(c * oracle::s_matrix(r.space) * c);
  CHECK(o.minus == 1);
  CHECK(o.plus == 2);

  const auto circ = circle_points(6, 2);
  const auto rc = mmsig::perturb_to_max_negative(circ, 3);
  const auto tc = mmsig::centered_signature(rc.space);
  CHECK(tc.s_minus == 3);
  CHECK(tc.s_plus == 2);
  mmsig::ValidationOptions strict;
  strict.strict = true;
  CHECK_FALSE(mmsig::triangle_witness(rc.space.distances(), 6, strict));
}

TEST_CASE("perturbation edge cases") {
  const auto simplex = mmsig::named_example("simplex", {.n = 5});
  const auto r = mmsig::perturb_to_max_negative(simplex, 1);
  CHECK(r.epsilon == 0.0);
  CHECK(vec(r.space.distances()) == vec(simplex.distances()));

  const auto line = mmsig::from_euclidean_points(std::vector<double>{0, 1, 2, 5}, 4, 1);
  CHECK(code_of([&] { mmsig::perturb_to_max_negative(line, 1); }) ==
        ErrorCode::kStrictnessViolated);
  CHECK(code_of([&] { mmsig::perturb_to_max_negative(mmsig::named_example("tripod"), 1); }) ==
        ErrorCode::kStrictnessViolated);

  const auto sq = mmsig::from_euclidean_points(fixtures::unit_square(), 4, 2);
  CHECK(vec(mmsig::perturb_to_max_negative(sq, 9).space.distances()) == vec(mmsig::perturb_to_max_negative(sq, 9).space.distances()));
}

TEST_CASE("property: perturbation stays within the requested deviation") {
  oracle::Gen g(61);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = g.index(4, 10);
    const auto x = circle_points(n, 100 + trial);
    mmsig::PerturbationOptions opts;
    // Much below 1e-5 the new negative eigenvalues fall under the zero
    // threshold and the call gives up with EpsilonUnderflow.
    opts.max_deviation = std::pow(10.0, -static_cast<double>(g.index(2, 5)));
    const auto r = mmsig::perturb_to_max_negative(x, trial, opts);
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        dev = std::max(dev, std::abs(x.distance(i, j) - r.space.distance(i, j)));
    CHECK(dev <= opts.max_deviation);
    CHECK(std::abs(dev - r.max_deviation) < 1e-15);
    const auto t = mmsig::centered_signature(r.space);
    CHECK(t.s_plus == 2);
    CHECK(t.s_minus == n - 3);
  }
}

TEST_CASE("prescribed signatures") {
  const auto a = mmsig::prescribed_signature_space(1, 2, 5);
  CHECK(a.size() == 4);
  const auto ta = mmsig::centered_signature(a);
  CHECK(ta.s_minus == 1);
  CHECK(ta.s_plus == 2);
  const auto sa = mmsig::space_signature(a);
  CHECK((sa.s_plus == 2 || sa.s_plus == 3));
  CHECK((sa.s_minus == 1 || sa.s_minus == 2));

  const auto b = mmsig::prescribed_signature_space(3, 2, 5);
  CHECK(b.size() == 6);
  CHECK(mmsig::centered_signature(b).s_minus == 3);
  CHECK(mmsig::centered_signature(b).s_plus == 2);

  CHECK(code_of([] { mmsig::prescribed_signature_space(0, 2, 1); }) == ErrorCode::kBadParams);
  CHECK(code_of([] { mmsig::prescribed_signature_space(1, 1, 1); }) == ErrorCode::kBadParams);

  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t p = 2; p <= 5; ++p) {
      const auto x = mmsig::prescribed_signature_space(n, p, 17 * n + p);
      const auto t = mmsig::centered_signature(x);
      CHECK(t.s_minus == n);
      CHECK(t.s_plus == p);
      const auto s = mmsig::space_signature(x);
      CHECK(s.s_plus >= p);
      CHECK(s.s_plus <= p + 1);
      CHECK(s.s_minus >= n);
      CHECK(s.s_minus <= n + 1);
    }
}

TEST_CASE("disjoint unions") {
  const std::size_t m = 4, nm = 5;
  std::vector<FiniteMetricSpace> parts(m - 1, mmsig::named_example("tripod"));
  parts.push_back(mmsig::named_example("simplex", {.n = nm, .side = 2.0}));
  const auto u = mmsig::union_space(parts, 1.0);
  REQUIRE(u.space.size() == 4 * (m - 1) + nm);
  CHECK(u.offsets.back() == u.space.size());
  CHECK(u.space.distance(0, 4) == 1.0);
  for (std::size_t c = 0; c + 1 < m; ++c) {
    const auto ev = block_eigs(u.block_matrix, u.offsets[c], u.offsets[c + 1]);
    const std::vector<double> want{-2.5, 0.5, 2.0, 2.0};
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(ev[k] - want[k]) < 1e-12);
  }
  const auto r = mmsig::inertia(u.block_matrix);
  CHECK(r.s_plus == 3 * (m - 1) + nm - 1);
  CHECK(r.s_minus == m);
  // Cross-block entries vanish.
  CHECK(u.block_matrix(0, u.offsets[1]) == 0.0);

  const auto single = mmsig::union_space(std::vector<FiniteMetricSpace>{parts[0]}, 1.0);
  CHECK(vec(single.space.distances()) == vec(parts[0].distances()));
  CHECK(single.space.labels() == parts[0].labels());

  const auto far = mmsig::named_example("simplex", {.n = 3, .side = 5.0});
  const std::vector<FiniteMetricSpace> bad{parts[0], far};
  mmsig::Error err(ErrorCode::kInvalidInput, "");
  try {
    mmsig::union_space(bad, 1.0);
  } catch (const mmsig::Error& e) {
    err = e;
  }
  CHECK(err.code() == ErrorCode::kDiameterTooLarge);
  CHECK(err.witness() == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("property: union bracket") {
  oracle::Gen g(62);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = g.index(1, 4);
    std::vector<FiniteMetricSpace> parts;
    double diam = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      parts.push_back(oracle::random_space(g, g.index(1, 7)));
      diam = std::max(diam, parts.back().diameter());
    }
    const double h = std::max(diam / 2, 1e-3) * (1.0 + g.uniform());
    const auto u = mmsig::union_space(parts, h);
    const auto s = mmsig::space_signature(u.space);
    const auto r = mmsig::inertia(u.block_matrix);
    CHECK(s.s_plus <= r.s_plus);
    CHECK(r.s_plus <= s.s_plus + 1);
    CHECK(s.s_minus <= r.s_minus + 1);
    CHECK(r.s_minus <= s.s_minus);
    // s_pm(R) is the sum over blocks.
    std::size_t plus = 0, minus = 0;
    for (std::size_t c = 0; c < m; ++c)
      for (double l : block_eigs(u.block_matrix, u.offsets[c], u.offsets[c + 1])) {
        plus += l > 1e-9 * u.space.size() * h * h;
        minus += l < -1e-9 * u.space.size() * h * h;
      }
    CHECK(plus == r.s_plus);
    CHECK(minus == r.s_minus);
  }
}

TEST_CASE("Rado model adjacency") {
  CHECK(code_of([] { CountableRadoModel(0.0, 1); }) == ErrorCode::kBadParams);
  CHECK(code_of([] { CountableRadoModel(1.0, 1); }) == ErrorCode::kBadParams);
  CHECK(code_of([] { CountableRadoModel(std::nan(""), 1); }) == ErrorCode::kBadParams);

  CHECK(mmsig::er_adjacency(CountableRadoModel(1e-300, 3), 60).edges().empty());
  CHECK(mmsig::er_adjacency(CountableRadoModel(std::nextafter(1.0, 0.0), 3), 60).edges().size() ==
        60 * 59 / 2);

  const CountableRadoModel m(0.5, 11);
  for (std::uint64_t u = 0; u < 50; ++u) {
    CHECK_FALSE(m.adjacent(u, u));
    CHECK(m.distance(u, u) == 0.0);
    for (std::uint64_t v = 0; v < 50; ++v) {
      CHECK(m.adjacent(u, v) == m.adjacent(v, u));
      if (u != v) CHECK(m.distance(u, v) == (m.adjacent(u, v) ? 1.0 : 2.0));
    }
  }
  // Large vertex ids are just more keys.
  CHECK(m.adjacent(1ULL << 40, 7) == CountableRadoModel(0.5, 11).adjacent(7, 1ULL << 40));
}

TEST_CASE("Rado model density concentrates") {
  // Binomial oracle: 500k pairs, sd 0.0007, so 0.01 is ~14 sd.
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = mmsig::er_adjacency(CountableRadoModel(0.5, seed), 1000);
    const double density = static_cast<double>(g.edges().size()) / (1000.0 * 999 / 2);
    inside += std::abs(density - 0.5) <= 0.01;
  }
  CHECK(inside >= 99);

  const auto g = mmsig::er_adjacency(CountableRadoModel(0.2, 5), 800);
  const double density = static_cast<double>(g.edges().size()) / (800.0 * 799 / 2);
  CHECK(std::abs(density - 0.2) < 5 * std::sqrt(0.2 * 0.8 / (800.0 * 799 / 2)));
}

TEST_CASE("property: prefix consistency") {
  oracle::Gen g(63);
  for (int trial = 0; trial < 30; ++trial) {
    const CountableRadoModel m(0.05 + 0.9 * g.uniform(), g.index(0, 1 << 30));
    const std::size_t big = g.index(2, 120), small = g.index(1, big - 1);
    const auto a = mmsig::er_adjacency(m, big), b = mmsig::er_adjacency(m, small);
    for (std::size_t i = 0; i < small; ++i)
      for (std::size_t j = 0; j < small; ++j) CHECK(a.has_edge(i, j) == b.has_edge(i, j));
  }
}

TEST_CASE("Rado S matrices") {
  const mmsig::Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  const auto s = mmsig::rado_s_matrix(k3);
  const auto e = mmsig::rado_s_matrix(mmsig::Graph(3, {}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(s(i, j) == (i == j ? 0.0 : -0.5));
      CHECK(e(i, j) == (i == j ? 0.0 : -2.0));
    }

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = mmsig::er_adjacency(CountableRadoModel(0.5, seed), 150);
    REQUIRE(mmsig::rado_consistency_check(g));
    const auto direct = mmsig::s_matrix(mmsig::from_graph(g));
    const auto formula = mmsig::rado_s_matrix(g);
    for (std::size_t i = 0; i < 150; ++i)
      for (std::size_t j = 0; j < 150; ++j) CHECK(direct(i, j) == formula(i, j));
  }
}

TEST_CASE("Rado consistency check") {
  CHECK(mmsig::rado_consistency_check(mmsig::Graph(3, {{0, 1}, {1, 2}})));
  CHECK_FALSE(mmsig::rado_consistency_check(mmsig::Graph(4, {{0, 1}, {1, 2}, {2, 3}})));
  CHECK_FALSE(mmsig::rado_consistency_check(mmsig::Graph(3, {{0, 1}})));
  CHECK(mmsig::rado_consistency_check(mmsig::Graph(1, {})));
  // Oracle: 1 - N^2 (1 - p^2)^(N-2) is essentially 1 at N = 200, p = 0.5.
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    ok += mmsig::rado_consistency_check(mmsig::er_adjacency(CountableRadoModel(0.5, seed), 200));
  CHECK(ok >= 99);

  // Brute force against BFS diameters on small random graphs.
  oracle::Gen g(64);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = g.index(2, 12);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (g.uniform() < 0.5) edges.emplace_back(i, j);
    const mmsig::Graph graph(n, edges);
    bool expect = true;
    try {
      expect = mmsig::from_graph(graph).diameter() <= 2.0;
    } catch (const mmsig::Error&) {
      expect = false;
    }
    CHECK(mmsig::rado_consistency_check(graph) == expect);
  }
}

TEST_CASE("planted cliques") {
  const CountableRadoModel m(0.5, 21, PlantedClique::prefix(30));
  const auto g = mmsig::er_adjacency(m, 300);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = i + 1; j < 30; ++j) CHECK(g.has_edge(i, j));
  REQUIRE(mmsig::rado_consistency_check(g));
  const auto x = mmsig::from_graph(g);
  for (double d : x.distances()) CHECK((d == 0.0 || d == 1.0 || d == 2.0));
  const auto sub = x.subspace(fixtures::iota(30));
  CHECK(vec(sub.distances()) == vec(mmsig::named_example("simplex", {.n = 30}).distances()));

  const PlantedClique mod{{}, 3};
  CHECK_FALSE(mod.contains(0));
  CHECK(mod.contains(1));
  CHECK(mod.contains(5));
  CHECK_FALSE(mod.contains(9));
  const CountableRadoModel mm(0.5, 4, mod);
  for (std::uint64_t u = 1; u < 60; ++u)
    for (std::uint64_t v = u + 1; v < 60; ++v)
      if (u % 3 && v % 3) CHECK(mm.adjacent(u, v));

  const auto c = PlantedClique::from_members({5, 1, 5, 3});
  CHECK(c.members == std::vector<std::uint64_t>{1, 3, 5});
  CHECK(PlantedClique{}.empty());
}
