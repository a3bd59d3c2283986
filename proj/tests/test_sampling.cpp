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
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "mmsig/error.hpp"
#include "mmsig/rng.hpp"
#include "mmsig/sampling.hpp"
#include "mmsig/signature.hpp"
#include "oracle.hpp"

using mmsig::DiscreteMeasure;
using mmsig::ErrorCode;
using mmsig::SampleTrajectory;

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

SampleTrajectory with_raw(std::vector<std::uint64_t> raw) {
  SampleTrajectory t;
  t.raw = std::move(raw);
  t.dedup = mmsig::first_occurrences(t.raw);
  return t;
}

}  // namespace

TEST_CASE("measure validation") {
  CHECK(code_of([] { DiscreteMeasure({0.5, 0.6, -0.1}); }) == ErrorCode::kInvalidMeasure);
  CHECK(code_of([] { DiscreteMeasure({0.5, 0.4}); }) == ErrorCode::kInvalidMeasure);
  CHECK(code_of([] { DiscreteMeasure(std::vector<double>{}); }) == ErrorCode::kInvalidMeasure);
  CHECK(code_of([] { DiscreteMeasure({0.5, NAN}); }) == ErrorCode::kInvalidMeasure);
  CHECK_NOTHROW(DiscreteMeasure({0.5, 0.5 + 5e-13}));
  CHECK(code_of([] { DiscreteMeasure::geometric(1.0); }) == ErrorCode::kInvalidMeasure);
  CHECK(code_of([] { DiscreteMeasure::geometric(0.0); }) == ErrorCode::kInvalidMeasure);
  CHECK(code_of([] { DiscreteMeasure::class_biased(0, 0.5); }) == ErrorCode::kInvalidMeasure);
  CHECK(code_of([] { DiscreteMeasure::uniform(0); }) == ErrorCode::kInvalidMeasure);
  CHECK(code_of([] { DiscreteMeasure::dirac(3, 3); }) == ErrorCode::kInvalidMeasure);
}

TEST_CASE("measure accessors") {
  const DiscreteMeasure m({0.25, 0.0, 0.75});
  CHECK_FALSE(m.full_support());
  CHECK(m.support() == std::vector<std::size_t>{0, 2});
  CHECK(m.weight(2) == 0.75);
  CHECK(m.weight(5) == 0.0);
  CHECK(m.describe() == "finite:3");
  CHECK(DiscreteMeasure::uniform(4).full_support());

  const auto g = DiscreteMeasure::geometric(0.9);
  CHECK(g.describe() == "geometric:0.90000000000000002");
  CHECK(g.weight(0) == doctest::Approx(0.1));
  CHECK(g.weight(2) == doctest::Approx(0.1 * 0.81));
  CHECK(code_of([&] { g.support(); }) == ErrorCode::kInvalidMeasure);
  const auto t = g.truncated(3);
  CHECK(t.size() == 3);
  CHECK(t.weight(0) == doctest::Approx(0.1 / (0.1 + 0.09 + 0.081)));

  const auto sg = DiscreteMeasure::super_geometric();
  double c = 0.0;
  for (int k = 1; k < 40; ++k) c += std::exp2(-k * k);
  CHECK(sg.weight(0) == doctest::Approx(0.5 / c));
  CHECK(sg.weight(2) == doctest::Approx(std::exp2(-9) / c));

  const auto cb = DiscreteMeasure::class_biased(2, 0.5);
  CHECK(cb.weight(0) == doctest::Approx(0.5 / 3));
  CHECK(cb.weight(2) == doctest::Approx(0.5 / 3));
  CHECK(cb.weight(3) == doctest::Approx(0.25 / 3));
  double total = 0.0;
  for (std::uint64_t k = 0; k < 300; ++k) total += cb.weight(k);
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("gv_sample basics") {
  const auto u = DiscreteMeasure::uniform(5);
  const auto empty = mmsig::gv_sample(u, 0, 1);
  CHECK(empty.raw.empty());
  CHECK(empty.dedup.empty());

  const auto d = mmsig::gv_sample(DiscreteMeasure::dirac(5, 3), 50, 9);
  CHECK(d.raw == std::vector<std::uint64_t>(50, 3));
  CHECK(d.dedup == std::vector<std::uint64_t>{3});

  const auto a = mmsig::gv_sample(u, 200, 42);
  const auto b = mmsig::gv_sample(u, 200, 42);
  const auto c = mmsig::gv_sample(u, 200, 43);
  CHECK(a.raw == b.raw);
  CHECK(a.dedup == b.dedup);
  CHECK(a.raw != c.raw);
  CHECK(a.seed == 42);
}

TEST_CASE("dedup keeps first occurrences in order") {
  const std::vector<std::uint64_t> raw{4, 2, 4, 7, 2, 1, 7};
  CHECK(mmsig::first_occurrences(raw) == std::vector<std::uint64_t>{4, 2, 7, 1});
  oracle::Gen g(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = mmsig::gv_sample(DiscreteMeasure::geometric(g.uniform(0.3, 0.95)), 300,
                                    g.index(0, 1 << 20));
    std::set<std::uint64_t> seen(t.dedup.begin(), t.dedup.end());
    CHECK(seen.size() == t.dedup.size());
    for (auto v : t.raw) CHECK(seen.count(v) == 1);
    // Order of first appearance.
    std::size_t next = 0;
    std::set<std::uint64_t> so_far;
    for (auto v : t.raw)
      if (so_far.insert(v).second) CHECK(t.dedup[next++] == v);
  }
}

TEST_CASE("uniform sampling covers 10 points within 1000 draws") {
  // P(some point missed) <= 10 * 0.9^1000 < 1e-44: every seed should cover.
  const auto u = DiscreteMeasure::uniform(10);
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed)
    covered += mmsig::gv_sample(u, 1000, seed).dedup.size() == 10;
  CHECK(covered >= 999);
}

TEST_CASE("draw frequencies follow the weights") {
  const int draws = 200000;
  auto frequencies = [&](const DiscreteMeasure& m, std::uint64_t seed) {
    std::map<std::uint64_t, double> f;
    mmsig::CounterRng rng(seed);
    for (int i = 0; i < draws; ++i) f[m.draw(rng)] += 1.0 / draws;
    return f;
  };
  // 5 standard deviations of a binomial proportion.
  auto tol = [&](double p) { return 5.0 * std::sqrt(p * (1 - p) / draws) + 1e-12; };

  const DiscreteMeasure fin({0.1, 0.0, 0.2, 0.7});
  auto f = frequencies(fin, 1);
  CHECK(f.count(1) == 0);
  for (std::uint64_t k : {0, 2, 3}) CHECK(std::abs(f[k] - fin.weight(k)) < tol(fin.weight(k)));

  const auto geo = DiscreteMeasure::geometric(0.7);
  f = frequencies(geo, 2);
  for (std::uint64_t k = 0; k < 10; ++k) CHECK(std::abs(f[k] - geo.weight(k)) < tol(geo.weight(k)));

  const auto sg = DiscreteMeasure::super_geometric();
  f = frequencies(sg, 3);
  for (std::uint64_t k = 0; k < 3; ++k) CHECK(std::abs(f[k] - sg.weight(k)) < tol(sg.weight(k)));

  const auto cb = DiscreteMeasure::class_biased(4, 0.8);
  f = frequencies(cb, 4);
  std::vector<double> per_class(5, 0.0);
  for (const auto& [v, p] : f) per_class[v % 5] += p;
  for (double p : per_class) CHECK(std::abs(p - 0.2) < tol(0.2));
  for (std::uint64_t k = 0; k < 15; ++k) CHECK(std::abs(f[k] - cb.weight(k)) < tol(cb.weight(k)));
}

TEST_CASE("dedup inertia examples") {
  const auto tri = mmsig::named_example("tripod");
  const auto one = mmsig::dedup_matrix_invariance(tri, with_raw({1, 1}));
  CHECK(one.raw.s_minus == 0);
  CHECK(one.raw.s_zero == 2);
  CHECK(one.raw.s_plus == 0);
  CHECK(one.dedup.s_zero == 1);
  CHECK(one.dedup.order() == 1);

  // (1, 2, 1) on the 3-simplex; oracle: eigenvalues of both matrices.
  const auto s3 = mmsig::named_example("simplex", {.n = 3});
  const auto r = mmsig::dedup_matrix_invariance(s3, with_raw({1, 2, 1}));
  Eigen::MatrixXd raw(3, 3);
  raw << 0, -0.5, 0, -0.5, 0, -0.5, 0, -0.5, 0;
  const auto ref = oracle::inertia(raw);
  CHECK(r.raw.s_minus == ref.minus);
  CHECK(r.raw.s_plus == ref.plus);
  CHECK(r.raw.s_zero == 1);
  CHECK(r.dedup.s_minus == 1);
  CHECK(r.dedup.s_plus == 1);

  CHECK(code_of([&] { mmsig::dedup_matrix_invariance(tri, with_raw({0, 9})); }) ==
        ErrorCode::kInvalidInput);
}

TEST_CASE("property: dedup leaves s_minus and s_plus unchanged") {
  oracle::Gen g(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = g.index(2, 15);
    const auto x = trial % 3 == 0 ? mmsig::named_example("tripod") : oracle::random_space(g, n);
    const auto w = g.probability(x.size());
    const auto t = mmsig::gv_sample(DiscreteMeasure(w), g.index(1, 40), g.index(0, 1 << 30));
    const auto r = mmsig::dedup_matrix_invariance(x, t);
    CHECK(r.raw.s_minus == r.dedup.s_minus);
    CHECK(r.raw.s_plus == r.dedup.s_plus);
    CHECK(r.raw.s_zero == r.dedup.s_zero + (t.raw.size() - t.dedup.size()));
    if (x.size() == 4 && t.dedup.size() == 4 && trial % 3 == 0) {
      CHECK(r.raw.s_minus == 1);
      CHECK(r.raw.s_plus == 3);
    }
  }
}

TEST_CASE("tripod trajectories with repeats reach (1, 3)") {
  const auto tri = mmsig::named_example("tripod");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = mmsig::gv_sample(DiscreteMeasure::uniform(4), 60, seed);
    REQUIRE(t.dedup.size() == 4);
    const auto r = mmsig::dedup_matrix_invariance(tri, t);
    CHECK(r.raw.s_minus == 1);
    CHECK(r.raw.s_plus == 3);
  }
}

TEST_CASE("k_matrix and t_matrix examples") {
  const auto tri = mmsig::named_example("tripod");
  const auto uni = DiscreteMeasure::uniform(4);
  const auto k = mmsig::k_matrix(tri, uni);
  const auto s = mmsig::s_matrix(tri);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(k(i, j) == doctest::Approx(s(i, j) / 4));

  oracle::Gen g(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto in = mmsig::inertia(mmsig::k_matrix(tri, DiscreteMeasure(g.probability(4))));
    CHECK(in.s_minus == 1);
    CHECK(in.s_zero == 0);
    CHECK(in.s_plus == 3);
  }

  // A zero weight drops that point; oracle: inertia of the support submatrix.
  const DiscreteMeasure partial({0.5, 0.0, 0.25, 0.25});
  const auto kp = mmsig::inertia(mmsig::k_matrix(tri, partial));
  const std::vector<std::size_t> support{0, 2, 3};
  const auto ref = oracle::inertia(mmsig::s_matrix(tri).principal(support));
  CHECK(kp.s_minus == ref.minus);
  CHECK(kp.s_plus == ref.plus);
  CHECK(kp.s_zero == ref.zero + 1);

  const auto tu = mmsig::inertia(mmsig::t_matrix(tri, uni));
  CHECK(tu.same_counts(mmsig::centered_signature(tri)));

  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = g.index(2, 20), dim = g.index(1, 5);
    const auto x = mmsig::from_euclidean_points(g.gaussian_points(n, dim), n, dim);
    CHECK(mmsig::inertia(mmsig::t_matrix(x, DiscreteMeasure(g.probability(n)))).s_minus == 0);
  }

  CHECK(code_of([&] { mmsig::k_matrix(tri, DiscreteMeasure::uniform(3)); }) ==
        ErrorCode::kInvalidMeasure);
  CHECK(code_of([&] { mmsig::t_matrix(tri, DiscreteMeasure::geometric(0.5)); }) ==
        ErrorCode::kInvalidMeasure);
}

TEST_CASE("t_matrix annihilates the square-root weight vector") {
  oracle::Gen g(32);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = g.index(2, 20);
    const auto x = oracle::random_space(g, n);
    const DiscreteMeasure m(g.probability(n));
    const auto t = mmsig::t_matrix(x, m);
    const double scale = t.max_abs() * static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += t(i, j) * std::sqrt(m.weight(j));
      CHECK(std::abs(sum) <= 1e-13 * scale);
    }
  }
}
