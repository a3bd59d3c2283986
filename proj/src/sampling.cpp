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

#include "mmsig/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "mmsig/error.hpp"
#include "mmsig/rng.hpp"
#include "mmsig/signature.hpp"

namespace mmsig {

DiscreteMeasure::DiscreteMeasure(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::kInvalidMeasure, "measure has no atoms");
  validate_probability_weights(weights_);
  build_cumulative();
}

DiscreteMeasure DiscreteMeasure::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidMeasure, "uniform measure needs n >= 1");
  return DiscreteMeasure(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure DiscreteMeasure::dirac(std::size_t n, std::size_t at) {
  if (at >= n) throw Error(ErrorCode::kInvalidMeasure, "Dirac atom out of range", {at});
  std::vector<double> w(n, 0.0);
  w[at] = 1.0;
  return DiscreteMeasure(std::move(w));
}

DiscreteMeasure DiscreteMeasure::geometric(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::kInvalidMeasure, "geometric ratio must lie in (0, 1)");
  }
  DiscreteMeasure m;
  m.kind_ = Kind::kGeometric;
  m.q_ = q;
  return m;
}

namespace {
// 2^{-(k+1)^2} underflows a double beyond this many atoms.
constexpr std::size_t kSuperGeometricAtoms = 32;
}  // namespace

DiscreteMeasure DiscreteMeasure::super_geometric() {
  DiscreteMeasure m;
  m.kind_ = Kind::kSuperGeometric;
  double total = 0.0;
  for (std::size_t k = 0; k < kSuperGeometricAtoms; ++k) {
    const double kk = static_cast<double>(k + 1);
    m.weights_.push_back(std::exp2(-kk * kk));
    total += m.weights_.back();
  }
  for (double& w : m.weights_) w /= total;
  m.build_cumulative();
  return m;
}

DiscreteMeasure DiscreteMeasure::class_biased(std::size_t classes, double q) {
  if (classes < 1) throw Error(ErrorCode::kInvalidMeasure, "class_biased needs j >= 1");
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::kInvalidMeasure, "class_biased ratio must lie in (0, 1)");
  }
  DiscreteMeasure m;
  m.kind_ = Kind::kClassBiased;
  m.classes_ = classes;
  m.q_ = q;
  return m;
}

void DiscreteMeasure::build_cumulative() {
  cumulative_.resize(weights_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    acc += weights_[i];
    cumulative_[i] = acc;
  }
}

double DiscreteMeasure::weight(std::uint64_t k) const noexcept {
  switch (kind_) {
    case Kind::kFinite:
    case Kind::kSuperGeometric:
      return k < weights_.size() ? weights_[k] : 0.0;
    case Kind::kGeometric:
      return (1.0 - q_) * std::pow(q_, static_cast<double>(k));
    case Kind::kClassBiased: {
      const std::uint64_t rank = k / (classes_ + 1);
      return (1.0 - q_) * std::pow(q_, static_cast<double>(rank)) /
             static_cast<double>(classes_ + 1);
    }
  }
  return 0.0;
}

bool DiscreteMeasure::full_support() const noexcept {
  if (kind_ != Kind::kFinite) return true;
  return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w > 0.0; });
}

std::vector<std::size_t> DiscreteMeasure::support() const {
  if (kind_ != Kind::kFinite) {
    throw Error(ErrorCode::kInvalidMeasure, "support is infinite for countable rules");
  }
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] > 0.0) s.push_back(i);
  return s;
}

DiscreteMeasure DiscreteMeasure::truncated(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::kInvalidMeasure, "cannot truncate to zero atoms");
  if (kind_ == Kind::kFinite) {
    if (n != weights_.size()) {
      throw Error(ErrorCode::kInvalidMeasure, "measure size does not match the space");
    }
    return *this;
  }
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = weight(k);
    total += w[k];
  }
  if (!(total > 0.0)) throw Error(ErrorCode::kInvalidMeasure, "truncated measure has no mass");
  for (double& x : w) x /= total;
  return DiscreteMeasure(std::move(w));
}

std::uint64_t DiscreteMeasure::draw(CounterRng& rng) const {
  auto geometric_rank = [&](double u) {
    // Smallest k with 1 - q^{k+1} > u.
    const double k = std::floor(std::log1p(-u) / std::log(q_));
    return static_cast<std::uint64_t>(std::max(0.0, k));
  };
  switch (kind_) {
    case Kind::kFinite:
    case Kind::kSuperGeometric: {
      const double u = rng.uniform() * cumulative_.back();
      auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      std::size_t idx = static_cast<std::size_t>(it - cumulative_.begin());
      if (idx >= weights_.size()) idx = weights_.size() - 1;
      // Zero-weight atoms share their predecessor's cumulative value and are
      // skipped by upper_bound; guard the last slot against rounding.
      while (weights_[idx] == 0.0 && idx > 0) --idx;
      return idx;
    }
    case Kind::kGeometric:
      return geometric_rank(rng.uniform());
    case Kind::kClassBiased: {
      const auto cls = static_cast<std::uint64_t>(rng.uniform() * static_cast<double>(classes_ + 1));
      const std::uint64_t rank = geometric_rank(rng.uniform());
      return rank * (classes_ + 1) + std::min<std::uint64_t>(cls, classes_);
    }
  }
  return 0;
}

std::string DiscreteMeasure::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::kFinite: os << "finite:" << weights_.size(); break;
    case Kind::kGeometric: os << "geometric:" << q_; break;
    case Kind::kSuperGeometric: os << "super_geometric"; break;
    case Kind::kClassBiased: os << "class_biased:" << classes_ << ":" << q_; break;
  }
  return os.str();
}

std::vector<std::uint64_t> first_occurrences(std::span<const std::uint64_t> raw) {
  std::vector<std::uint64_t> out;
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t v : raw) {
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

SampleTrajectory gv_sample(const DiscreteMeasure& measure, std::size_t m, std::uint64_t seed) {
  SampleTrajectory t;
  t.seed = seed;
  t.raw.reserve(m);
  CounterRng rng(seed);
  for (std::size_t i = 0; i < m; ++i) t.raw.push_back(measure.draw(rng));
  t.dedup = first_occurrences(t.raw);
  return t;
}

DedupInertia dedup_matrix_invariance(const FiniteMetricSpace& space,
                                     const SampleTrajectory& traj, double tol_rel) {
  for (std::uint64_t v : traj.raw) {
    if (v >= space.size()) {
      throw Error(ErrorCode::kInvalidInput, "trajectory index out of range for the space",
                  {static_cast<std::size_t>(v)});
    }
  }
  DedupInertia out;
  out.raw = inertia(s_matrix_on(space, traj.raw), tol_rel);
  out.dedup = inertia(s_matrix_on(space, traj.dedup), tol_rel);
  return out;
}

namespace {

const std::vector<double>& weights_for(const FiniteMetricSpace& space,
                                       const DiscreteMeasure& measure) {
  if (!measure.is_finite() || measure.size() != space.size()) {
    throw Error(ErrorCode::kInvalidMeasure, "measure must be a finite measure on the space");
  }
  return measure.weights();
}

}  // namespace

SymMatrix k_matrix(const FiniteMetricSpace& space, const DiscreteMeasure& measure) {
  return weighted_congruence(s_matrix(space), weights_for(space, measure));
}

SymMatrix t_matrix(const FiniteMetricSpace& space, const DiscreteMeasure& measure) {
  return weighted_center(s_matrix(space), weights_for(space, measure));
}

}  // namespace mmsig
