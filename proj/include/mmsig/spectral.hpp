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
#include <vector>

#include "mmsig/constructions.hpp"
#include "mmsig/linalg.hpp"
#include "mmsig/sampling.hpp"

namespace mmsig {

/// Empirical spectral distribution: eigenvalues of A / sqrt(n), ascending.
struct Esd {
  std::size_t n = 0;
  std::vector<double> values;
};

Esd esd(const SymMatrix& a);
Esd esd_from_eigenvalues(std::span<const double> eigenvalues);

/// Semicircle law of radius 2 sigma.
double semicircle_density(double sigma, double x);
double semicircle_cdf(double sigma, double x);

/// Kolmogorov-Smirnov distance between the ESD's empirical CDF and the
/// semicircle CDF.
double ks_to_semicircle(const Esd& e, double sigma);

/// Off-diagonal standard deviation of (3/2) A - 2 with Bernoulli(p) A.
double rado_sigma(double p);

/// s_plus / s_minus; +infinity when s_minus = 0 < s_plus; 1 when both vanish.
double delta_ratio(const Inertia& in);

struct RadoSpectrum {
  Esd esd;
  Inertia inertia;
  double ks = 0.0;
  double delta = 0.0;
  bool consistent = false;  // connected with diameter <= 2
};

/// ESD, KS distance to the semicircle with sigma = rado_sigma(p), inertia
/// and Delta of S_N on the first n vertices.
RadoSpectrum rado_spectrum(const CountableRadoModel& model, std::size_t n,
                           double tol_rel = kDefaultTolRel);

/// 16, 32, 64, ... below m_max, then m_max itself.
std::vector<std::size_t> geometric_checkpoints(std::size_t m_max, std::size_t first = 16);

struct RatioTrajectory {
  std::uint64_t seed = 0;
  std::vector<std::size_t> m;
  std::vector<Inertia> inertias;  // s_zero counts cancelled repeats as zeros
  std::vector<double> delta;
  std::vector<std::size_t> distinct;  // number of distinct sampled vertices at each m
};

struct RatioExperimentOptions {
  std::size_t m_max = 2000;
  std::vector<std::size_t> checkpoints;  // empty: geometric_checkpoints(m_max)
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  double tol_rel = kDefaultTolRel;
  std::size_t threads = 1;
};

/// One Gromov-Vershik trial: i.i.d. vertices from `measure` (sampler seed
/// independent of the model seed), S built from the model's {1, 2} rule,
/// Delta recorded at each checkpoint.
RatioTrajectory rado_ratio_trial(const CountableRadoModel& model, const DiscreteMeasure& measure,
                                 std::size_t m_max, std::span<const std::size_t> checkpoints,
                                 std::uint64_t seed, double tol_rel = kDefaultTolRel);

/// Trials use sampler seeds seed ^ trial; results are returned in trial
/// order whatever the thread count.
std::vector<RatioTrajectory> rado_ratio_experiment(const CountableRadoModel& model,
                                                   const DiscreteMeasure& measure,
                                                   const RatioExperimentOptions& options);

struct RatioSummary {
  std::size_t trials = 0;
  std::size_t m = 0;
  double min = 0.0, q05 = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, q95 = 0.0, max = 0.0;
};

/// Quantiles (nearest rank) of the final Delta across trials.
RatioSummary summarize_final_delta(std::span<const RatioTrajectory> trials);

}  // namespace mmsig
