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

#include "mmsig/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <unordered_set>

#include "mmsig/error.hpp"
#include "mmsig/signature.hpp"

namespace mmsig {

Esd esd_from_eigenvalues(std::span<const double> eigenvalues) {
  Esd e;
  e.n = eigenvalues.size();
  const double scale = e.n == 0 ? 1.0 : 1.0 / std::sqrt(static_cast<double>(e.n));
  e.values.reserve(e.n);
  for (double v : eigenvalues) e.values.push_back(v * scale);
  std::sort(e.values.begin(), e.values.end());
  return e;
}

Esd esd(const SymMatrix& a) { return esd_from_eigenvalues(eigenvalues_sym(a)); }

double semicircle_density(double sigma, double x) {
  const double r2 = 4.0 * sigma * sigma - x * x;
  if (r2 <= 0.0) return 0.0;
  return std::sqrt(r2) / (2.0 * std::numbers::pi * sigma * sigma);
}

double semicircle_cdf(double sigma, double x) {
  const double t = x / (2.0 * sigma);
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return 0.5 + (t * std::sqrt(1.0 - t * t) + std::asin(t)) / std::numbers::pi;
}

double ks_to_semicircle(const Esd& e, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::kInvalidInput, "sigma must be positive");
  const std::size_t n = e.values.size();
  if (n == 0) return 0.0;
  const double inv = 1.0 / static_cast<double>(n);
  double d = 0.0;
  std::size_t i = 0;
  while (i < n) {
    // Ties form one jump of the empirical CDF.
    std::size_t j = i;
    while (j + 1 < n && e.values[j + 1] == e.values[i]) ++j;
    const double f = semicircle_cdf(sigma, e.values[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) * inv));
    d = std::max(d, std::abs(static_cast<double>(j + 1) * inv - f));
    i = j + 1;
  }
  return d;
}

double rado_sigma(double p) { return 1.5 * std::sqrt(p * (1.0 - p)); }

double delta_ratio(const Inertia& in) {
  if (in.s_minus == 0) {
    return in.s_plus == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(in.s_plus) / static_cast<double>(in.s_minus);
}

RadoSpectrum rado_spectrum(const CountableRadoModel& model, std::size_t n, double tol_rel) {
  const Graph g = er_adjacency(model, n);
  const std::vector<double> eig = eigenvalues_sym(rado_s_matrix(g));
  RadoSpectrum out;
  out.esd = esd_from_eigenvalues(eig);
  out.inertia = inertia_from_eigenvalues(eig, tol_rel);
  out.ks = ks_to_semicircle(out.esd, rado_sigma(model.p()));
  out.delta = delta_ratio(out.inertia);
  out.consistent = rado_consistency_check(g);
  return out;
}

std::vector<std::size_t> geometric_checkpoints(std::size_t m_max, std::size_t first) {
  std::vector<std::size_t> c;
  for (std::size_t m = std::max<std::size_t>(first, 1); m < m_max; m *= 2) c.push_back(m);
  if (m_max > 0) c.push_back(m_max);
  return c;
}

RatioTrajectory rado_ratio_trial(const CountableRadoModel& model, const DiscreteMeasure& measure,
                                 std::size_t m_max, std::span<const std::size_t> checkpoints,
                                 std::uint64_t seed, double tol_rel) {
  const SampleTrajectory sample = gv_sample(measure, m_max, seed);
  TrajectoryOptions opts;
  opts.tol_rel = tol_rel;
  opts.window = 0;
  opts.sizes.assign(checkpoints.begin(), checkpoints.end());
  const SignatureTrajectory t = limit_signature_trajectory(
      [&model](std::uint64_t a, std::uint64_t b) { return model.distance(a, b); }, sample.raw,
      opts);
  RatioTrajectory r;
  r.seed = seed;
  r.m = t.sizes;
  r.inertias = t.inertias;
  std::unordered_set<std::uint64_t> seen;
  std::size_t consumed = 0;
  for (std::size_t k = 0; k < t.sizes.size(); ++k) {
    r.delta.push_back(delta_ratio(t.inertias[k]));
    for (; consumed < t.sizes[k]; ++consumed) seen.insert(sample.raw[consumed]);
    r.distinct.push_back(seen.size());
  }
  return r;
}

std::vector<RatioTrajectory> rado_ratio_experiment(const CountableRadoModel& model,
                                                   const DiscreteMeasure& measure,
                                                   const RatioExperimentOptions& options) {
  const std::vector<std::size_t> checkpoints =
      options.checkpoints.empty() ? geometric_checkpoints(options.m_max) : options.checkpoints;
  std::vector<RatioTrajectory> out(options.trials);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(options.trials);
  auto worker = [&] {
    for (std::size_t t = next++; t < options.trials; t = next++) {
      try {
        out[t] = rado_ratio_trial(model, measure, options.m_max, checkpoints,
                                  options.seed ^ static_cast<std::uint64_t>(t), options.tol_rel);
      } catch (...) {
        failures[t] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(options.trials, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return out;
}

RatioSummary summarize_final_delta(std::span<const RatioTrajectory> trials) {
  RatioSummary s;
  s.trials = trials.size();
  std::vector<double> finals;
  for (const auto& t : trials) {
    if (t.delta.empty()) continue;
    finals.push_back(t.delta.back());
    s.m = std::max(s.m, t.m.back());
  }
  if (finals.empty()) return s;
  std::sort(finals.begin(), finals.end());
  auto rank = [&](double q) {
    const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(finals.size())));
    return finals[std::clamp<std::size_t>(k, 1, finals.size()) - 1];
  };
  s.min = finals.front();
  s.q05 = rank(0.05);
  s.q25 = rank(0.25);
  s.median = rank(0.5);
  s.q75 = rank(0.75);
  s.q95 = rank(0.95);
  s.max = finals.back();
  return s;
}

}  // namespace mmsig
