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

#include "mmsig/signature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "mmsig/error.hpp"

namespace mmsig {

SymMatrix s_matrix(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = space.distance(i, j);
      s.set(i, j, -0.5 * d * d);
    }
  }
  return s;
}

SymMatrix s_matrix_on(const FiniteMetricSpace& space, std::span<const std::uint64_t> index) {
  const std::size_t m = index.size();
  SymMatrix s(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const double d = space.distance(index[a], index[b]);
      s.set(a, b, -0.5 * d * d);
    }
  }
  return s;
}

Inertia space_signature(const FiniteMetricSpace& space, double tol_rel) {
  return inertia(s_matrix(space), tol_rel);
}

Inertia centered_signature(const FiniteMetricSpace& space, double tol_rel) {
  return inertia(double_center(s_matrix(space)), tol_rel);
}

namespace {

void detect_plateau(SignatureTrajectory& t) {
  const std::size_t w = t.window;
  if (w == 0 || t.inertias.size() < w) return;
  const Inertia& last = t.inertias.back();
  for (std::size_t k = t.inertias.size() - w; k < t.inertias.size(); ++k) {
    if (t.inertias[k].s_minus != last.s_minus || t.inertias[k].s_plus != last.s_plus) return;
  }
  t.stabilized = std::make_pair(last.s_minus, last.s_plus);
}

}  // namespace

SignatureTrajectory limit_signature_trajectory(const DistanceFn& distance,
                                               std::span<const std::uint64_t> sequence,
                                               const TrajectoryOptions& options) {
  std::vector<std::size_t> sizes = options.sizes;
  if (sizes.empty()) {
    sizes.resize(sequence.size());
    std::iota(sizes.begin(), sizes.end(), std::size_t{1});
  }
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] > sequence.size() || (k > 0 && sizes[k] <= sizes[k - 1])) {
      throw Error(ErrorCode::kInvalidInput,
                  "trajectory sizes must be strictly increasing and within the sequence");
    }
  }

  // dedup_len[m] = number of distinct points among the first m entries.
  std::vector<std::uint64_t> dedup;
  std::vector<std::size_t> dedup_len(sequence.size() + 1, 0);
  {
    std::unordered_map<std::uint64_t, std::size_t> seen;
    for (std::size_t m = 0; m < sequence.size(); ++m) {
      if (seen.emplace(sequence[m], dedup.size()).second) dedup.push_back(sequence[m]);
      dedup_len[m + 1] = dedup.size();
    }
  }

  SignatureTrajectory t;
  t.window = options.window;
  t.sizes = sizes;
  t.inertias.reserve(sizes.size());
  // -d^2/2 among the distinct points of the longest prefix.
  const std::size_t full = sizes.empty() ? 0 : dedup_len[sizes.back()];
  std::vector<double> sq(full * full, 0.0);
  for (std::size_t a = 0; a < full; ++a) {
    for (std::size_t b = a + 1; b < full; ++b) {
      const double d = distance(dedup[a], dedup[b]);
      sq[a * full + b] = sq[b * full + a] = -0.5 * d * d;
    }
  }

  std::vector<std::vector<double>> spectra;
  spectra.reserve(sizes.size());
  for (std::size_t size : sizes) {
    const std::size_t n = dedup_len[size];
    SymMatrix s(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) s.set(a, b, sq[a * full + b]);
    spectra.push_back(eigenvalues_sym(s));
  }
  double shared = 0.0;
  if (!spectra.empty()) {
    if (!(options.tol_rel >= 0.0)) throw Error(ErrorCode::kInvalidInput, "tol_rel must be nonnegative");
    for (double v : spectra.back()) shared = std::max(shared, std::abs(v));
    shared *= options.tol_rel * static_cast<double>(spectra.back().size());
  }

  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const std::size_t size = sizes[k];
    Inertia in = options.threshold == TrajectoryThreshold::kShared
                     ? inertia_with_threshold(spectra[k], shared)
                     : inertia_from_eigenvalues(spectra[k], options.tol_rel);
    in.s_zero += size - dedup_len[size];
    if (!t.inertias.empty()) {
      const Inertia& prev = t.inertias.back();
      if (in.s_minus < prev.s_minus || in.s_plus < prev.s_plus) {
        std::ostringstream msg;
        msg << "signature decreased from (" << prev.s_minus << ", " << prev.s_plus << ") to ("
            << in.s_minus << ", " << in.s_plus << ") at prefix size " << size;
        throw Error(ErrorCode::kMonotonicityViolation, msg.str());
      }
    }
    t.inertias.push_back(in);
  }
  detect_plateau(t);
  return t;
}

SignatureTrajectory limit_signature_trajectory(const FiniteMetricSpace& space,
                                               std::span<const std::size_t> order,
                                               const TrajectoryOptions& options) {
  std::vector<std::uint64_t> seq;
  if (order.empty()) {
    seq.resize(space.size());
    std::iota(seq.begin(), seq.end(), std::uint64_t{0});
  } else {
    std::vector<bool> seen(space.size(), false);
    for (std::size_t i : order) {
      if (i >= space.size() || seen[i]) {
        throw Error(ErrorCode::kInvalidInput, "nesting order must list distinct valid points",
                    {i});
      }
      seen[i] = true;
      seq.push_back(i);
    }
  }
  return limit_signature_trajectory(
      [&space](std::uint64_t a, std::uint64_t b) { return space.distance(a, b); }, seq,
      options);
}

SignatureTrajectory limit_signature_trajectory(const FiniteMetricSpace& space,
                                               const DiscreteMeasure& measure, std::size_t m,
                                               std::uint64_t seed,
                                               const TrajectoryOptions& options) {
  if (!measure.is_finite() || measure.size() != space.size()) {
    throw Error(ErrorCode::kInvalidMeasure, "measure must be a finite measure on the space");
  }
  const SampleTrajectory sample = gv_sample(measure, m, seed);
  return limit_signature_trajectory(
      [&space](std::uint64_t a, std::uint64_t b) { return space.distance(a, b); }, sample.raw,
      options);
}

PseudoEuclideanPointSet mds_embed(const FiniteMetricSpace& space, double tol_rel) {
  const std::size_t n = space.size();
  const EigenDecomposition ed = eig_sym(double_center(s_matrix(space)));
  const Inertia in = inertia_from_eigenvalues(ed.eigenvalues, tol_rel);

  // Ascending eigenvalues: negatives already come most-negative first;
  // positives are taken from the top down.
  std::vector<std::size_t> picked;
  for (std::size_t k = 0; k < n && ed.eigenvalues[k] < -in.theta; ++k) picked.push_back(k);
  for (std::size_t k = n; k-- > 0 && ed.eigenvalues[k] > in.theta;) picked.push_back(k);

  PseudoEuclideanPointSet ps;
  ps.n_neg = in.s_minus;
  ps.n_pos = in.s_plus;
  ps.count = n;
  const std::size_t dim = picked.size();
  ps.coords.assign(n * dim, 0.0);
  for (std::size_t c = 0; c < dim; ++c) {
    const std::size_t k = picked[c];
    const auto v = ed.vector(k);
    std::size_t lead = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(v[i]) > std::abs(v[lead])) lead = i;
    const double sign = v[lead] < 0.0 ? -1.0 : 1.0;
    const double scale = sign * std::sqrt(std::abs(ed.eigenvalues[k]));
    for (std::size_t i = 0; i < n; ++i) ps.coords[i * dim + c] = scale * v[i];
  }
  return ps;
}

double verify_isometry(const PseudoEuclideanPointSet& embedding,
                       const FiniteMetricSpace& space, double tol_rel) {
  const std::size_t n = space.size();
  if (embedding.count != n || embedding.coords.size() != n * embedding.dim()) {
    throw Error(ErrorCode::kInvalidInput, "embedding must have one point per space point");
  }
  std::vector<double> q(n * n, 0.0);
  double qmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q[i * n + j] = embedding.squared_interval(i, j);
      qmax = std::max(qmax, std::abs(q[i * n + j]));
    }
  }
  const double theta = tol_rel * static_cast<double>(n) * qmax;
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double qij = q[i * n + j];
      if (qij < -theta) {
        std::ostringstream msg;
        msg << "pair (" << i << ", " << j << ") is outside the positive cone (squared interval "
            << qij << ")";
        throw Error(ErrorCode::kConeViolation, msg.str(), {i, j});
      }
      residual = std::max(residual, std::abs(std::sqrt(std::max(qij, 0.0)) - space.distance(i, j)));
    }
  }
  return residual;
}

std::string EmbeddabilityVerdict::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kEuclidean: os << "euclidean(" << n_pos << ")"; break;
    case Kind::kHilbertLike: os << "hilbert_like(" << n_pos << ")"; break;
    case Kind::kPseudo: os << "pseudo(" << n_neg << ", " << n_pos << ")"; break;
  }
  return os.str();
}

EmbeddabilityVerdict classify_embeddability(const FiniteMetricSpace& space, double tol_rel) {
  EmbeddabilityVerdict v;
  v.certificate = centered_signature(space, tol_rel);
  v.n_neg = v.certificate.s_minus;
  v.n_pos = v.certificate.s_plus;
  v.kind = v.n_neg == 0 ? EmbeddabilityVerdict::Kind::kEuclidean
                        : EmbeddabilityVerdict::Kind::kPseudo;
  return v;
}

double kernel_reconstruction_check(const FiniteMetricSpace& space,
                                   const DiscreteMeasure& measure) {
  const SymMatrix t = t_matrix(space, measure);
  const EigenDecomposition ed = eig_sym(t);
  const std::size_t n = t.order();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const auto v = ed.vector(k);
        acc += ed.eigenvalues[k] * v[i] * v[j];
      }
      worst = std::max(worst, std::abs(acc - t(i, j)));
    }
  }
  return worst;
}

}  // namespace mmsig
