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

#include "mmsig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "mmsig/error.hpp"

namespace mmsig {

SymMatrix::SymMatrix(std::size_t n, double fill) : n_(n), a_(n * n, fill) {}

SymMatrix SymMatrix::from_row_major(std::span<const double> values, std::size_t n) {
  if (values.size() != n * n) {
    throw Error(ErrorCode::kInvalidInput, "matrix buffer size does not match order");
  }
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = values[i * n + j];
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kInvalidInput, "non-finite matrix entry", {i, j});
      }
      if (v != values[j * n + i]) {
        throw Error(ErrorCode::kInvalidInput, "matrix is not symmetric", {i, j});
      }
      m.a_[i * n + j] = v;
    }
  }
  return m;
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.a_[i * m.n_ + i] = diag[i];
  return m;
}

SymMatrix SymMatrix::principal(std::span<const std::size_t> index) const {
  SymMatrix m(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    for (std::size_t j = 0; j < index.size(); ++j) {
      m.a_[i * m.n_ + j] = (*this)(index[i], index[j]);
    }
  }
  return m;
}

double SymMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool SymMatrix::all_finite() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

constexpr int kMaxQlIterations = 60;

// Householder reduction of the row-major symmetric matrix `z` (order n) to
// tridiagonal form: diagonal in d, subdiagonal in e[1..n-1]. Only the lower
// triangle is read. With `vectors`, z is overwritten by the orthogonal
// transform Q (columns) such that Q^T A Q is tridiagonal.
void tridiagonalize(std::vector<double>& z, std::size_t n, std::vector<double>& d,
                    std::vector<double>& e, bool vectors) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return z[i * n + j]; };

  for (std::size_t i = n; i-- > 1;) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k < i; ++k) scale += std::abs(at(i, k));
      if (scale == 0.0) {
        e[i] = at(i, l);
      } else {
        double* u = &at(i, 0);
        for (std::size_t k = 0; k < i; ++k) {
          u[k] /= scale;
          h += u[k] * u[k];
        }
        double f = u[l];
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        u[l] = f - g;

        // p = A u / h over the leading i x i block, lower triangle only,
        // traversed by rows.
        std::fill(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(i), 0.0);
        for (std::size_t j = 0; j < i; ++j) {
          const double* row = &at(j, 0);
          double acc = row[j] * u[j];
          const double uj = u[j];
          for (std::size_t k = 0; k < j; ++k) {
            acc += row[k] * u[k];
            e[k] += row[k] * uj;
          }
          e[j] += acc;
        }
        f = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
          if (vectors) at(j, i) = u[j] / h;
          e[j] /= h;
          f += e[j] * u[j];
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j < i; ++j) {
          const double fj = u[j];
          const double gj = e[j] - hh * fj;
          e[j] = gj;
          double* row = &at(j, 0);
          for (std::size_t k = 0; k <= j; ++k) row[k] -= fj * e[k] + gj * u[k];
        }
      }
    } else {
      e[i] = at(i, l);
    }
    d[i] = h;
  }

  if (!vectors) {
    for (std::size_t i = 0; i < n; ++i) d[i] = at(i, i);
    e[0] = 0.0;
    return;
  }

  d[0] = 0.0;
  e[0] = 0.0;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] != 0.0) {
      std::fill(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(i), 0.0);
      for (std::size_t k = 0; k < i; ++k) {
        const double zik = at(i, k);
        const double* row = &at(k, 0);
        for (std::size_t j = 0; j < i; ++j) g[j] += zik * row[j];
      }
      for (std::size_t k = 0; k < i; ++k) {
        const double zki = at(k, i);
        double* row = &at(k, 0);
        for (std::size_t j = 0; j < i; ++j) row[j] -= g[j] * zki;
      }
    }
    d[i] = at(i, i);
    at(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) at(j, i) = at(i, j) = 0.0;
  }
}

// Implicit-shift QL on the tridiagonal (d, e). When `rows` is non-null it
// holds n vectors stored as rows, rotated alongside so that row k ends up as
// the eigenvector of d[k].
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e,
                    std::vector<double>* rows) {
  const std::size_t n = d.size();
  if (n == 0) return;
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxQlIterations) {
          std::ostringstream msg;
          msg << "QL iteration did not converge (order " << n << ", residual "
              << std::abs(e[l]) << ")";
          throw Error(ErrorCode::kNoConvergence, msg.str());
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (rows != nullptr) {
            double* zi = rows->data() + i * n;
            double* zi1 = zi + n;
            for (std::size_t k = 0; k < n; ++k) {
              f = zi1[k];
              zi1[k] = s * zi[k] + c * f;
              zi[k] = c * zi[k] - s * f;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

void require_finite(const SymMatrix& a) {
  if (!a.all_finite()) {
    throw Error(ErrorCode::kInvalidInput, "matrix has non-finite entries");
  }
}

}  // namespace

EigenDecomposition eig_sym(const SymMatrix& a) {
  require_finite(a);
  const std::size_t n = a.order();
  EigenDecomposition out;
  if (n == 0) return out;

  std::vector<double> z(a.row_major().begin(), a.row_major().end());
  std::vector<double> d, e;
  tridiagonalize(z, n, d, e, true);

  // QL rotates pairs of columns of Q; work on the transpose so those are rows.
  std::vector<double> rows(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) rows[i * n + k] = z[k * n + i];
  tridiagonal_ql(d, e, &rows);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = d[order[k]];
    std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>(order[k] * n), n,
                out.eigenvectors.begin() + static_cast<std::ptrdiff_t>(k * n));
  }
  return out;
}

std::vector<double> eigenvalues_sym(const SymMatrix& a) {
  require_finite(a);
  const std::size_t n = a.order();
  if (n == 0) return {};
  std::vector<double> z(a.row_major().begin(), a.row_major().end());
  std::vector<double> d, e;
  tridiagonalize(z, n, d, e, false);
  tridiagonal_ql(d, e, nullptr);
  std::sort(d.begin(), d.end());
  return d;
}

Inertia inertia_from_eigenvalues(std::span<const double> eigenvalues, double tol_rel) {
  if (!(tol_rel >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "tol_rel must be nonnegative");
  }
  double max_abs = 0.0;
  for (double v : eigenvalues) max_abs = std::max(max_abs, std::abs(v));
  return inertia_with_threshold(eigenvalues, tol_rel * static_cast<double>(eigenvalues.size()) * max_abs);
}

Inertia inertia_with_threshold(std::span<const double> eigenvalues, double theta) {
  if (!(theta >= 0.0)) throw Error(ErrorCode::kInvalidInput, "threshold must be nonnegative");
  Inertia in;
  in.theta = theta;
  for (double v : eigenvalues) {
    if (v < -in.theta) {
      ++in.s_minus;
    } else if (v > in.theta) {
      ++in.s_plus;
    } else {
      ++in.s_zero;
    }
  }
  return in;
}

Inertia inertia(const SymMatrix& a, double tol_rel) {
  return inertia_from_eigenvalues(eigenvalues_sym(a), tol_rel);
}

namespace {

std::vector<std::size_t> complement_of(std::span<const std::size_t> block, std::size_t n) {
  std::vector<bool> in_block(n, false);
  for (std::size_t b : block) {
    if (b >= n) throw Error(ErrorCode::kInvalidInput, "block index out of range", {b});
    if (in_block[b]) throw Error(ErrorCode::kInvalidInput, "repeated block index", {b});
    in_block[b] = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!in_block[i]) rest.push_back(i);
  return rest;
}

}  // namespace

SymMatrix schur_complement(const SymMatrix& a, std::span<const std::size_t> block) {
  const std::size_t n = a.order();
  const std::vector<std::size_t> rest = complement_of(block, n);
  if (block.empty()) return a.principal(rest);

  const EigenDecomposition bd = eig_sym(a.principal(block));
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double v : bd.eigenvalues) {
    lo = std::min(lo, std::abs(v));
    hi = std::max(hi, std::abs(v));
  }
  if (hi == 0.0 || lo / hi < kMinBlockRcond) {
    std::ostringstream msg;
    msg << "Schur block is singular or ill-conditioned (rcond " << (hi == 0.0 ? 0.0 : lo / hi)
        << ")";
    throw Error(ErrorCode::kSingularBlock, msg.str());
  }

  // W = V^T A[block, rest] scaled by 1/lambda; then A/A_b = A_rr - C^T V diag(1/l) V^T C.
  const std::size_t b = block.size();
  const std::size_t r = rest.size();
  std::vector<double> proj(b * r, 0.0);  // proj[k, j] = v_k . A[block, rest_j]
  for (std::size_t k = 0; k < b; ++k) {
    const auto v = bd.vector(k);
    for (std::size_t j = 0; j < r; ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < b; ++t) acc += v[t] * a(block[t], rest[j]);
      proj[k * r + j] = acc;
    }
  }
  SymMatrix out(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < b; ++k) {
        acc += proj[k * r + i] * proj[k * r + j] / bd.eigenvalues[k];
      }
      out.set(i, j, a(rest[i], rest[j]) - acc);
    }
  }
  return out;
}

bool haynsworth_check(const SymMatrix& a, std::span<const std::size_t> block,
                      double tol_rel) {
  const SymMatrix schur = schur_complement(a, block);
  const Inertia whole = inertia(a, tol_rel);
  const Inertia head = inertia(a.principal(block), tol_rel);
  const Inertia tail = inertia(schur, tol_rel);
  return whole.s_minus == head.s_minus + tail.s_minus &&
         whole.s_zero == head.s_zero + tail.s_zero &&
         whole.s_plus == head.s_plus + tail.s_plus;
}

SymMatrix double_center(const SymMatrix& s) {
  const std::size_t n = s.order();
  SymMatrix out(n);
  if (n == 0) return out;
  std::vector<double> mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) mean[i] += s(i, j);
    grand += mean[i];
    mean[i] /= static_cast<double>(n);
  }
  grand /= static_cast<double>(n) * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      out.set(i, j, s(i, j) - mean[i] - mean[j] + grand);
    }
  }
  return out;
}

void validate_probability_weights(std::span<const double> w) {
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0) {
      throw Error(ErrorCode::kInvalidMeasure, "weights must be finite and nonnegative", {i});
    }
    total += w[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "weights must sum to 1 (sum is " << total << ")";
    throw Error(ErrorCode::kInvalidMeasure, msg.str());
  }
}

SymMatrix weighted_center_kernel(const SymMatrix& s, std::span<const double> w) {
  const std::size_t n = s.order();
  if (w.size() != n) {
    throw Error(ErrorCode::kInvalidMeasure, "weight vector length does not match order");
  }
  validate_probability_weights(w);
  std::vector<double> sw(n, 0.0);
  double wsw = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) sw[i] += s(i, j) * w[j];
    wsw += w[i] * sw[i];
  }
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) out.set(i, j, s(i, j) - sw[i] - sw[j] + wsw);
  }
  return out;
}

SymMatrix weighted_center(const SymMatrix& s, std::span<const double> w) {
  return weighted_congruence(weighted_center_kernel(s, w), w);
}

SymMatrix weighted_congruence(const SymMatrix& s, std::span<const double> w) {
  const std::size_t n = s.order();
  if (w.size() != n) {
    throw Error(ErrorCode::kInvalidMeasure, "weight vector length does not match order");
  }
  validate_probability_weights(w);
  std::vector<double> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(w[i]);
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) out.set(i, j, root[i] * s(i, j) * root[j]);
  }
  return out;
}

}  // namespace mmsig
