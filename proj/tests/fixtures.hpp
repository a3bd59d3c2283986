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

// Matrices and spaces written out by hand, independent of the named examples.
#pragma once

#include <cstddef>
#include <vector>

#include "mmsig/linalg.hpp"

namespace fixtures {

// Squared distances of the extended tripod on N points: the first three are
// leaves, the fourth is their common neighbour, the rest are at distance 2
// from everything.
inline mmsig::SymMatrix b_matrix(std::size_t n) {
  mmsig::SymMatrix b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) b.set(i, j, (i < 3 && j == 3) ? 1.0 : 4.0);
  return b;
}

inline std::vector<double> b_distances(std::size_t n) {
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) d[i * n + j] = ((i < 3 && j == 3) || (j < 3 && i == 3)) ? 1.0 : 2.0;
  return d;
}

inline const std::vector<double>& unit_square() {
  static const std::vector<double> pts = {0, 0, 1, 0, 1, 1, 0, 1};
  return pts;
}

inline std::vector<std::size_t> iota(std::size_t n, std::size_t first = 0) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = first + i;
  return v;
}

}  // namespace fixtures
