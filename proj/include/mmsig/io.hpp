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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "mmsig/constructions.hpp"
#include "mmsig/sampling.hpp"
#include "mmsig/signature.hpp"
#include "mmsig/spaces.hpp"
#include "mmsig/spectral.hpp"

namespace mmsig {

inline constexpr const char* kVersion = "0.1.0";

/// Echoed into every artifact the tools write.
struct Provenance {
  std::uint64_t seed = 0;
  double tol_rel = kDefaultTolRel;
  std::string version = kVersion;
};

/// "%.17g": round-trips every double.
std::string format_double(double v);

// Distance-matrix CSV: a header row of labels, then n rows of n numbers.
// Lines starting with '#' are comments. Parse failures carry the line number.
FiniteMetricSpace read_distance_csv(std::istream& in, const ValidationOptions& options = {});
FiniteMetricSpace read_distance_csv_file(const std::string& path,
                                         const ValidationOptions& options = {});
void write_distance_csv(const FiniteMetricSpace& space, std::ostream& out,
                        const Provenance* provenance = nullptr);

// Edge list: one "u v" pair per line, 0-based. "# vertices N" fixes the
// vertex count (otherwise max index + 1); other '#' lines are comments.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);

/// Accepts a JSON array of weights, a JSON object
/// {"type": "uniform" | "geometric" (q) | "super_geometric" | "class_biased" (j, q)},
/// or the short forms "uniform", "geometric:Q", "super_geometric",
/// "class_biased:J:Q". `n` is required for uniform.
DiscreteMeasure parse_measure(std::string_view text, std::optional<std::size_t> n = {});
std::string measure_to_json(const DiscreteMeasure& measure);

/// {"p": P, "seed": S, "planted_clique": [...], "clique_modulus": M}
CountableRadoModel parse_model_json(std::string_view text);
std::string model_to_json(const CountableRadoModel& model);

/// {"n_neg", "n_pos", "points": [[...]], "provenance": {...}}
std::string embedding_to_json(const PseudoEuclideanPointSet& ps, const Provenance& provenance);
PseudoEuclideanPointSet embedding_from_json(std::string_view text);

/// size,s_minus,s_zero,s_plus,theta
std::string trajectory_to_csv(const SignatureTrajectory& t, const Provenance& provenance);

/// trial,m,s_minus,s_zero,s_plus,delta
std::string ratio_to_csv(std::span<const RatioTrajectory> trials, const Provenance& provenance);

/// index,value
std::string esd_to_csv(const Esd& e, const Provenance& provenance);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace mmsig
