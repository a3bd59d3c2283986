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

#include "mmsig/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mmsig/error.hpp"

namespace mmsig {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& field, std::size_t line) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) parse_error(line, "not a number: '" + field + "'");
  return v;
}

bool is_comment_or_blank(const std::string& line) {
  const std::string t = trim(line);
  return t.empty() || t.front() == '#';
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return in;
}

std::string provenance_comment(const Provenance& p) {
  return "# mmsig " + p.version + " seed=" + std::to_string(p.seed) +
         " tol_rel=" + format_double(p.tol_rel) + "\n";
}

json provenance_json(const Provenance& p) {
  return json{{"seed", p.seed}, {"tol_rel", p.tol_rel}, {"version", p.version}};
}

}  // namespace

FiniteMetricSpace read_distance_csv(std::istream& in, const ValidationOptions& options) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> labels;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    labels = split(line, ',');
    break;
  }
  if (labels.empty()) throw Error(ErrorCode::kParse, "empty distance CSV");
  const std::size_t n = labels.size();
  std::vector<double> d;
  d.reserve(n * n);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    const auto fields = split(line, ',');
    if (fields.size() != n) {
      parse_error(lineno, "expected " + std::to_string(n) + " values, found " +
                              std::to_string(fields.size()));
    }
    if (rows == n) parse_error(lineno, "more rows than labels");
    for (const auto& f : fields) d.push_back(parse_number(f, lineno));
    ++rows;
  }
  if (rows != n) {
    throw Error(ErrorCode::kParse, "expected " + std::to_string(n) + " rows, found " +
                                       std::to_string(rows));
  }
  return from_distance_matrix(d, n, options, std::move(labels));
}

FiniteMetricSpace read_distance_csv_file(const std::string& path,
                                         const ValidationOptions& options) {
  std::ifstream in = open_input(path);
  return read_distance_csv(in, options);
}

void write_distance_csv(const FiniteMetricSpace& space, std::ostream& out,
                        const Provenance* provenance) {
  if (provenance != nullptr) out << provenance_comment(*provenance);
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& label = space.labels()[i];
    if (label.find_first_of(",\n#") != std::string::npos) {
      throw Error(ErrorCode::kInvalidInput, "label '" + label + "' cannot be written to CSV");
    }
    out << (i ? "," : "") << label;
  }
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? "," : "") << format_double(space.distance(i, j));
    out << '\n';
  }
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> declared;
  std::size_t max_vertex = 0;
  bool any = false;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      std::istringstream is(t.substr(1));
      std::string key;
      std::size_t count = 0;
      if (is >> key && key == "vertices" && is >> count) declared = count;
      continue;
    }
    std::istringstream is(t);
    long long u = -1, v = -1;
    std::string extra;
    if (!(is >> u >> v) || (is >> extra)) parse_error(lineno, "expected 'u v'");
    if (u < 0 || v < 0) parse_error(lineno, "vertex indices must be nonnegative");
    edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    max_vertex = std::max({max_vertex, edges.back().first, edges.back().second});
    any = true;
  }
  const std::size_t n = declared.value_or(any ? max_vertex + 1 : 0);
  return Graph(n, std::move(edges));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# vertices " << g.vertex_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

namespace {

DiscreteMeasure measure_from_json(const json& j, std::optional<std::size_t> n) {
  if (j.is_array()) {
    std::vector<double> w;
    for (const auto& x : j) {
      if (!x.is_number()) throw Error(ErrorCode::kInvalidMeasure, "weights must be numbers");
      w.push_back(x.get<double>());
    }
    return DiscreteMeasure(std::move(w));
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw Error(ErrorCode::kInvalidMeasure, "measure must be an array or an object with a type");
  }
  const std::string type = j["type"].get<std::string>();
  auto number = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
      throw Error(ErrorCode::kInvalidMeasure, "measure '" + type + "' needs numeric '" + key + "'");
    }
    return j[key].get<double>();
  };
  if (type == "uniform") {
    if (j.contains("n")) return DiscreteMeasure::uniform(j["n"].get<std::size_t>());
    if (!n) throw Error(ErrorCode::kInvalidMeasure, "uniform measure needs a point count");
    return DiscreteMeasure::uniform(*n);
  }
  if (type == "geometric") return DiscreteMeasure::geometric(number("q"));
  if (type == "super_geometric") return DiscreteMeasure::super_geometric();
  if (type == "class_biased") {
    const double classes = number("j");
    if (classes < 1 || classes != std::floor(classes)) {
      throw Error(ErrorCode::kInvalidMeasure, "class_biased j must be a positive integer");
    }
    return DiscreteMeasure::class_biased(static_cast<std::size_t>(classes), number("q"));
  }
  throw Error(ErrorCode::kInvalidMeasure, "unknown measure type '" + type + "'");
}

}  // namespace

DiscreteMeasure parse_measure(std::string_view text, std::optional<std::size_t> n) {
  const std::string t = trim(text);
  if (t.empty()) throw Error(ErrorCode::kInvalidMeasure, "empty measure specification");
  if (t.front() == '[' || t.front() == '{') {
    json j;
    try {
      j = json::parse(t);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kParse, std::string("measure JSON: ") + e.what());
    }
    try {
      return measure_from_json(j, n);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInvalidMeasure, std::string("measure JSON: ") + e.what());
    }
  }
  const auto parts = split(t, ':');
  json j{{"type", parts[0]}};
  auto num = [&](std::size_t k) {
    if (parts.size() <= k) {
      throw Error(ErrorCode::kInvalidMeasure, "measure '" + parts[0] + "' is missing a parameter");
    }
    return parse_number(parts[k], 1);
  };
  try {
    if (parts[0] == "geometric") j["q"] = num(1);
    if (parts[0] == "class_biased") {
      j["j"] = num(1);
      j["q"] = num(2);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw Error(ErrorCode::kInvalidMeasure, e.what());
    throw;
  }
  return measure_from_json(j, n);
}

std::string measure_to_json(const DiscreteMeasure& m) {
  json j;
  switch (m.kind()) {
    case DiscreteMeasure::Kind::kFinite: j = m.weights(); break;
    case DiscreteMeasure::Kind::kGeometric: j = {{"type", "geometric"}, {"q", m.q()}}; break;
    case DiscreteMeasure::Kind::kSuperGeometric: j = {{"type", "super_geometric"}}; break;
    case DiscreteMeasure::Kind::kClassBiased:
      j = {{"type", "class_biased"}, {"j", m.classes()}, {"q", m.q()}};
      break;
  }
  return j.dump();
}

CountableRadoModel parse_model_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("model JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("p") || !j["p"].is_number()) {
    throw Error(ErrorCode::kBadParams, "model JSON needs a numeric 'p'");
  }
  std::uint64_t seed = 0;
  PlantedClique clique;
  try {
    if (j.contains("seed") && !j["seed"].is_number_unsigned()) {
      throw Error(ErrorCode::kParse, "model seed must be a nonnegative integer");
    }
    seed = j.value("seed", std::uint64_t{0});
    if (j.contains("planted_clique")) {
      for (const auto& v : j["planted_clique"])
        if (!v.is_number_unsigned()) throw Error(ErrorCode::kParse, "clique members must be vertex ids");
      clique = PlantedClique::from_members(j["planted_clique"].get<std::vector<std::uint64_t>>());
    }
    if (j.contains("clique_modulus") && !j["clique_modulus"].is_number_unsigned()) {
      throw Error(ErrorCode::kParse, "clique_modulus must be a nonnegative integer");
    }
    clique.modulus = j.value("clique_modulus", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("model JSON: ") + e.what());
  }
  return CountableRadoModel(j["p"].get<double>(), seed, std::move(clique));
}

std::string model_to_json(const CountableRadoModel& model) {
  json j{{"p", model.p()}, {"seed", model.seed()}, {"planted_clique", model.clique().members}};
  if (model.clique().modulus > 0) j["clique_modulus"] = model.clique().modulus;
  return j.dump();
}

std::string embedding_to_json(const PseudoEuclideanPointSet& ps, const Provenance& provenance) {
  json points = json::array();
  for (std::size_t i = 0; i < ps.count; ++i) {
    const auto p = ps.point(i);
    points.push_back(std::vector<double>(p.begin(), p.end()));
  }
  json j{{"n_neg", ps.n_neg},
         {"n_pos", ps.n_pos},
         {"points", std::move(points)},
         {"provenance", provenance_json(provenance)}};
  return j.dump(2) + "\n";
}

PseudoEuclideanPointSet embedding_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("embedding JSON: ") + e.what());
  }
  PseudoEuclideanPointSet ps;
  try {
    ps.n_neg = j.at("n_neg").get<std::size_t>();
    ps.n_pos = j.at("n_pos").get<std::size_t>();
    for (const auto& p : j.at("points")) {
      if (p.size() != ps.dim()) {
        throw Error(ErrorCode::kParse, "embedding point has the wrong number of coordinates");
      }
      for (const auto& x : p) ps.coords.push_back(x.get<double>());
      ++ps.count;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("embedding JSON: ") + e.what());
  }
  return ps;
}

std::string trajectory_to_csv(const SignatureTrajectory& t, const Provenance& provenance) {
  std::ostringstream os;
  os << provenance_comment(provenance);
  os << "size,s_minus,s_zero,s_plus,theta\n";
  for (std::size_t k = 0; k < t.sizes.size(); ++k) {
    const Inertia& in = t.inertias[k];
    os << t.sizes[k] << ',' << in.s_minus << ',' << in.s_zero << ',' << in.s_plus << ','
       << format_double(in.theta) << '\n';
  }
  return os.str();
}

std::string ratio_to_csv(std::span<const RatioTrajectory> trials, const Provenance& provenance) {
  std::ostringstream os;
  os << provenance_comment(provenance);
  os << "trial,m,s_minus,s_zero,s_plus,delta\n";
  for (std::size_t t = 0; t < trials.size(); ++t) {
    const RatioTrajectory& r = trials[t];
    for (std::size_t k = 0; k < r.m.size(); ++k) {
      const Inertia& in = r.inertias[k];
      os << t << ',' << r.m[k] << ',' << in.s_minus << ',' << in.s_zero << ',' << in.s_plus
         << ',' << format_double(r.delta[k]) << '\n';
    }
  }
  return os.str();
}

std::string esd_to_csv(const Esd& e, const Provenance& provenance) {
  std::ostringstream os;
  os << provenance_comment(provenance);
  os << "index,value\n";
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    os << i << ',' << format_double(e.values[i]) << '\n';
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

}  // namespace mmsig
