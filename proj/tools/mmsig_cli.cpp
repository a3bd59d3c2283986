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

// mmsig command-line tool. All numerical work goes through the C library.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmsig/mmsig.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitContract = 1;
constexpr int kExitInput = 2;

// Failure raised by a library call; carries the status for the exit code.
struct CallError {
  mmsig_status status;
  std::string message;
  std::vector<size_t> witness;
};

void check(mmsig_status s) {
  if (s == MMSIG_OK) return;
  CallError e{s, mmsig_last_error(), {}};
  e.witness.resize(mmsig_last_witness(nullptr, 0));
  mmsig_last_witness(e.witness.data(), e.witness.size());
  throw e;
}

int exit_code_for(mmsig_status s) {
  switch (s) {
    case MMSIG_NO_CONVERGENCE:
    case MMSIG_CONE_VIOLATION:
    case MMSIG_EPSILON_UNDERFLOW:
    case MMSIG_MONOTONICITY_VIOLATION:
    case MMSIG_INTERNAL:
      return kExitContract;
    default:
      return kExitInput;
  }
}

struct SpaceDeleter {
  void operator()(mmsig_space* p) const { mmsig_space_free(p); }
};
using SpacePtr = std::unique_ptr<mmsig_space, SpaceDeleter>;

struct CString {
  char* p = nullptr;
  ~CString() { mmsig_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Common {
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string format = "json";
  std::string output;
};

struct SpaceSource {
  std::string example;
  std::string input;
  std::size_t n = 0;
  std::size_t dim = 2;
  bool strict = false;
};

void add_common(CLI::App* app, Common& c, const std::string& default_format) {
  c.format = default_format;
  app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app->add_option("--tol", c.tol, "Relative zero tolerance for eigenvalues")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_option("--output", c.output, "Output file (default: standard output)");
}

void add_space_source(CLI::App* app, SpaceSource& s) {
  auto* ex = app->add_option("--example", s.example,
                             "Named example: tripod, tripod_extended, simplex, sphere, sphere_sqrt");
  auto* in = app->add_option("--input", s.input,
                             "Distance-matrix CSV (*.csv) or edge list (any other extension)");
  ex->excludes(in);
  app->add_option("--n", s.n, "Point count for named examples");
  app->add_option("--dim", s.dim, "Sphere dimension for the sphere examples")
      ->capture_default_str();
  app->add_flag("--strict", s.strict, "Require strict triangle inequalities");
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

SpacePtr load_space(const SpaceSource& src, std::uint64_t seed) {
  mmsig_space* raw = nullptr;
  if (!src.example.empty()) {
    check(mmsig_space_example(src.example.c_str(), src.n, src.dim, seed, &raw));
  } else if (!src.input.empty()) {
    if (ends_with(src.input, ".csv")) {
      check(mmsig_space_read_csv(src.input.c_str(), src.strict ? 1 : 0, &raw));
    } else {
      check(mmsig_space_read_edge_list(src.input.c_str(), &raw));
    }
  } else {
    throw CallError{MMSIG_INVALID_INPUT, "one of --example or --input is required", {}};
  }
  return SpacePtr(raw);
}

void emit(const Common& c, const std::string& content) {
  if (c.output.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out || !(out << content)) {
    throw CallError{MMSIG_IO_ERROR, "cannot write '" + c.output + "'", {}};
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json provenance_json(const Common& c) {
  return {{"seed", c.seed}, {"tol_rel", c.tol}, {"version", mmsig_version()}};
}

std::string provenance_comment(const Common& c) {
  return std::string("# mmsig ") + mmsig_version() + " seed=" + std::to_string(c.seed) +
         " tol_rel=" + fmt(c.tol) + "\n";
}

ordered_json inertia_json(const mmsig_inertia& in) {
  return {{"s_minus", in.s_minus}, {"s_zero", in.s_zero}, {"s_plus", in.s_plus},
          {"theta", in.theta}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

int run_analyze(const Common& c, const SpaceSource& src) {
  SpacePtr space = load_space(src, c.seed);
  mmsig_inertia s{}, t{};
  mmsig_verdict v{};
  check(mmsig_space_signature(space.get(), c.tol, &s));
  check(mmsig_centered_signature(space.get(), c.tol, &t));
  check(mmsig_classify(space.get(), c.tol, &v));
  CString verdict;
  check(mmsig_verdict_string(&v, &verdict.p));
  const std::size_t n = mmsig_space_size(space.get());
  if (c.format == "json") {
    ordered_json j{{"n", n},
                   {"inertia_S", inertia_json(s)},
                   {"inertia_T", inertia_json(t)},
                   {"verdict", verdict.str()},
                   {"theta", s.theta},
                   {"provenance", provenance_json(c)}};
    emit(c, dump(j));
  } else {
    std::ostringstream os;
    os << provenance_comment(c)
       << "n,s_minus_S,s_zero_S,s_plus_S,s_minus_T,s_zero_T,s_plus_T,verdict,theta_S,theta_T\n"
       << n << ',' << s.s_minus << ',' << s.s_zero << ',' << s.s_plus << ',' << t.s_minus << ','
       << t.s_zero << ',' << t.s_plus << ",\"" << verdict.str() << "\"," << fmt(s.theta) << ','
       << fmt(t.theta) << '\n';
    emit(c, os.str());
  }
  return kExitOk;
}

int run_embed(const Common& c, const SpaceSource& src) {
  SpacePtr space = load_space(src, c.seed);
  mmsig_embedding* e = nullptr;
  check(mmsig_embed(space.get(), c.tol, &e));
  std::unique_ptr<mmsig_embedding, void (*)(mmsig_embedding*)> holder(e, mmsig_embedding_free);
  double residual = 0.0;
  check(mmsig_verify_isometry(e, space.get(), c.tol, &residual));
  if (c.format == "json") {
    CString json;
    check(mmsig_embedding_to_json(e, c.seed, c.tol, &json.p));
    emit(c, json.str());
  } else {
    const std::size_t dim = mmsig_embedding_n_neg(e) + mmsig_embedding_n_pos(e);
    const double* x = mmsig_embedding_coords(e);
    std::ostringstream os;
    os << provenance_comment(c) << "# n_neg=" << mmsig_embedding_n_neg(e)
       << " n_pos=" << mmsig_embedding_n_pos(e) << '\n';
    for (std::size_t k = 0; k < dim; ++k) os << (k ? "," : "") << 'x' << k;
    os << '\n';
    for (std::size_t i = 0; i < mmsig_embedding_count(e); ++i) {
      for (std::size_t k = 0; k < dim; ++k) os << (k ? "," : "") << fmt(x[i * dim + k]);
      os << '\n';
    }
    emit(c, os.str());
  }
  const double diam = mmsig_space_diameter(space.get());
  // Keep stdout clean when it carries the embedding itself.
  std::ostream& report = c.output.empty() ? std::cerr : std::cout;
  report << "max_residual " << fmt(residual) << '\n';
  if (residual > 1e-6 * diam) {
    std::cerr << "error: isometry residual " << fmt(residual) << " exceeds 1e-6 * diameter\n";
    return kExitContract;
  }
  return kExitOk;
}

struct CliqueSpec {
  std::vector<std::uint64_t> members;
  std::uint64_t modulus = 0;
};

// "0,1,5", "mod:M" or "first:K".
CliqueSpec parse_clique(const std::string& text) {
  CliqueSpec spec;
  if (text.empty()) return spec;
  auto number = [&](const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) {
      throw CallError{MMSIG_BAD_PARAMS, "bad --clique value '" + text + "'", {}};
    }
    return static_cast<std::uint64_t>(v);
  };
  if (text.rfind("mod:", 0) == 0) {
    spec.modulus = number(text.substr(4));
  } else if (text.rfind("first:", 0) == 0) {
    const std::uint64_t k = number(text.substr(6));
    for (std::uint64_t v = 0; v < k; ++v) spec.members.push_back(v);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) spec.members.push_back(number(item));
  }
  return spec;
}

struct ModelDeleter {
  void operator()(mmsig_rado_model* p) const { mmsig_rado_model_free(p); }
};
using ModelPtr = std::unique_ptr<mmsig_rado_model, ModelDeleter>;

struct ModelSource {
  double p = 0.5;
  std::string clique;
  std::string model_file;
};

ModelPtr load_model(const ModelSource& src, std::uint64_t seed) {
  mmsig_rado_model* raw = nullptr;
  if (!src.model_file.empty()) {
    std::ifstream in(src.model_file);
    if (!in) throw CallError{MMSIG_IO_ERROR, "cannot open '" + src.model_file + "'", {}};
    std::stringstream ss;
    ss << in.rdbuf();
    check(mmsig_rado_model_from_json(ss.str().c_str(), &raw));
  } else {
    const CliqueSpec clique = parse_clique(src.clique);
    check(mmsig_rado_model_create(src.p, seed, clique.members.data(), clique.members.size(),
                                  clique.modulus, &raw));
  }
  return ModelPtr(raw);
}

struct TrajectoryArgs {
  std::string measure;
  std::size_t m_max = 0;
  std::size_t window = 25;
  bool rado = false;
  std::size_t big_n = 200;
  ModelSource model;
};

int run_trajectory(const Common& c, const SpaceSource& src, const TrajectoryArgs& a) {
  mmsig_trajectory* t = nullptr;
  if (a.rado) {
    ModelPtr model = load_model(a.model, c.seed);
    check(mmsig_trajectory_rado(model.get(), a.big_n, c.tol, a.window, &t));
  } else {
    SpacePtr space = load_space(src, c.seed);
    if (a.measure.empty()) {
      check(mmsig_trajectory_prefix(space.get(), c.tol, a.window, &t));
    } else {
      mmsig_measure* m = nullptr;
      check(mmsig_measure_parse(a.measure.c_str(), mmsig_space_size(space.get()), &m));
      std::unique_ptr<mmsig_measure, void (*)(mmsig_measure*)> holder(m, mmsig_measure_free);
      const std::size_t draws = a.m_max ? a.m_max : mmsig_space_size(space.get());
      check(mmsig_trajectory_sampled(space.get(), m, draws, c.seed, c.tol, a.window, &t));
    }
  }
  std::unique_ptr<mmsig_trajectory, void (*)(mmsig_trajectory*)> holder(t, mmsig_trajectory_free);
  if (c.format == "csv") {
    CString csv;
    check(mmsig_trajectory_to_csv(t, c.seed, c.tol, &csv.p));
    emit(c, csv.str());
    return kExitOk;
  }
  ordered_json rows = ordered_json::array();
  for (std::size_t k = 0; k < mmsig_trajectory_length(t); ++k) {
    std::size_t size = 0;
    mmsig_inertia in{};
    check(mmsig_trajectory_at(t, k, &size, &in));
    ordered_json row{{"size", size}};
    row.update(inertia_json(in));
    rows.push_back(std::move(row));
  }
  ordered_json j{{"window", a.window}, {"trajectory", std::move(rows)}};
  std::size_t sm = 0, sp = 0;
  if (mmsig_trajectory_stabilized(t, &sm, &sp)) {
    j["stabilized"] = {{"s_minus", sm}, {"s_plus", sp}};
  } else {
    j["stabilized"] = nullptr;
  }
  j["provenance"] = provenance_json(c);
  emit(c, dump(j));
  return kExitOk;
}

struct ConstructArgs {
  std::string kind;
  std::size_t n_neg = 1;
  std::size_t p = 2;
  double h = 0.0;
  std::vector<std::string> components;
};

int run_construct(const Common& c, const SpaceSource& src, const ConstructArgs& a) {
  mmsig_space* raw = nullptr;
  double epsilon = 0.0;
  if (a.kind == "prescribed") {
    check(mmsig_prescribed_signature_space(a.n_neg, a.p, c.seed, c.tol, &raw));
  } else if (a.kind == "perturb") {
    SpacePtr space = load_space(src, c.seed);
    check(mmsig_perturb_to_max_negative(space.get(), c.seed, c.tol, &epsilon, &raw));
  } else {
    std::vector<SpacePtr> parts;
    for (const auto& item : a.components) {
      SpaceSource part;
      part.strict = src.strict;
      // "name" or "name:n" for named examples, anything else is a file.
      const auto colon = item.find(':');
      const std::string head = item.substr(0, colon);
      if (head == "tripod" || head == "tripod_extended" || head == "simplex" ||
          head == "sphere" || head == "sphere_sqrt") {
        part.example = head;
        if (colon != std::string::npos) part.n = std::stoul(item.substr(colon + 1));
      } else {
        part.input = item;
      }
      parts.push_back(load_space(part, c.seed));
    }
    std::vector<const mmsig_space*> ptrs;
    for (const auto& p : parts) ptrs.push_back(p.get());
    check(mmsig_union_space(ptrs.data(), ptrs.size(), a.h, &raw));
  }
  SpacePtr result(raw);
  CString csv;
  check(mmsig_space_to_csv(result.get(), c.seed, c.tol, &csv.p));
  emit(c, csv.str());
  if (a.kind == "perturb") std::cerr << "epsilon " << fmt(epsilon) << '\n';
  return kExitOk;
}

struct RadoArgs {
  ModelSource model;
  std::size_t big_n = 1000;
  bool ratio = false;
  std::string measure = "geometric:0.9";
  std::size_t m_max = 2000;
  std::size_t trials = 1;
  std::string summary;
  std::string edges;
  std::optional<double> threshold;
  double min_fraction = 0.0;
};

int run_rado(const Common& c, const RadoArgs& a) {
  ModelPtr model = load_model(a.model, c.seed);
  if (!a.edges.empty()) {
    CString el;
    check(mmsig_rado_edge_list(model.get(), a.big_n, &el.p));
    Common to_file = c;
    to_file.output = a.edges;
    emit(to_file, el.str());
  }
  if (!a.ratio) {
    mmsig_rado_spectrum* s = nullptr;
    check(mmsig_rado_spectrum_compute(model.get(), a.big_n, c.tol, &s));
    std::unique_ptr<mmsig_rado_spectrum, void (*)(mmsig_rado_spectrum*)> holder(
        s, mmsig_rado_spectrum_free);
    mmsig_rado_stats st{};
    mmsig_rado_spectrum_stats(s, &st);
    if (!c.output.empty()) {
      CString csv;
      check(mmsig_rado_spectrum_esd_csv(s, c.seed, c.tol, &csv.p));
      emit(c, csv.str());
    }
    ordered_json j{{"n", st.n},
                   {"sigma", st.sigma},
                   {"ks", st.ks},
                   {"delta", st.delta},
                   {"inertia", inertia_json(st.inertia)},
                   {"consistent", st.consistent != 0},
                   {"provenance", provenance_json(c)}};
    std::cout << dump(j);
    return kExitOk;
  }

  mmsig_measure* m = nullptr;
  check(mmsig_measure_parse(a.measure.c_str(), 0, &m));
  std::unique_ptr<mmsig_measure, void (*)(mmsig_measure*)> mholder(m, mmsig_measure_free);
  mmsig_ratio_result* r = nullptr;
  check(mmsig_ratio_experiment(model.get(), m, a.m_max, a.trials, c.seed, c.tol, 0, &r));
  std::unique_ptr<mmsig_ratio_result, void (*)(mmsig_ratio_result*)> rholder(
      r, mmsig_ratio_result_free);
  if (!c.output.empty()) {
    CString csv;
    check(mmsig_ratio_to_csv(r, c.seed, c.tol, &csv.p));
    emit(c, csv.str());
  }
  mmsig_ratio_summary sum{};
  mmsig_ratio_summarize(r, &sum);
  // +inf (no negative eigenvalue) has no JSON number; spell it out.
  auto num = [](double v) -> ordered_json {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  CString model_json;
  check(mmsig_rado_model_to_json(model.get(), &model_json.p));
  ordered_json j{{"trials", sum.trials},
                 {"m", sum.m},
                 {"measure", a.measure},
                 {"model", ordered_json::parse(model_json.str())},
                 {"final_delta",
                  {{"min", num(sum.min)},
                   {"q05", num(sum.q05)},
                   {"q25", num(sum.q25)},
                   {"median", num(sum.median)},
                   {"q75", num(sum.q75)},
                   {"q95", num(sum.q95)},
                   {"max", num(sum.max)}}}};
  int code = kExitOk;
  if (a.threshold) {
    std::size_t hits = 0;
    for (std::size_t t = 0; t < mmsig_ratio_trials(r); ++t) {
      if (mmsig_ratio_final_delta(r, t) >= *a.threshold) ++hits;
    }
    const double fraction = sum.trials ? static_cast<double>(hits) / sum.trials : 0.0;
    const bool pass = fraction >= a.min_fraction;
    j["criterion"] = {{"delta_at_least", *a.threshold},
                      {"fraction", fraction},
                      {"min_fraction", a.min_fraction},
                      {"pass", pass}};
    if (!pass) code = kExitContract;
  }
  j["provenance"] = provenance_json(c);
  if (!a.summary.empty()) {
    Common to_file = c;
    to_file.output = a.summary;
    emit(to_file, dump(j));
  }
  std::cout << dump(j);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance signatures of metric measure spaces"};
  app.set_version_flag("--version", std::string(mmsig_version()));
  app.require_subcommand(1);

  Common analyze_c, embed_c, traj_c, construct_c, rado_c;
  SpaceSource analyze_s, embed_s, traj_s, construct_s;
  TrajectoryArgs traj_a;
  ConstructArgs construct_a;
  RadoArgs rado_a;

  auto* analyze = app.add_subcommand("analyze", "Signatures and embeddability verdict");
  add_common(analyze, analyze_c, "json");
  add_space_source(analyze, analyze_s);

  auto* embed = app.add_subcommand("embed", "Pseudo-Euclidean MDS embedding");
  add_common(embed, embed_c, "json");
  add_space_source(embed, embed_s);

  auto* traj = app.add_subcommand("trajectory", "Signatures of growing prefixes or samples");
  add_common(traj, traj_c, "csv");
  add_space_source(traj, traj_s);
  traj->add_option("--measure", traj_a.measure, "Sample i.i.d. points from this measure");
  traj->add_option("--m-max", traj_a.m_max, "Number of draws (default: point count)");
  traj->add_option("--window", traj_a.window, "Plateau window")->capture_default_str();
  traj->add_flag("--rado", traj_a.rado, "Use vertex prefixes of a Rado model instead");
  traj->add_option("--N", traj_a.big_n, "Rado prefix length")->capture_default_str();
  traj->add_option("--p", traj_a.model.p, "Rado edge probability")->capture_default_str();
  traj->add_option("--clique", traj_a.model.clique, "Planted clique: 0,1,5 | mod:M | first:K");
  traj->add_option("--model", traj_a.model.model_file, "Rado model JSON");

  auto* construct = app.add_subcommand("construct", "Spaces with prescribed signatures");
  add_common(construct, construct_c, "csv");
  construct_c.format = "csv";
  add_space_source(construct, construct_s);
  construct->add_option("kind", construct_a.kind, "prescribed | perturb | union")
      ->required()
      ->check(CLI::IsMember({"prescribed", "perturb", "union"}));
  construct->add_option("--n-neg", construct_a.n_neg, "Negative index for prescribed")
      ->capture_default_str();
  construct->add_option("--p", construct_a.p, "Positive index for prescribed")
      ->capture_default_str();
  construct->add_option("--cross-distance", construct_a.h, "Cross-component distance for union");
  construct->add_option("--component", construct_a.components,
                        "Union component: example name (optionally name:n) or CSV path");

  auto* rado = app.add_subcommand("rado", "Rado graph spectra and signature ratios");
  add_common(rado, rado_c, "csv");
  rado->add_option("--p", rado_a.model.p, "Edge probability")->capture_default_str();
  rado->add_option("--N", rado_a.big_n, "Vertex count for the spectrum")->capture_default_str();
  rado->add_option("--clique", rado_a.model.clique, "Planted clique: 0,1,5 | mod:M | first:K");
  rado->add_option("--input", rado_a.model.model_file, "Rado model JSON");
  rado->add_flag("--ratio", rado_a.ratio, "Run the signature-ratio experiment");
  rado->add_option("--measure", rado_a.measure, "Sampling measure")->capture_default_str();
  rado->add_option("--m-max", rado_a.m_max, "Draws per trial")->capture_default_str();
  rado->add_option("--trials", rado_a.trials, "Number of trials")->capture_default_str();
  rado->add_option("--summary", rado_a.summary, "Also write the summary JSON here");
  rado->add_option("--edges", rado_a.edges, "Write the first N vertices as an edge list");
  rado->add_option("--threshold", rado_a.threshold, "Report the fraction with final delta >= X");
  rado->add_option("--min-fraction", rado_a.min_fraction,
                   "Exit 1 unless that fraction reaches this value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) return run_analyze(analyze_c, analyze_s);
    if (*embed) return run_embed(embed_c, embed_s);
    if (*traj) return run_trajectory(traj_c, traj_s, traj_a);
    if (*construct) return run_construct(construct_c, construct_s, construct_a);
    if (*rado) return run_rado(rado_c, rado_a);
  } catch (const CallError& e) {
    std::cerr << "error: " << mmsig_status_name(e.status) << ": " << e.message << '\n';
    if (!e.witness.empty()) {
      std::cerr << "witness:";
      for (std::size_t w : e.witness) std::cerr << ' ' << w;
      std::cerr << '\n';
    }
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
