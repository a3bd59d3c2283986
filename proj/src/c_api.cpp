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

#include "mmsig/mmsig.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mmsig/constructions.hpp"
#include "mmsig/error.hpp"
#include "mmsig/io.hpp"
#include "mmsig/linalg.hpp"
#include "mmsig/sampling.hpp"
#include "mmsig/signature.hpp"
#include "mmsig/spaces.hpp"
#include "mmsig/spectral.hpp"

struct mmsig_space {
  mmsig::FiniteMetricSpace value;
};
struct mmsig_embedding {
  mmsig::PseudoEuclideanPointSet value;
};
struct mmsig_measure {
  mmsig::DiscreteMeasure value;
};
struct mmsig_trajectory {
  mmsig::SignatureTrajectory value;
};
struct mmsig_rado_model {
  mmsig::CountableRadoModel value;
};
struct mmsig_rado_spectrum {
  mmsig::RadoSpectrum value;
  double sigma;
};
struct mmsig_ratio_result {
  std::vector<mmsig::RatioTrajectory> value;
};

namespace {

thread_local std::string g_last_error;
thread_local std::vector<std::size_t> g_last_witness;

void clear_error() {
  g_last_error.clear();
  g_last_witness.clear();
}

template <typename F>
mmsig_status guarded(F&& f) {
  clear_error();
  try {
    f();
    return MMSIG_OK;
  } catch (const mmsig::Error& e) {
    g_last_error = e.what();
    g_last_witness = e.witness();
    return static_cast<mmsig_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return MMSIG_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw mmsig::Error(mmsig::ErrorCode::kInvalidInput, what);
}

mmsig_inertia to_c(const mmsig::Inertia& in) {
  return {in.s_minus, in.s_zero, in.s_plus, in.theta};
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

mmsig::Provenance provenance(std::uint64_t seed, double tol_rel) {
  mmsig::Provenance p;
  p.seed = seed;
  p.tol_rel = tol_rel;
  return p;
}

std::size_t default_threads() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MMS_SIG_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<std::size_t>(n, cap);
  }
  return n;
}

}  // namespace

extern "C" {

const char* mmsig_version(void) { return mmsig::kVersion; }

const char* mmsig_status_name(mmsig_status status) {
  if (status == MMSIG_OK) return "Ok";
  if (status == MMSIG_INTERNAL) return "Internal";
  return mmsig::error_code_name(static_cast<mmsig::ErrorCode>(status));
}

const char* mmsig_last_error(void) { return g_last_error.c_str(); }

size_t mmsig_last_witness(size_t* out, size_t cap) {
  for (std::size_t i = 0; i < cap && i < g_last_witness.size(); ++i) out[i] = g_last_witness[i];
  return g_last_witness.size();
}

void mmsig_string_free(char* s) { std::free(s); }

mmsig_status mmsig_inertia_of(const double* a, size_t n, double tol_rel, mmsig_inertia* out) {
  return guarded([&] {
    require(out != nullptr && (a != nullptr || n == 0), "null argument");
    const auto m = mmsig::SymMatrix::from_row_major(std::span(a, n * n), n);
    *out = to_c(mmsig::inertia(m, tol_rel));
  });
}

mmsig_status mmsig_space_from_distances(const double* dist, size_t n, int strict,
                                        mmsig_space** out) {
  return guarded([&] {
    require(out != nullptr && (dist != nullptr || n == 0), "null argument");
    mmsig::ValidationOptions opts;
    opts.strict = strict != 0;
    *out = new mmsig_space{mmsig::from_distance_matrix(std::span(dist, n * n), n, opts)};
  });
}

mmsig_status mmsig_space_from_points(const double* coords, size_t count, size_t dim,
                                     mmsig_space** out) {
  return guarded([&] {
    require(out != nullptr && (coords != nullptr || count * dim == 0), "null argument");
    *out = new mmsig_space{
        mmsig::from_euclidean_points(std::span(coords, count * dim), count, dim)};
  });
}

mmsig_status mmsig_space_read_csv(const char* path, int strict, mmsig_space** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    mmsig::ValidationOptions opts;
    opts.strict = strict != 0;
    *out = new mmsig_space{mmsig::read_distance_csv_file(path, opts)};
  });
}

mmsig_status mmsig_space_read_edge_list(const char* path, mmsig_space** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new mmsig_space{mmsig::from_graph(mmsig::read_edge_list_file(path))};
  });
}

mmsig_status mmsig_space_example(const char* name, size_t n, size_t dim, uint64_t seed,
                                 mmsig_space** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    mmsig::ExampleParams params;
    params.n = n;
    params.dim = dim;
    params.seed = seed;
    *out = new mmsig_space{mmsig::named_example(name, params)};
  });
}

void mmsig_space_free(mmsig_space* space) { delete space; }

size_t mmsig_space_size(const mmsig_space* space) { return space ? space->value.size() : 0; }

double mmsig_space_distance(const mmsig_space* space, size_t i, size_t j) {
  return space->value.distance(i, j);
}

double mmsig_space_diameter(const mmsig_space* space) { return space->value.diameter(); }

mmsig_status mmsig_space_to_csv(const mmsig_space* space, uint64_t seed, double tol_rel,
                                char** out) {
  return guarded([&] {
    require(space != nullptr && out != nullptr, "null argument");
    std::ostringstream os;
    const auto prov = provenance(seed, tol_rel);
    mmsig::write_distance_csv(space->value, os, &prov);
    *out = dup_string(os.str());
  });
}

mmsig_status mmsig_space_signature(const mmsig_space* space, double tol_rel,
                                   mmsig_inertia* out) {
  return guarded([&] {
    require(space != nullptr && out != nullptr, "null argument");
    *out = to_c(mmsig::space_signature(space->value, tol_rel));
  });
}

mmsig_status mmsig_centered_signature(const mmsig_space* space, double tol_rel,
                                      mmsig_inertia* out) {
  return guarded([&] {
    require(space != nullptr && out != nullptr, "null argument");
    *out = to_c(mmsig::centered_signature(space->value, tol_rel));
  });
}

mmsig_status mmsig_classify(const mmsig_space* space, double tol_rel, mmsig_verdict* out) {
  return guarded([&] {
    require(space != nullptr && out != nullptr, "null argument");
    const auto v = mmsig::classify_embeddability(space->value, tol_rel);
    out->kind = static_cast<mmsig_verdict_kind>(static_cast<int>(v.kind));
    out->n_neg = v.n_neg;
    out->n_pos = v.n_pos;
    out->certificate = to_c(v.certificate);
  });
}

mmsig_status mmsig_verdict_string(const mmsig_verdict* verdict, char** out) {
  return guarded([&] {
    require(verdict != nullptr && out != nullptr, "null argument");
    mmsig::EmbeddabilityVerdict v;
    v.kind = static_cast<mmsig::EmbeddabilityVerdict::Kind>(static_cast<int>(verdict->kind));
    v.n_neg = verdict->n_neg;
    v.n_pos = verdict->n_pos;
    *out = dup_string(v.to_string());
  });
}

mmsig_status mmsig_embed(const mmsig_space* space, double tol_rel, mmsig_embedding** out) {
  return guarded([&] {
    require(space != nullptr && out != nullptr, "null argument");
    *out = new mmsig_embedding{mmsig::mds_embed(space->value, tol_rel)};
  });
}

void mmsig_embedding_free(mmsig_embedding* e) { delete e; }
size_t mmsig_embedding_n_neg(const mmsig_embedding* e) { return e->value.n_neg; }
size_t mmsig_embedding_n_pos(const mmsig_embedding* e) { return e->value.n_pos; }
size_t mmsig_embedding_count(const mmsig_embedding* e) { return e->value.count; }
const double* mmsig_embedding_coords(const mmsig_embedding* e) {
  return e->value.coords.data();
}

mmsig_status mmsig_verify_isometry(const mmsig_embedding* e, const mmsig_space* space,
                                   double tol_rel, double* max_residual) {
  return guarded([&] {
    require(e != nullptr && space != nullptr && max_residual != nullptr, "null argument");
    *max_residual = mmsig::verify_isometry(e->value, space->value, tol_rel);
  });
}

mmsig_status mmsig_embedding_to_json(const mmsig_embedding* e, uint64_t seed, double tol_rel,
                                     char** out) {
  return guarded([&] {
    require(e != nullptr && out != nullptr, "null argument");
    *out = dup_string(mmsig::embedding_to_json(e->value, provenance(seed, tol_rel)));
  });
}

mmsig_status mmsig_measure_parse(const char* text, size_t n, mmsig_measure** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    std::optional<std::size_t> size;
    if (n > 0) size = n;
    *out = new mmsig_measure{mmsig::parse_measure(text, size)};
  });
}

void mmsig_measure_free(mmsig_measure* m) { delete m; }

mmsig_status mmsig_trajectory_prefix(const mmsig_space* space, double tol_rel, size_t window,
                                     mmsig_trajectory** out) {
  return guarded([&] {
    require(space != nullptr && out != nullptr, "null argument");
    mmsig::TrajectoryOptions opts;
    opts.tol_rel = tol_rel;
    opts.window = window;
    *out = new mmsig_trajectory{mmsig::limit_signature_trajectory(space->value, {}, opts)};
  });
}

mmsig_status mmsig_trajectory_sampled(const mmsig_space* space, const mmsig_measure* measure,
                                      size_t m, uint64_t seed, double tol_rel, size_t window,
                                      mmsig_trajectory** out) {
  return guarded([&] {
    require(space != nullptr && measure != nullptr && out != nullptr, "null argument");
    mmsig::TrajectoryOptions opts;
    opts.tol_rel = tol_rel;
    opts.window = window;
    *out = new mmsig_trajectory{
        mmsig::limit_signature_trajectory(space->value, measure->value, m, seed, opts)};
  });
}

mmsig_status mmsig_trajectory_rado(const mmsig_rado_model* model, size_t n, double tol_rel,
                                   size_t window, mmsig_trajectory** out) {
  return guarded([&] {
    require(model != nullptr && out != nullptr, "null argument");
    mmsig::TrajectoryOptions opts;
    opts.tol_rel = tol_rel;
    opts.window = window;
    std::vector<std::uint64_t> seq(n);
    for (std::size_t i = 0; i < n; ++i) seq[i] = i;
    const mmsig::CountableRadoModel& g = model->value;
    *out = new mmsig_trajectory{mmsig::limit_signature_trajectory(
        [&g](std::uint64_t u, std::uint64_t v) { return g.distance(u, v); }, seq, opts)};
  });
}

void mmsig_trajectory_free(mmsig_trajectory* t) { delete t; }

size_t mmsig_trajectory_length(const mmsig_trajectory* t) { return t->value.sizes.size(); }

mmsig_status mmsig_trajectory_at(const mmsig_trajectory* t, size_t k, size_t* size,
                                 mmsig_inertia* inertia) {
  return guarded([&] {
    require(t != nullptr && k < t->value.sizes.size(), "trajectory index out of range");
    if (size != nullptr) *size = t->value.sizes[k];
    if (inertia != nullptr) *inertia = to_c(t->value.inertias[k]);
  });
}

int mmsig_trajectory_stabilized(const mmsig_trajectory* t, size_t* s_minus, size_t* s_plus) {
  if (t == nullptr || !t->value.stabilized) return 0;
  if (s_minus != nullptr) *s_minus = t->value.stabilized->first;
  if (s_plus != nullptr) *s_plus = t->value.stabilized->second;
  return 1;
}

mmsig_status mmsig_trajectory_to_csv(const mmsig_trajectory* t, uint64_t seed, double tol_rel,
                                     char** out) {
  return guarded([&] {
    require(t != nullptr && out != nullptr, "null argument");
    *out = dup_string(mmsig::trajectory_to_csv(t->value, provenance(seed, tol_rel)));
  });
}

mmsig_status mmsig_prescribed_signature_space(size_t n, size_t p, uint64_t seed, double tol_rel,
                                              mmsig_space** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new mmsig_space{mmsig::prescribed_signature_space(n, p, seed, tol_rel)};
  });
}

mmsig_status mmsig_perturb_to_max_negative(const mmsig_space* space, uint64_t seed,
                                           double tol_rel, double* epsilon, mmsig_space** out) {
  return guarded([&] {
    require(space != nullptr && out != nullptr, "null argument");
    mmsig::PerturbationOptions opts;
    opts.tol_rel = tol_rel;
    auto r = mmsig::perturb_to_max_negative(space->value, seed, opts);
    if (epsilon != nullptr) *epsilon = r.epsilon;
    *out = new mmsig_space{std::move(r.space)};
  });
}

mmsig_status mmsig_union_space(const mmsig_space* const* components, size_t m, double h,
                               mmsig_space** out) {
  return guarded([&] {
    require(components != nullptr && out != nullptr, "null argument");
    std::vector<mmsig::FiniteMetricSpace> parts;
    parts.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      require(components[i] != nullptr, "null component");
      parts.push_back(components[i]->value);
    }
    *out = new mmsig_space{mmsig::union_space(parts, h).space};
  });
}

mmsig_status mmsig_rado_model_create(double p, uint64_t seed, const uint64_t* clique,
                                     size_t clique_len, uint64_t clique_modulus,
                                     mmsig_rado_model** out) {
  return guarded([&] {
    require(out != nullptr && (clique != nullptr || clique_len == 0), "null argument");
    auto pc = mmsig::PlantedClique::from_members({clique, clique + clique_len});
    pc.modulus = clique_modulus;
    *out = new mmsig_rado_model{mmsig::CountableRadoModel(p, seed, std::move(pc))};
  });
}

mmsig_status mmsig_rado_model_from_json(const char* text, mmsig_rado_model** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new mmsig_rado_model{mmsig::parse_model_json(text)};
  });
}

void mmsig_rado_model_free(mmsig_rado_model* model) { delete model; }

mmsig_status mmsig_rado_model_to_json(const mmsig_rado_model* model, char** out) {
  return guarded([&] {
    require(model != nullptr && out != nullptr, "null argument");
    *out = dup_string(mmsig::model_to_json(model->value));
  });
}

mmsig_status mmsig_rado_edge_list(const mmsig_rado_model* model, size_t n, char** out) {
  return guarded([&] {
    require(model != nullptr && out != nullptr, "null argument");
    std::ostringstream os;
    mmsig::write_edge_list(mmsig::er_adjacency(model->value, n), os);
    *out = dup_string(os.str());
  });
}

mmsig_status mmsig_rado_spectrum_compute(const mmsig_rado_model* model, size_t n,
                                         double tol_rel, mmsig_rado_spectrum** out) {
  return guarded([&] {
    require(model != nullptr && out != nullptr, "null argument");
    *out = new mmsig_rado_spectrum{mmsig::rado_spectrum(model->value, n, tol_rel),
                                   mmsig::rado_sigma(model->value.p())};
  });
}

void mmsig_rado_spectrum_free(mmsig_rado_spectrum* s) { delete s; }

void mmsig_rado_spectrum_stats(const mmsig_rado_spectrum* s, mmsig_rado_stats* out) {
  out->n = s->value.esd.n;
  out->sigma = s->sigma;
  out->ks = s->value.ks;
  out->delta = s->value.delta;
  out->inertia = to_c(s->value.inertia);
  out->consistent = s->value.consistent ? 1 : 0;
}

mmsig_status mmsig_rado_spectrum_esd_csv(const mmsig_rado_spectrum* s, uint64_t seed,
                                         double tol_rel, char** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = dup_string(mmsig::esd_to_csv(s->value.esd, provenance(seed, tol_rel)));
  });
}

mmsig_status mmsig_ratio_experiment(const mmsig_rado_model* model, const mmsig_measure* measure,
                                    size_t m_max, size_t trials, uint64_t seed, double tol_rel,
                                    size_t threads, mmsig_ratio_result** out) {
  return guarded([&] {
    require(model != nullptr && measure != nullptr && out != nullptr, "null argument");
    mmsig::RatioExperimentOptions opts;
    opts.m_max = m_max;
    opts.trials = trials;
    opts.seed = seed;
    opts.tol_rel = tol_rel;
    opts.threads = threads == 0 ? default_threads() : threads;
    *out = new mmsig_ratio_result{
        mmsig::rado_ratio_experiment(model->value, measure->value, opts)};
  });
}

void mmsig_ratio_result_free(mmsig_ratio_result* r) { delete r; }

size_t mmsig_ratio_trials(const mmsig_ratio_result* r) { return r->value.size(); }

double mmsig_ratio_final_delta(const mmsig_ratio_result* r, size_t trial) {
  const auto& d = r->value.at(trial).delta;
  return d.empty() ? 1.0 : d.back();
}

void mmsig_ratio_summarize(const mmsig_ratio_result* r, mmsig_ratio_summary* out) {
  const auto s = mmsig::summarize_final_delta(r->value);
  *out = {s.trials, s.m, s.min, s.q05, s.q25, s.median, s.q75, s.q95, s.max};
}

mmsig_status mmsig_ratio_to_csv(const mmsig_ratio_result* r, uint64_t seed, double tol_rel,
                                char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = dup_string(mmsig::ratio_to_csv(r->value, provenance(seed, tol_rel)));
  });
}

}  // extern "C"
