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

/* C interface to the mmsig library. Every fallible call returns an
 * mmsig_status; on failure mmsig_last_error() describes the problem and
 * mmsig_last_witness() returns the offending indices, if any. Both are
 * per-thread. Strings returned through char** are owned by the caller and
 * released with mmsig_string_free. */
#ifndef MMSIG_MMSIG_H_
#define MMSIG_MMSIG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MMSIG_BUILDING)
#define MMSIG_API __declspec(dllexport)
#else
#define MMSIG_API __declspec(dllimport)
#endif
#else
#define MMSIG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match mmsig::ErrorCode. */
typedef enum mmsig_status {
  MMSIG_OK = 0,
  MMSIG_INVALID_INPUT = 1,
  MMSIG_NO_CONVERGENCE = 2,
  MMSIG_SINGULAR_BLOCK = 3,
  MMSIG_ASYMMETRY = 4,
  MMSIG_NEGATIVE_DISTANCE = 5,
  MMSIG_ZERO_OFF_DIAGONAL = 6,
  MMSIG_TRIANGLE_VIOLATION = 7,
  MMSIG_DISCONNECTED = 8,
  MMSIG_DUPLICATE_POINTS = 9,
  MMSIG_CONE_VIOLATION = 10,
  MMSIG_UNKNOWN_NAME = 11,
  MMSIG_BAD_PARAMS = 12,
  MMSIG_INVALID_MEASURE = 13,
  MMSIG_STRICTNESS_VIOLATED = 14,
  MMSIG_EPSILON_UNDERFLOW = 15,
  MMSIG_DIAMETER_TOO_LARGE = 16,
  MMSIG_MONOTONICITY_VIOLATION = 17,
  MMSIG_IO_ERROR = 18,
  MMSIG_PARSE_ERROR = 19,
  MMSIG_INTERNAL = 100
} mmsig_status;

typedef struct mmsig_inertia {
  size_t s_minus;
  size_t s_zero;
  size_t s_plus;
  double theta; /* zero threshold used for this count */
} mmsig_inertia;

typedef enum mmsig_verdict_kind {
  MMSIG_EUCLIDEAN = 0,
  MMSIG_HILBERT_LIKE = 1,
  MMSIG_PSEUDO_EUCLIDEAN = 2
} mmsig_verdict_kind;

typedef struct mmsig_verdict {
  mmsig_verdict_kind kind;
  size_t n_neg;
  size_t n_pos;
  mmsig_inertia certificate; /* inertia of the double-centred matrix */
} mmsig_verdict;

typedef struct mmsig_rado_stats {
  size_t n;
  double sigma;
  double ks;
  double delta;
  mmsig_inertia inertia;
  int consistent; /* connected with hop diameter <= 2 */
} mmsig_rado_stats;

typedef struct mmsig_ratio_summary {
  size_t trials;
  size_t m;
  double min, q05, q25, median, q75, q95, max;
} mmsig_ratio_summary;

typedef struct mmsig_space mmsig_space;
typedef struct mmsig_embedding mmsig_embedding;
typedef struct mmsig_measure mmsig_measure;
typedef struct mmsig_trajectory mmsig_trajectory;
typedef struct mmsig_rado_model mmsig_rado_model;
typedef struct mmsig_rado_spectrum mmsig_rado_spectrum;
typedef struct mmsig_ratio_result mmsig_ratio_result;

MMSIG_API const char* mmsig_version(void);
MMSIG_API const char* mmsig_status_name(mmsig_status status);
MMSIG_API const char* mmsig_last_error(void);
/* Copies up to cap witness indices into out and returns how many exist. */
MMSIG_API size_t mmsig_last_witness(size_t* out, size_t cap);
MMSIG_API void mmsig_string_free(char* s);

MMSIG_API mmsig_status mmsig_inertia_of(const double* a, size_t n, double tol_rel,
                                        mmsig_inertia* out);

/* Spaces. strict != 0 demands strict triangle inequalities. */
MMSIG_API mmsig_status mmsig_space_from_distances(const double* dist, size_t n, int strict,
                                                  mmsig_space** out);
MMSIG_API mmsig_status mmsig_space_from_points(const double* coords, size_t count, size_t dim,
                                               mmsig_space** out);
MMSIG_API mmsig_status mmsig_space_read_csv(const char* path, int strict, mmsig_space** out);
MMSIG_API mmsig_status mmsig_space_read_edge_list(const char* path, mmsig_space** out);
/* name: tripod, tripod_extended, simplex, sphere, sphere_sqrt. */
MMSIG_API mmsig_status mmsig_space_example(const char* name, size_t n, size_t dim, uint64_t seed,
                                           mmsig_space** out);
MMSIG_API void mmsig_space_free(mmsig_space* space);
MMSIG_API size_t mmsig_space_size(const mmsig_space* space);
MMSIG_API double mmsig_space_distance(const mmsig_space* space, size_t i, size_t j);
MMSIG_API double mmsig_space_diameter(const mmsig_space* space);
MMSIG_API mmsig_status mmsig_space_to_csv(const mmsig_space* space, uint64_t seed,
                                          double tol_rel, char** out);

/* Signatures and embeddings. */
MMSIG_API mmsig_status mmsig_space_signature(const mmsig_space* space, double tol_rel,
                                             mmsig_inertia* out);
MMSIG_API mmsig_status mmsig_centered_signature(const mmsig_space* space, double tol_rel,
                                                mmsig_inertia* out);
MMSIG_API mmsig_status mmsig_classify(const mmsig_space* space, double tol_rel,
                                      mmsig_verdict* out);
/* "euclidean(p)" or "pseudo(n, p)". */
MMSIG_API mmsig_status mmsig_verdict_string(const mmsig_verdict* verdict, char** out);
MMSIG_API mmsig_status mmsig_embed(const mmsig_space* space, double tol_rel,
                                   mmsig_embedding** out);
MMSIG_API void mmsig_embedding_free(mmsig_embedding* e);
MMSIG_API size_t mmsig_embedding_n_neg(const mmsig_embedding* e);
MMSIG_API size_t mmsig_embedding_n_pos(const mmsig_embedding* e);
MMSIG_API size_t mmsig_embedding_count(const mmsig_embedding* e);
/* Row-major count x (n_neg + n_pos). */
MMSIG_API const double* mmsig_embedding_coords(const mmsig_embedding* e);
MMSIG_API mmsig_status mmsig_verify_isometry(const mmsig_embedding* e, const mmsig_space* space,
                                             double tol_rel, double* max_residual);
MMSIG_API mmsig_status mmsig_embedding_to_json(const mmsig_embedding* e, uint64_t seed,
                                               double tol_rel, char** out);

/* Measures: a JSON array of weights, a JSON object with a "type", or
 * "uniform", "geometric:Q", "super_geometric", "class_biased:J:Q". n sizes a
 * uniform measure and may be 0 otherwise. */
MMSIG_API mmsig_status mmsig_measure_parse(const char* text, size_t n, mmsig_measure** out);
MMSIG_API void mmsig_measure_free(mmsig_measure* m);

/* Trajectories. window is the plateau length (0 disables it). */
MMSIG_API mmsig_status mmsig_trajectory_prefix(const mmsig_space* space, double tol_rel,
                                               size_t window, mmsig_trajectory** out);
MMSIG_API mmsig_status mmsig_trajectory_sampled(const mmsig_space* space,
                                                const mmsig_measure* measure, size_t m,
                                                uint64_t seed, double tol_rel, size_t window,
                                                mmsig_trajectory** out);
/* Prefixes 1..n of the vertices 0, 1, 2, ... of a Rado model. */
MMSIG_API mmsig_status mmsig_trajectory_rado(const mmsig_rado_model* model, size_t n,
                                             double tol_rel, size_t window,
                                             mmsig_trajectory** out);
MMSIG_API void mmsig_trajectory_free(mmsig_trajectory* t);
MMSIG_API size_t mmsig_trajectory_length(const mmsig_trajectory* t);
MMSIG_API mmsig_status mmsig_trajectory_at(const mmsig_trajectory* t, size_t k, size_t* size,
                                           mmsig_inertia* inertia);
/* Returns 1 and fills the plateau values if the trajectory ends on one. */
MMSIG_API int mmsig_trajectory_stabilized(const mmsig_trajectory* t, size_t* s_minus,
                                          size_t* s_plus);
MMSIG_API mmsig_status mmsig_trajectory_to_csv(const mmsig_trajectory* t, uint64_t seed,
                                               double tol_rel, char** out);

/* Constructions. */
MMSIG_API mmsig_status mmsig_prescribed_signature_space(size_t n, size_t p, uint64_t seed,
                                                        double tol_rel, mmsig_space** out);
MMSIG_API mmsig_status mmsig_perturb_to_max_negative(const mmsig_space* space, uint64_t seed,
                                                     double tol_rel, double* epsilon,
                                                     mmsig_space** out);
MMSIG_API mmsig_status mmsig_union_space(const mmsig_space* const* components, size_t m,
                                         double h, mmsig_space** out);

/* Rado models. clique may be NULL when clique_len is 0; clique_modulus > 0
 * adds every vertex v with v % clique_modulus != 0 to the clique. */
MMSIG_API mmsig_status mmsig_rado_model_create(double p, uint64_t seed, const uint64_t* clique,
                                               size_t clique_len, uint64_t clique_modulus,
                                               mmsig_rado_model** out);
MMSIG_API mmsig_status mmsig_rado_model_from_json(const char* text, mmsig_rado_model** out);
MMSIG_API void mmsig_rado_model_free(mmsig_rado_model* model);
MMSIG_API mmsig_status mmsig_rado_model_to_json(const mmsig_rado_model* model, char** out);
MMSIG_API mmsig_status mmsig_rado_edge_list(const mmsig_rado_model* model, size_t n, char** out);

MMSIG_API mmsig_status mmsig_rado_spectrum_compute(const mmsig_rado_model* model, size_t n,
                                                   double tol_rel, mmsig_rado_spectrum** out);
MMSIG_API void mmsig_rado_spectrum_free(mmsig_rado_spectrum* s);
MMSIG_API void mmsig_rado_spectrum_stats(const mmsig_rado_spectrum* s, mmsig_rado_stats* out);
MMSIG_API mmsig_status mmsig_rado_spectrum_esd_csv(const mmsig_rado_spectrum* s, uint64_t seed,
                                                   double tol_rel, char** out);

/* Trials use sampler seeds seed ^ trial. threads = 0 picks the default
 * (MMS_SIG_THREADS if set, else the hardware concurrency). */
MMSIG_API mmsig_status mmsig_ratio_experiment(const mmsig_rado_model* model,
                                              const mmsig_measure* measure, size_t m_max,
                                              size_t trials, uint64_t seed, double tol_rel,
                                              size_t threads, mmsig_ratio_result** out);
MMSIG_API void mmsig_ratio_result_free(mmsig_ratio_result* r);
MMSIG_API size_t mmsig_ratio_trials(const mmsig_ratio_result* r);
MMSIG_API double mmsig_ratio_final_delta(const mmsig_ratio_result* r, size_t trial);
MMSIG_API void mmsig_ratio_summarize(const mmsig_ratio_result* r, mmsig_ratio_summary* out);
MMSIG_API mmsig_status mmsig_ratio_to_csv(const mmsig_ratio_result* r, uint64_t seed,
                                          double tol_rel, char** out);

#ifdef __cplusplus
}
#endif

#endif  // MMSIG_MMSIG_H_
