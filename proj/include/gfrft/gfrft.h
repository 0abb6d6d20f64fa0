// Copyright 2026 The gfrft Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the gfrft library: graph fractional Fourier transforms on
 * directed Cartesian product graphs.
 *
 * Every object is an opaque handle created by a gfrft_*_create / _load
 * function and released by the matching _free. Functions report failures
 * through gfrft_status; the message of the most recent failure on the
 * calling thread is available from gfrft_last_error().
 *
 * Signals are passed as the column-major vectorisation of the N2 x N1 matrix
 * X (rows index the vertices of the second factor, columns the first). For
 * m-factor transforms the last factor's index runs fastest.
 */
#ifndef GFRFT_GFRFT_H
#define GFRFT_GFRFT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GFRFT_BUILDING_LIBRARY)
#define GFRFT_API __declspec(dllexport)
#else
#define GFRFT_API __declspec(dllimport)
#endif
#else
#define GFRFT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gfrft_status {
  GFRFT_OK = 0,
  GFRFT_E_DIMENSION = 1,
  GFRFT_E_PARAMETER = 2,
  GFRFT_E_INPUT = 3,
  GFRFT_E_PARSE = 4,
  GFRFT_E_REFERENCE = 5,
  GFRFT_E_PRECONDITION = 6,
  GFRFT_E_NUMERIC = 7,
  GFRFT_E_IO = 8,
  GFRFT_E_INTERNAL = 9
} gfrft_status;

typedef enum gfrft_weight { GFRFT_W1 = 1, GFRFT_W2 = 2, GFRFT_W3 = 3 } gfrft_weight;

typedef enum gfrft_kind {
  GFRFT_BOX = 0,
  GFRFT_KRON = 1,
  GFRFT_DGFRFT = 2,
  GFRFT_MBOX = 3,
  GFRFT_MKRON = 4
} gfrft_kind;

typedef struct gfrft_graph gfrft_graph;
typedef struct gfrft_stations gfrft_stations;
typedef struct gfrft_cube gfrft_cube;
typedef struct gfrft_transform gfrft_transform;

GFRFT_API const char* gfrft_version(void);
GFRFT_API const char* gfrft_last_error(void);
GFRFT_API const char* gfrft_status_string(gfrft_status status);

/* Strings returned through char** are owned by the caller. */
GFRFT_API void gfrft_string_free(char* s);

/* ---- graphs ---------------------------------------------------------- */

/* adjacency is n*n, row-major: entry (m, n) is the weight of edge m -> n. */
GFRFT_API gfrft_status gfrft_graph_create(size_t n, const double* adjacency, gfrft_graph** out);
GFRFT_API gfrft_status gfrft_graph_directed_path(size_t n, gfrft_graph** out);
GFRFT_API gfrft_status gfrft_graph_load(const char* path, gfrft_graph** out);
GFRFT_API gfrft_status gfrft_graph_save(const gfrft_graph* g, const char* path);
GFRFT_API size_t gfrft_graph_size(const gfrft_graph* g);
GFRFT_API size_t gfrft_graph_edge_count(const gfrft_graph* g);
/* Writes n*n doubles, row-major. */
GFRFT_API gfrft_status gfrft_graph_adjacency(const gfrft_graph* g, double* out);
/* Writes the n*n out-degree Laplacian, row-major. */
GFRFT_API gfrft_status gfrft_graph_laplacian(const gfrft_graph* g, double* out);
/* Undirected copy with weights (a_mn + a_nm) / 2. */
GFRFT_API gfrft_status gfrft_graph_symmetrize(const gfrft_graph* g, gfrft_graph** out);
GFRFT_API void gfrft_graph_free(gfrft_graph* g);

/* ---- stations and weather data --------------------------------------- */

GFRFT_API gfrft_status gfrft_stations_load(const char* path, gfrft_stations** out);
GFRFT_API size_t gfrft_stations_count(const gfrft_stations* s);
GFRFT_API void gfrft_stations_free(gfrft_stations* s);

/* k-NN station graph. The station table and per-station series come from
 * the cube; w2 and w3 use the series. zero_perturbation != 0 disables the
 * random weight perturbation. */
GFRFT_API gfrft_status gfrft_graph_knn(const gfrft_cube* cube, size_t k, gfrft_weight weight,
                                       uint64_t seed, int zero_perturbation,
                                       gfrft_graph** out);

GFRFT_API gfrft_status gfrft_cube_load(const char* weather_path, const gfrft_stations* stations,
                                       gfrft_cube** out);
GFRFT_API gfrft_status gfrft_cube_synth(size_t stations, size_t hours, size_t days,
                                        uint64_t seed, gfrft_cube** out);
GFRFT_API gfrft_status gfrft_cube_save(const gfrft_cube* cube, const char* weather_path,
                                       const char* stations_path);
GFRFT_API gfrft_status gfrft_cube_dims(const gfrft_cube* cube, size_t* days, size_t* hours,
                                       size_t* stations);
GFRFT_API size_t gfrft_cube_imputed(const gfrft_cube* cube);
/* Stations x hours matrix of 1-based day `day`, column-major. */
GFRFT_API gfrft_status gfrft_cube_day_matrix(const gfrft_cube* cube, size_t day, double* out);
GFRFT_API void gfrft_cube_free(gfrft_cube* cube);

/* ---- transforms ------------------------------------------------------ */

/* factors[0] is G1 (columns of X), factors[1] is G2 (rows of X). BOX, KRON
 * and DGFRFT take m = 2; MBOX and MKRON take m >= 2. `q` is only used by
 * DGFRFT. alpha must lie in (0, 1]. */
GFRFT_API gfrft_status gfrft_transform_create(gfrft_kind kind, const gfrft_graph* const* factors,
                                              size_t m, double alpha, double q,
                                              gfrft_transform** out);
GFRFT_API size_t gfrft_transform_size(const gfrft_transform* t);
GFRFT_API int gfrft_transform_is_complex(const gfrft_transform* t);

/* Forward transform of a real signal of length n. Each output array has n
 * entries; y2_re/y2_im may be NULL and are left untouched for DGFRFT. */
GFRFT_API gfrft_status gfrft_transform_forward(const gfrft_transform* t, const double* x,
                                               size_t n, double* y1_re, double* y1_im,
                                               double* y2_re, double* y2_im);
/* Inverse; writes the real part of the reconstruction. y2 arrays are ignored
 * for DGFRFT and may be NULL. */
GFRFT_API gfrft_status gfrft_transform_inverse(const gfrft_transform* t, const double* y1_re,
                                               const double* y1_im, const double* y2_re,
                                               const double* y2_im, size_t n, double* x);
/* Keeps the first omega frequencies (1 <= omega <= n). */
GFRFT_API gfrft_status gfrft_transform_bandlimit(const gfrft_transform* t, const double* x,
                                                 size_t n, size_t omega, double* out);
/* Ascending frequencies and, for each, the spectrum index it occupies. */
GFRFT_API gfrft_status gfrft_transform_frequencies(const gfrft_transform* t, double* taus,
                                                   size_t* positions);
GFRFT_API gfrft_status gfrft_transform_energy_fraction(const gfrft_transform* t,
                                                       const double* x, size_t n,
                                                       size_t omega, double* fraction);
GFRFT_API gfrft_status gfrft_transform_export_spectrum(const gfrft_transform* t,
                                                       const double* x, size_t n,
                                                       const char* csv_path,
                                                       const char* json_path, uint64_t seed);
/* Writes P/R/Q CSVs and a JSON sidecar for every held factorization into
 * dir (one subdirectory per factor for Kronecker kinds). */
GFRFT_API gfrft_status gfrft_transform_export_factorization(const gfrft_transform* t,
                                                            const char* dir);
GFRFT_API void gfrft_transform_free(gfrft_transform* t);

/* ---- noise and metrics ----------------------------------------------- */

GFRFT_API gfrft_status gfrft_add_uniform_noise(const double* x, size_t n, double epsilon,
                                               uint64_t seed, double* out);
/* isnr/snr are +inf for exact matches. */
GFRFT_API gfrft_status gfrft_metrics(const double* x, const double* xhat, const double* xtilde,
                                     size_t n, double* isnr, double* snr, double* bae);

/* ---- experiment runners ---------------------------------------------- */

/* Parses a run configuration (JSON object, every field optional) and returns
 * it with defaults filled in. */
GFRFT_API gfrft_status gfrft_config_normalize(const char* config_json, char** out_json);

/* Denoising sweep over `cube`. Writes report.csv and summary.json into
 * out_dir (created if missing) and returns the summary. */
GFRFT_API gfrft_status gfrft_run_denoise(const char* config_json, const gfrft_cube* cube,
                                         const char* out_dir, char** summary_json);
GFRFT_API gfrft_status gfrft_run_bench(const char* config_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* GFRFT_GFRFT_H */
