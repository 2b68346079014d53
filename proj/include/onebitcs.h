/*  Copyright 2026 the onebitcs authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.  */

/* C API for the onebitcs library.
 *
 * All objects are opaque handles created and destroyed through this
 * interface.  Every fallible call returns an obc_status; on failure a
 * human-readable message is available from obc_last_error() until the
 * next API call on the same thread.  Output parameters are untouched on
 * failure unless noted. */

#ifndef ONEBITCS_H
#define ONEBITCS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum obc_status {
  OBC_OK = 0,
  OBC_ERR_INVALID_ARGUMENT = 1,
  OBC_ERR_INGESTION = 2,
  OBC_ERR_FORMAT = 3,
  OBC_ERR_ENSEMBLE_MISMATCH = 4,
  OBC_ERR_DEGENERATE_INPUT = 5,
  OBC_ERR_CONFIG = 6,
  OBC_ERR_SOLVER = 7,
  OBC_ERR_IO = 8,
  OBC_ERR_INTERNAL = 9
} obc_status;

const char* obc_status_name(obc_status status);

/* Message for the most recent failing call on this thread; never NULL. */
const char* obc_last_error(void);

/*==========================================================================
 * Sensing ensemble
 *========================================================================*/

typedef struct obc_ensemble obc_ensemble;

/* Seeded Gaussian sensing matrix (entries N(0, 1/m)) composed with the
 * orthonormal DCT synthesis basis.  Same (n, m, seed) regenerates the
 * same operator. */
obc_status obc_ensemble_create(int32_t n, int32_t m, uint64_t seed,
                               obc_ensemble** out);
void obc_ensemble_destroy(obc_ensemble* ensemble);

int32_t obc_ensemble_n(const obc_ensemble* ensemble);
int32_t obc_ensemble_m(const obc_ensemble* ensemble);
uint64_t obc_ensemble_seed(const obc_ensemble* ensemble);

/*==========================================================================
 * Encoding and the .1bm wire format
 *========================================================================*/

typedef struct obc_measurements obc_measurements;

/* b = sign(phi x) with sign(0) = +1, plus the l2 norm side channel.
 * x must hold n finite values.  source_id may be NULL. */
obc_status obc_encode(const obc_ensemble* ensemble, const double* x, int32_t n,
                      const char* source_id, obc_measurements** out);
void obc_measurements_destroy(obc_measurements* meas);

int32_t obc_measurements_n(const obc_measurements* meas);
int32_t obc_measurements_m(const obc_measurements* meas);
uint64_t obc_measurements_seed(const obc_measurements* meas);
float obc_measurements_norm(const obc_measurements* meas);
const char* obc_measurements_source_id(const obc_measurements* meas);

/* Copies the m signs as +1/-1 into signs. */
obc_status obc_measurements_signs(const obc_measurements* meas, int8_t* signs,
                                  int32_t capacity);

/* Serializes to a malloc'd buffer (free with obc_buffer_free).  The
 * payload after the JSON header line is ceil(m/8) bytes. */
obc_status obc_measurements_pack(const obc_measurements* meas, uint8_t** bytes,
                                 size_t* size);
obc_status obc_measurements_unpack(const uint8_t* bytes, size_t size,
                                   obc_measurements** out);
obc_status obc_measurements_write_file(const obc_measurements* meas,
                                       const char* path);
obc_status obc_measurements_read_file(const char* path, obc_measurements** out);
void obc_buffer_free(uint8_t* bytes);

/*==========================================================================
 * Solvers and reconstruction
 *========================================================================*/

typedef enum obc_solver_kind {
  OBC_SOLVER_BIHT = 0,
  OBC_SOLVER_BBIHT = 1,
  OBC_SOLVER_FPC_1BIT = 2
} obc_solver_kind;

typedef enum obc_scan_mode {
  OBC_SCAN_LITERAL = 0,
  OBC_SCAN_FIRST_EXCEED = 1
} obc_scan_mode;

typedef struct obc_solver_config {
  obc_solver_kind kind;
  /* biht (also the inner runs of bbiht) */
  int32_t k; /* target sparsity; required >= 1 for biht */
  int32_t max_iters;
  double step_tau;
  /* bbiht */
  double d;
  double stop_var;
  obc_scan_mode scan_mode;
  /* fpc_1bit */
  double lambda0;
  double lambda_growth;
  int32_t stages;
  int32_t inner_iters;
  double grad_step;
  double tol;
} obc_solver_config;

/* Fills config with the defaults for the given solver (k stays 0). */
void obc_solver_config_init(obc_solver_config* config, obc_solver_kind kind);

/* Resolves "biht", "bbiht", or "fpc_1bit"; anything else is
 * OBC_ERR_SOLVER with the valid names in the error message. */
obc_status obc_solver_config_from_name(const char* name,
                                       obc_solver_config* config);

const char* obc_solver_kind_name(obc_solver_kind kind);

/* Blind reconstruction of the length-n window behind meas.  xhat must have
 * room for n values.  k_used, iterations, and hamming_fraction are
 * optional (pass NULL to skip). */
obc_status obc_reconstruct(const obc_measurements* meas,
                           const obc_ensemble* ensemble,
                           const obc_solver_config* config, double* xhat,
                           int32_t* k_used, int32_t* iterations,
                           double* hamming_fraction);

/*==========================================================================
 * Trace ingestion and sparsity profile
 *========================================================================*/

typedef struct obc_series obc_series;

/* Loads one CSV column.  A column string of digits selects by 0-based
 * index; anything else selects by header name (first row is the header).
 * Rows whose field is missing or non-numeric are skipped and counted. */
obc_status obc_series_load_csv(const char* path, const char* column,
                               char delimiter, obc_series** out);
void obc_series_destroy(obc_series* series);

int64_t obc_series_length(const obc_series* series);
int64_t obc_series_skipped_rows(const obc_series* series);
const char* obc_series_source_id(const obc_series* series);

/* Copies series values [start, start + n) into out. */
obc_status obc_series_window(const obc_series* series, int32_t n, int64_t start,
                             double* out);

/* DCT coefficients of the window and the cumulative energy fraction;
 * both buffers must have room for n values.  Either output may be NULL. */
obc_status obc_sparsity_report(const double* window, int32_t n,
                               double* coefficients, double* energy_prefix);

/* Writes the profile as CSV rows index,coefficient,cumulative_energy. */
obc_status obc_sparsity_write_csv(const double* window, int32_t n,
                                  const char* path);

/*==========================================================================
 * Metrics and experiments
 *========================================================================*/

obc_status obc_snr_db(const double* x, const double* xhat, int32_t n,
                      double* out);
obc_status obc_compression_ratio_cs(int32_t m, int32_t n, double* out);
obc_status obc_compression_ratio_1bit(int32_t m, int32_t n, double* out);

typedef struct obc_experiment_config {
  int32_t n;
  const int32_t* m_grid; /* NULL selects the default grid 25..500 step 25 */
  int32_t m_grid_len;
  int32_t trials;
  uint64_t master_seed;
  const double* signal; /* length n */
  const char* signal_id;
  const obc_solver_config* solvers;
  int32_t solver_count;
  int32_t measure_timing; /* 0 reports elapsed as exactly 0 */
} obc_experiment_config;

typedef struct obc_report obc_report;

obc_status obc_run_experiment(const obc_experiment_config* config,
                              obc_report** out);
void obc_report_destroy(obc_report* report);

int32_t obc_report_row_count(const obc_report* report);
const char* obc_report_row_solver(const obc_report* report, int32_t row);
int32_t obc_report_row_m(const obc_report* report, int32_t row);
double obc_report_row_mean_snr_db(const obc_report* report, int32_t row);
double obc_report_row_std_snr_db(const obc_report* report, int32_t row);
double obc_report_row_mean_seconds(const obc_report* report, int32_t row);

obc_status obc_report_write_csv(const obc_report* report, const char* path);
obc_status obc_report_write_json(const obc_report* report, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* ONEBITCS_H */
