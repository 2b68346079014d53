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

#include "onebitcs.h"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "onebit/datasets.hpp"
#include "onebit/encoder.hpp"
#include "onebit/errors.hpp"
#include "onebit/evaluation.hpp"
#include "onebit/solvers.hpp"
#include "onebit/transform.hpp"

struct obc_ensemble {
  onebit::SensingEnsemble v;
};
struct obc_measurements {
  onebit::SignMeasurements v;
};
struct obc_series {
  onebit::TraceSeries v;
};
struct obc_report {
  onebit::ExperimentReport v;
};

namespace {

thread_local std::string g_last_error;

obc_status status_of(onebit::errc code) {
  switch (code) {
    case onebit::errc::invalid_argument: return OBC_ERR_INVALID_ARGUMENT;
    case onebit::errc::ingestion: return OBC_ERR_INGESTION;
    case onebit::errc::format: return OBC_ERR_FORMAT;
    case onebit::errc::ensemble_mismatch: return OBC_ERR_ENSEMBLE_MISMATCH;
    case onebit::errc::degenerate_input: return OBC_ERR_DEGENERATE_INPUT;
    case onebit::errc::config: return OBC_ERR_CONFIG;
    case onebit::errc::solver: return OBC_ERR_SOLVER;
    case onebit::errc::io: return OBC_ERR_IO;
  }
  return OBC_ERR_INTERNAL;
}

obc_status fail(obc_status status, const char* what) {
  g_last_error = what;
  return status;
}

/* Runs fn, translating exceptions into status codes. */
template <typename Fn>
obc_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return OBC_OK;
  } catch (const onebit::error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return OBC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OBC_ERR_INTERNAL;
  }
}

const onebit::ReportRow* row_at(const obc_report* r, int32_t row) {
  if (r == nullptr || row < 0 || row >= static_cast<int32_t>(r->v.rows.size()))
    return nullptr;
  return &r->v.rows[static_cast<std::size_t>(row)];
}

onebit::SolverConfig to_core(const obc_solver_config& c) {
  onebit::SolverConfig cfg;
  switch (c.kind) {
    case OBC_SOLVER_BIHT: cfg.kind = onebit::SolverKind::biht; break;
    case OBC_SOLVER_BBIHT: cfg.kind = onebit::SolverKind::bbiht; break;
    case OBC_SOLVER_FPC_1BIT: cfg.kind = onebit::SolverKind::fpc_1bit; break;
    default:
      throw onebit::error(onebit::errc::solver, "unknown solver kind");
  }
  cfg.biht.k = c.k;
  cfg.biht.max_iters = c.max_iters;
  cfg.biht.step_tau = c.step_tau;
  cfg.bbiht.d = c.d;
  cfg.bbiht.stop_var = c.stop_var;
  cfg.bbiht.scan_mode = c.scan_mode == OBC_SCAN_FIRST_EXCEED
                            ? onebit::ScanMode::first_exceed
                            : onebit::ScanMode::literal;
  cfg.bbiht.base.max_iters = c.max_iters;
  cfg.bbiht.base.step_tau = c.step_tau;
  cfg.fpc.lambda0 = c.lambda0;
  cfg.fpc.lambda_growth = c.lambda_growth;
  cfg.fpc.stages = c.stages;
  cfg.fpc.inner_iters = c.inner_iters;
  cfg.fpc.grad_step = c.grad_step;
  cfg.fpc.tol = c.tol;
  return cfg;
}

}  // namespace

extern "C" {

const char* obc_status_name(obc_status status) {
  switch (status) {
    case OBC_OK: return "ok";
    case OBC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case OBC_ERR_INGESTION: return "ingestion";
    case OBC_ERR_FORMAT: return "format";
    case OBC_ERR_ENSEMBLE_MISMATCH: return "ensemble_mismatch";
    case OBC_ERR_DEGENERATE_INPUT: return "degenerate_input";
    case OBC_ERR_CONFIG: return "config";
    case OBC_ERR_SOLVER: return "solver";
    case OBC_ERR_IO: return "io";
    case OBC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* obc_last_error(void) { return g_last_error.c_str(); }

/*--- ensemble ----------------------------------------------------------*/

obc_status obc_ensemble_create(int32_t n, int32_t m, uint64_t seed,
                               obc_ensemble** out) {
  if (out == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_ensemble_create: out is NULL");
  return guarded([&] {
    auto* handle = new obc_ensemble{onebit::build_ensemble(n, m, seed)};
    *out = handle;
  });
}

void obc_ensemble_destroy(obc_ensemble* ensemble) { delete ensemble; }

int32_t obc_ensemble_n(const obc_ensemble* e) { return e ? e->v.n : 0; }
int32_t obc_ensemble_m(const obc_ensemble* e) { return e ? e->v.m : 0; }
uint64_t obc_ensemble_seed(const obc_ensemble* e) { return e ? e->v.seed : 0; }

/*--- measurements ------------------------------------------------------*/

obc_status obc_encode(const obc_ensemble* ensemble, const double* x, int32_t n,
                      const char* source_id, obc_measurements** out) {
  if (ensemble == nullptr || x == nullptr || out == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_encode: NULL argument");
  return guarded([&] {
    if (n != ensemble->v.n)
      throw onebit::error(onebit::errc::invalid_argument,
                          "obc_encode: x length does not match ensemble n");
    Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(x, n);
    *out = new obc_measurements{
        onebit::encode(xv, ensemble->v, source_id ? source_id : "")};
  });
}

void obc_measurements_destroy(obc_measurements* meas) { delete meas; }

int32_t obc_measurements_n(const obc_measurements* m) { return m ? m->v.n : 0; }
int32_t obc_measurements_m(const obc_measurements* m) { return m ? m->v.m : 0; }
uint64_t obc_measurements_seed(const obc_measurements* m) {
  return m ? m->v.seed : 0;
}
float obc_measurements_norm(const obc_measurements* m) {
  return m ? m->v.norm_x : 0.0f;
}
const char* obc_measurements_source_id(const obc_measurements* m) {
  return m ? m->v.source_id.c_str() : "";
}

obc_status obc_measurements_signs(const obc_measurements* meas, int8_t* signs,
                                  int32_t capacity) {
  if (meas == nullptr || signs == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_measurements_signs: NULL argument");
  if (capacity < meas->v.m)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_measurements_signs: buffer too small");
  for (int i = 0; i < meas->v.m; ++i)
    signs[i] = meas->v.b[i] == 1.0 ? 1 : -1;
  return OBC_OK;
}

obc_status obc_measurements_pack(const obc_measurements* meas, uint8_t** bytes,
                                 size_t* size) {
  if (meas == nullptr || bytes == nullptr || size == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_measurements_pack: NULL argument");
  return guarded([&] {
    const std::vector<std::uint8_t> packed = onebit::pack(meas->v);
    auto* buf = static_cast<uint8_t*>(std::malloc(packed.size()));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, packed.data(), packed.size());
    *bytes = buf;
    *size = packed.size();
  });
}

obc_status obc_measurements_unpack(const uint8_t* bytes, size_t size,
                                   obc_measurements** out) {
  if (bytes == nullptr || out == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_measurements_unpack: NULL argument");
  return guarded([&] { *out = new obc_measurements{onebit::unpack(bytes, size)}; });
}

obc_status obc_measurements_write_file(const obc_measurements* meas,
                                       const char* path) {
  if (meas == nullptr || path == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_measurements_write_file: NULL argument");
  return guarded([&] { onebit::write_measurements_file(meas->v, path); });
}

obc_status obc_measurements_read_file(const char* path, obc_measurements** out) {
  if (path == nullptr || out == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_measurements_read_file: NULL argument");
  return guarded(
      [&] { *out = new obc_measurements{onebit::read_measurements_file(path)}; });
}

void obc_buffer_free(uint8_t* bytes) { std::free(bytes); }

/*--- solvers -----------------------------------------------------------*/

void obc_solver_config_init(obc_solver_config* config, obc_solver_kind kind) {
  if (config == nullptr) return;
  onebit::BihtConfig biht;
  onebit::BbihtConfig bbiht;
  onebit::FpcConfig fpc;
  config->kind = kind;
  config->k = 0;
  config->max_iters = biht.max_iters;
  config->step_tau = biht.step_tau;
  config->d = bbiht.d;
  config->stop_var = bbiht.stop_var;
  config->scan_mode = OBC_SCAN_LITERAL;
  config->lambda0 = fpc.lambda0;
  config->lambda_growth = fpc.lambda_growth;
  config->stages = fpc.stages;
  config->inner_iters = fpc.inner_iters;
  config->grad_step = fpc.grad_step;
  config->tol = fpc.tol;
}

obc_status obc_solver_config_from_name(const char* name,
                                       obc_solver_config* config) {
  if (name == nullptr || config == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_solver_config_from_name: NULL argument");
  return guarded([&] {
    const onebit::SolverConfig cfg = onebit::solver_from_name(name);
    obc_solver_kind kind = OBC_SOLVER_BBIHT;
    switch (cfg.kind) {
      case onebit::SolverKind::biht: kind = OBC_SOLVER_BIHT; break;
      case onebit::SolverKind::bbiht: kind = OBC_SOLVER_BBIHT; break;
      case onebit::SolverKind::fpc_1bit: kind = OBC_SOLVER_FPC_1BIT; break;
    }
    obc_solver_config_init(config, kind);
  });
}

const char* obc_solver_kind_name(obc_solver_kind kind) {
  switch (kind) {
    case OBC_SOLVER_BIHT: return "biht";
    case OBC_SOLVER_BBIHT: return "bbiht";
    case OBC_SOLVER_FPC_1BIT: return "fpc_1bit";
  }
  return "unknown";
}

obc_status obc_reconstruct(const obc_measurements* meas,
                           const obc_ensemble* ensemble,
                           const obc_solver_config* config, double* xhat,
                           int32_t* k_used, int32_t* iterations,
                           double* hamming_fraction) {
  if (meas == nullptr || ensemble == nullptr || config == nullptr ||
      xhat == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_reconstruct: NULL argument");
  return guarded([&] {
    const onebit::ReconstructResult res =
        onebit::reconstruct(meas->v, ensemble->v, to_core(*config));
    Eigen::Map<Eigen::VectorXd>(xhat, res.xhat.size()) = res.xhat;
    if (k_used != nullptr) *k_used = res.estimate.k_used;
    if (iterations != nullptr) *iterations = res.estimate.iterations;
    if (hamming_fraction != nullptr)
      *hamming_fraction = static_cast<double>(res.estimate.hamming_error) /
                          static_cast<double>(meas->v.m);
  });
}

/*--- datasets ----------------------------------------------------------*/

obc_status obc_series_load_csv(const char* path, const char* column,
                               char delimiter, obc_series** out) {
  if (path == nullptr || column == nullptr || out == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_series_load_csv: NULL argument");
  return guarded([&] {
    const std::string col = column;
    bool digits = !col.empty();
    for (char c : col)
      if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
    const onebit::ColumnSelector selector =
        digits ? onebit::ColumnSelector::index(std::atoi(col.c_str()))
               : onebit::ColumnSelector::name(col);
    *out = new obc_series{
        onebit::load_csv_trace(path, selector, delimiter ? delimiter : ',')};
  });
}

void obc_series_destroy(obc_series* series) { delete series; }

int64_t obc_series_length(const obc_series* s) {
  return s ? static_cast<int64_t>(s->v.values.size()) : 0;
}
int64_t obc_series_skipped_rows(const obc_series* s) {
  return s ? s->v.skipped_rows : 0;
}
const char* obc_series_source_id(const obc_series* s) {
  return s ? s->v.source_id.c_str() : "";
}

obc_status obc_series_window(const obc_series* series, int32_t n, int64_t start,
                             double* out) {
  if (series == nullptr || out == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_series_window: NULL argument");
  return guarded([&] {
    const onebit::TraceWindow w = onebit::window(series->v, n, start);
    Eigen::Map<Eigen::VectorXd>(out, w.values.size()) = w.values;
  });
}

obc_status obc_sparsity_report(const double* window, int32_t n,
                               double* coefficients, double* energy_prefix) {
  if (window == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_sparsity_report: window is NULL");
  if (n < 1)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_sparsity_report: n must be >= 1");
  return guarded([&] {
    onebit::TraceWindow w;
    w.values = Eigen::Map<const Eigen::VectorXd>(window, n);
    const onebit::SparsityReport report =
        onebit::sparsity_report(w, onebit::dct_synthesis_matrix(n));
    if (coefficients != nullptr)
      Eigen::Map<Eigen::VectorXd>(coefficients, n) = report.coefficients;
    if (energy_prefix != nullptr)
      Eigen::Map<Eigen::VectorXd>(energy_prefix, n) = report.energy_prefix;
  });
}

obc_status obc_sparsity_write_csv(const double* window, int32_t n,
                                  const char* path) {
  if (window == nullptr || path == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_sparsity_write_csv: NULL argument");
  if (n < 1)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_sparsity_write_csv: n must be >= 1");
  return guarded([&] {
    onebit::TraceWindow w;
    w.values = Eigen::Map<const Eigen::VectorXd>(window, n);
    const onebit::SparsityReport report =
        onebit::sparsity_report(w, onebit::dct_synthesis_matrix(n));
    std::ofstream out(path, std::ios::trunc);
    if (!out)
      throw onebit::error(onebit::errc::io,
                          std::string("cannot open for writing: ") + path);
    onebit::write_sparsity_csv(report, out);
    if (!out) throw onebit::error(onebit::errc::io, "short write");
  });
}

/*--- metrics and experiments -------------------------------------------*/

obc_status obc_snr_db(const double* x, const double* xhat, int32_t n,
                      double* out) {
  if (x == nullptr || xhat == nullptr || out == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_snr_db: NULL argument");
  if (n < 1) return fail(OBC_ERR_INVALID_ARGUMENT, "obc_snr_db: n must be >= 1");
  return guarded([&] {
    *out = onebit::snr_db(Eigen::Map<const Eigen::VectorXd>(x, n),
                          Eigen::Map<const Eigen::VectorXd>(xhat, n));
  });
}

obc_status obc_compression_ratio_cs(int32_t m, int32_t n, double* out) {
  if (out == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_compression_ratio_cs: out is NULL");
  return guarded([&] { *out = onebit::compression_ratio_cs(m, n); });
}

obc_status obc_compression_ratio_1bit(int32_t m, int32_t n, double* out) {
  if (out == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_compression_ratio_1bit: out is NULL");
  return guarded([&] { *out = onebit::compression_ratio_1bit(m, n); });
}

obc_status obc_run_experiment(const obc_experiment_config* config,
                              obc_report** out) {
  if (config == nullptr || out == nullptr || config->signal == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_run_experiment: NULL argument");
  if (config->solvers == nullptr || config->solver_count < 1)
    return fail(OBC_ERR_CONFIG, "obc_run_experiment: at least one solver is required");
  return guarded([&] {
    onebit::ExperimentConfig cfg;
    cfg.n = config->n;
    if (config->m_grid != nullptr)
      cfg.m_grid.assign(config->m_grid, config->m_grid + config->m_grid_len);
    else
      cfg.m_grid = onebit::default_m_grid();
    cfg.trials = config->trials;
    cfg.master_seed = config->master_seed;
    if (config->n > 0)
      cfg.signal = Eigen::Map<const Eigen::VectorXd>(config->signal, config->n);
    cfg.signal_id = config->signal_id ? config->signal_id : "";
    for (int32_t i = 0; i < config->solver_count; ++i)
      cfg.solvers.push_back(to_core(config->solvers[i]));
    cfg.measure_timing = config->measure_timing != 0;
    *out = new obc_report{onebit::run_experiment(cfg)};
  });
}

void obc_report_destroy(obc_report* report) { delete report; }

int32_t obc_report_row_count(const obc_report* r) {
  return r ? static_cast<int32_t>(r->v.rows.size()) : 0;
}

const char* obc_report_row_solver(const obc_report* r, int32_t row) {
  const onebit::ReportRow* p = row_at(r, row);
  return p ? p->solver.c_str() : "";
}
int32_t obc_report_row_m(const obc_report* r, int32_t row) {
  const onebit::ReportRow* p = row_at(r, row);
  return p ? p->m : 0;
}
double obc_report_row_mean_snr_db(const obc_report* r, int32_t row) {
  const onebit::ReportRow* p = row_at(r, row);
  return p ? p->mean_snr_db : 0.0;
}
double obc_report_row_std_snr_db(const obc_report* r, int32_t row) {
  const onebit::ReportRow* p = row_at(r, row);
  return p ? p->std_snr_db : 0.0;
}
double obc_report_row_mean_seconds(const obc_report* r, int32_t row) {
  const onebit::ReportRow* p = row_at(r, row);
  return p ? p->mean_seconds : 0.0;
}

obc_status obc_report_write_csv(const obc_report* report, const char* path) {
  if (report == nullptr || path == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_report_write_csv: NULL argument");
  return guarded([&] {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
      throw onebit::error(onebit::errc::io,
                          std::string("cannot open for writing: ") + path);
    onebit::write_report_csv(report->v, out);
    if (!out) throw onebit::error(onebit::errc::io, "short write");
  });
}

obc_status obc_report_write_json(const obc_report* report, const char* path) {
  if (report == nullptr || path == nullptr)
    return fail(OBC_ERR_INVALID_ARGUMENT, "obc_report_write_json: NULL argument");
  return guarded([&] {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
      throw onebit::error(onebit::errc::io,
                          std::string("cannot open for writing: ") + path);
    onebit::write_report_json(report->v, out);
    if (!out) throw onebit::error(onebit::errc::io, "short write");
  });
}

}  // extern "C"
