/*
 * Copyright 2026 the onebitcs authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Command line front end.  Talks to the library exclusively through the
 * public C interface so it doubles as a smoke test of that surface. */

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "onebitcs.h"

namespace {

/* Exit statuses: 0 ok, 2 usage or config, 3 ingestion or io, 4 format,
 * 5 solver, 1 anything internal. */
int exit_code_for(obc_status status) {
  switch (status) {
    case OBC_OK:
      return 0;
    case OBC_ERR_INVALID_ARGUMENT:
    case OBC_ERR_CONFIG:
      return 2;
    case OBC_ERR_INGESTION:
    case OBC_ERR_IO:
    case OBC_ERR_DEGENERATE_INPUT:
      return 3;
    case OBC_ERR_FORMAT:
    case OBC_ERR_ENSEMBLE_MISMATCH:
      return 4;
    case OBC_ERR_SOLVER:
      return 5;
    default:
      return 1;
  }
}

/* Every failure surfaces as one grep friendly line on stderr. */
int fail(obc_status status) {
  std::fprintf(stderr, "ERROR:%s: %s\n", obc_status_name(status),
               obc_last_error());
  return exit_code_for(status);
}

struct SeriesDeleter {
  void operator()(obc_series* p) const { obc_series_destroy(p); }
};
struct EnsembleDeleter {
  void operator()(obc_ensemble* p) const { obc_ensemble_destroy(p); }
};
struct MeasurementsDeleter {
  void operator()(obc_measurements* p) const { obc_measurements_destroy(p); }
};
struct ReportDeleter {
  void operator()(obc_report* p) const { obc_report_destroy(p); }
};

using SeriesPtr = std::unique_ptr<obc_series, SeriesDeleter>;
using EnsemblePtr = std::unique_ptr<obc_ensemble, EnsembleDeleter>;
using MeasurementsPtr = std::unique_ptr<obc_measurements, MeasurementsDeleter>;
using ReportPtr = std::unique_ptr<obc_report, ReportDeleter>;

struct DatasetArgs {
  std::string input;
  std::string column = "1";
  std::string delimiter = ",";
  std::int64_t start = 0;
  std::int32_t n = 250;
};

void add_dataset_flags(CLI::App* cmd, DatasetArgs* args) {
  cmd->add_option("--input", args->input, "input trace file")->required();
  cmd->add_option("--column", args->column,
                  "column to read: digits select by 0-based index, anything "
                  "else by header name");
  cmd->add_option("--delimiter", args->delimiter, "field delimiter")
      ->check(CLI::Validator(
          [](std::string& v) {
            return v.size() == 1 ? std::string()
                                 : std::string("expected a single character");
          },
          "CHAR"));
  cmd->add_option("--start", args->start, "window start offset");
  cmd->add_option("--n", args->n, "window length");
}

/* Loads the selected column and slices the window; reports skipped rows
 * on stderr so stdout stays machine readable. */
obc_status load_window(const DatasetArgs& args, std::vector<double>* window,
                       std::string* source_id) {
  obc_series* raw = nullptr;
  obc_status status = obc_series_load_csv(args.input.c_str(),
                                          args.column.c_str(),
                                          args.delimiter[0], &raw);
  if (status != OBC_OK) return status;
  SeriesPtr series(raw);
  if (obc_series_skipped_rows(series.get()) > 0)
    std::fprintf(stderr, "warning: skipped %" PRId64 " malformed rows\n",
                 obc_series_skipped_rows(series.get()));
  window->assign(static_cast<std::size_t>(args.n), 0.0);
  status = obc_series_window(series.get(), args.n, args.start, window->data());
  if (status != OBC_OK) return status;
  *source_id = obc_series_source_id(series.get());
  return OBC_OK;
}

struct SolverArgs {
  std::string name = "bbiht";
  std::int32_t k = 0;
  std::int32_t max_iters = -1;
  double step_tau = -1.0;
  double d = -1.0;
  double stop_var = -1.0;
  std::string scan_mode;
  double lambda0 = -1.0;
  double lambda_growth = -1.0;
  std::int32_t stages = -1;
  std::int32_t inner_iters = -1;
  double grad_step = -1.0;
  double tol = -1.0;
};

void add_solver_flags(CLI::App* cmd, SolverArgs* args, bool with_name) {
  if (with_name)
    cmd->add_option("--solver", args->name,
                    "solver: biht, bbiht, or fpc_1bit");
  cmd->add_option("--k", args->k, "sparsity level (biht)");
  cmd->add_option("--max-iters", args->max_iters, "iteration cap");
  cmd->add_option("--step-tau", args->step_tau, "gradient step");
  cmd->add_option("--d", args->d, "scan depth fraction (bbiht)");
  cmd->add_option("--stop-var", args->stop_var,
                  "variance threshold (bbiht)");
  cmd->add_option("--scan-mode", args->scan_mode,
                  "bbiht row scan: literal or first_exceed")
      ->check(CLI::IsMember({"literal", "first_exceed"}));
  cmd->add_option("--lambda0", args->lambda0, "initial penalty (fpc_1bit)");
  cmd->add_option("--lambda-growth", args->lambda_growth,
                  "penalty growth per stage (fpc_1bit)");
  cmd->add_option("--stages", args->stages, "continuation stages (fpc_1bit)");
  cmd->add_option("--inner-iters", args->inner_iters,
                  "iterations per stage (fpc_1bit)");
  cmd->add_option("--grad-step", args->grad_step, "gradient step (fpc_1bit)");
  cmd->add_option("--tol", args->tol, "iterate change tolerance (fpc_1bit)");
}

/* Name picks the defaults, explicit flags override. */
obc_status solver_config_for(const SolverArgs& args, const std::string& name,
                             obc_solver_config* config) {
  obc_status status = obc_solver_config_from_name(name.c_str(), config);
  if (status != OBC_OK) return status;
  if (args.k > 0) config->k = args.k;
  if (args.max_iters >= 0) config->max_iters = args.max_iters;
  if (args.step_tau >= 0.0) config->step_tau = args.step_tau;
  if (args.d >= 0.0) config->d = args.d;
  if (args.stop_var >= 0.0) config->stop_var = args.stop_var;
  if (args.scan_mode == "literal") config->scan_mode = OBC_SCAN_LITERAL;
  if (args.scan_mode == "first_exceed")
    config->scan_mode = OBC_SCAN_FIRST_EXCEED;
  if (args.lambda0 >= 0.0) config->lambda0 = args.lambda0;
  if (args.lambda_growth >= 0.0) config->lambda_growth = args.lambda_growth;
  if (args.stages >= 0) config->stages = args.stages;
  if (args.inner_iters >= 0) config->inner_iters = args.inner_iters;
  if (args.grad_step >= 0.0) config->grad_step = args.grad_step;
  if (args.tol >= 0.0) config->tol = args.tol;
  return OBC_OK;
}

int cmd_encode(const DatasetArgs& dataset, const std::string& output,
               std::int32_t m, std::uint64_t seed) {
  std::vector<double> window;
  std::string source_id;
  obc_status status = load_window(dataset, &window, &source_id);
  if (status != OBC_OK) return fail(status);

  obc_ensemble* raw_ens = nullptr;
  status = obc_ensemble_create(dataset.n, m, seed, &raw_ens);
  if (status != OBC_OK) return fail(status);
  EnsemblePtr ensemble(raw_ens);

  obc_measurements* raw_meas = nullptr;
  status = obc_encode(ensemble.get(), window.data(), dataset.n,
                      source_id.c_str(), &raw_meas);
  if (status != OBC_OK) return fail(status);
  MeasurementsPtr meas(raw_meas);

  status = obc_measurements_write_file(meas.get(), output.c_str());
  if (status != OBC_OK) return fail(status);

  double ratio = 0.0;
  status = obc_compression_ratio_1bit(m, dataset.n, &ratio);
  if (status != OBC_OK) return fail(status);
  std::printf("m=%d n=%d payload_bytes=%d ratio_1bit=%.3f\n", m, dataset.n,
              (m + 7) / 8, ratio);
  return 0;
}

int cmd_reconstruct(const std::string& input, const std::string& output,
                    const SolverArgs& solver) {
  obc_solver_config config;
  obc_status status = solver_config_for(solver, solver.name, &config);
  if (status != OBC_OK) return fail(status);

  obc_measurements* raw_meas = nullptr;
  status = obc_measurements_read_file(input.c_str(), &raw_meas);
  if (status != OBC_OK) return fail(status);
  MeasurementsPtr meas(raw_meas);

  const std::int32_t n = obc_measurements_n(meas.get());
  obc_ensemble* raw_ens = nullptr;
  status = obc_ensemble_create(n, obc_measurements_m(meas.get()),
                               obc_measurements_seed(meas.get()), &raw_ens);
  if (status != OBC_OK) return fail(status);
  EnsemblePtr ensemble(raw_ens);

  std::vector<double> xhat(static_cast<std::size_t>(n), 0.0);
  std::int32_t k_used = 0;
  std::int32_t iterations = 0;
  double hamming_fraction = 0.0;
  status = obc_reconstruct(meas.get(), ensemble.get(), &config, xhat.data(),
                           &k_used, &iterations, &hamming_fraction);
  if (status != OBC_OK) return fail(status);

  std::FILE* out = std::fopen(output.c_str(), "wb");
  if (out == nullptr) {
    std::fprintf(stderr, "ERROR:io: cannot open '%s' for writing\n",
                 output.c_str());
    return 3;
  }
  std::fprintf(out, "index,value\n");
  for (std::int32_t i = 0; i < n; ++i)
    std::fprintf(out, "%d,%.10g\n", i, xhat[static_cast<std::size_t>(i)]);
  std::fclose(out);

  std::printf("k_used=%d iterations=%d hamming_fraction=%.6f\n", k_used,
              iterations, hamming_fraction);
  return 0;
}

int cmd_sparsity(const DatasetArgs& dataset, const std::string& output) {
  std::vector<double> window;
  std::string source_id;
  obc_status status = load_window(dataset, &window, &source_id);
  if (status != OBC_OK) return fail(status);
  status = obc_sparsity_write_csv(window.data(), dataset.n, output.c_str());
  if (status != OBC_OK) return fail(status);
  return 0;
}

int cmd_experiment(const DatasetArgs& dataset, const std::string& output,
                   const SolverArgs& solver, const std::string& solver_list,
                   const std::vector<std::int32_t>& m_grid,
                   std::int32_t trials, std::uint64_t master_seed,
                   const std::string& format, bool no_timing) {
  std::vector<double> window;
  std::string source_id;
  obc_status status = load_window(dataset, &window, &source_id);
  if (status != OBC_OK) return fail(status);

  std::vector<obc_solver_config> solvers;
  std::string names = solver_list;
  while (!names.empty()) {
    const std::size_t comma = names.find(',');
    const std::string name = names.substr(0, comma);
    names = comma == std::string::npos ? std::string()
                                       : names.substr(comma + 1);
    if (name.empty()) continue;
    obc_solver_config config;
    status = solver_config_for(solver, name, &config);
    if (status != OBC_OK) return fail(status);
    solvers.push_back(config);
  }

  obc_experiment_config config;
  config.n = dataset.n;
  config.m_grid = m_grid.empty() ? nullptr : m_grid.data();
  config.m_grid_len = static_cast<std::int32_t>(m_grid.size());
  config.trials = trials;
  config.master_seed = master_seed;
  config.signal = window.data();
  config.signal_id = source_id.c_str();
  config.solvers = solvers.data();
  config.solver_count = static_cast<std::int32_t>(solvers.size());
  config.measure_timing = no_timing ? 0 : 1;

  obc_report* raw_report = nullptr;
  status = obc_run_experiment(&config, &raw_report);
  if (status != OBC_OK) return fail(status);
  ReportPtr report(raw_report);

  status = format == "json"
               ? obc_report_write_json(report.get(), output.c_str())
               : obc_report_write_csv(report.get(), output.c_str());
  if (status != OBC_OK) return fail(status);
  std::printf("rows=%d\n", obc_report_row_count(report.get()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-bit compressive data gathering toolkit"};
  app.require_subcommand(1);

  DatasetArgs dataset;
  SolverArgs solver;
  std::string output;
  std::string input;
  std::int32_t m = 250;
  std::uint64_t seed = 1;

  CLI::App* encode = app.add_subcommand(
      "encode", "encode a trace window into sign measurements");
  add_dataset_flags(encode, &dataset);
  encode->add_option("--output", output, "measurement file to write")
      ->required();
  encode->add_option("--m", m, "number of sign measurements");
  encode->add_option("--seed", seed, "sensing matrix seed");

  CLI::App* reconstruct = app.add_subcommand(
      "reconstruct", "rebuild a window from a measurement file");
  reconstruct->add_option("--input", input, "measurement file")->required();
  reconstruct->add_option("--output", output, "reconstruction CSV to write")
      ->required();
  add_solver_flags(reconstruct, &solver, true);

  CLI::App* sparsity = app.add_subcommand(
      "sparsity", "write the window's transform energy profile");
  add_dataset_flags(sparsity, &dataset);
  sparsity->add_option("--output", output, "profile CSV to write")->required();

  CLI::App* experiment = app.add_subcommand(
      "experiment", "run multi-trial reconstruction studies");
  add_dataset_flags(experiment, &dataset);
  experiment->add_option("--output", output, "report file to write")
      ->required();
  std::string solver_list = "bbiht";
  std::vector<std::int32_t> m_grid;
  std::int32_t trials = 20;
  std::uint64_t master_seed = 1;
  std::string format = "csv";
  bool no_timing = false;
  experiment->add_option("--solvers", solver_list,
                         "comma separated solver list");
  experiment->add_option("--m-grid", m_grid,
                         "measurement counts (default 25..500 step 25)")
      ->delimiter(',');
  experiment->add_option("--trials", trials, "trials per (solver, m) cell");
  experiment->add_option("--seed", master_seed, "master seed");
  experiment->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
  experiment->add_flag("--no-timing", no_timing,
                       "report elapsed as 0 for byte-identical reruns");
  add_solver_flags(experiment, &solver, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "ERROR:usage: %s\n", e.what());
    return 2;
  }

  if (encode->parsed()) return cmd_encode(dataset, output, m, seed);
  if (reconstruct->parsed()) return cmd_reconstruct(input, output, solver);
  if (sparsity->parsed()) return cmd_sparsity(dataset, output);
  return cmd_experiment(dataset, output, solver, solver_list, m_grid, trials,
                        master_seed, format, no_timing);
}
