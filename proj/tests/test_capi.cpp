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

/* Exercises the shared library strictly through onebitcs.h. */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include "onebitcs.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "onebit_capi_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/* Deterministic non degenerate window. */
std::vector<double> sample_window(int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    x[std::size_t(i)] = 3.0 + std::cos(0.4 * i) + 0.05 * i;
  return x;
}

std::string fixture_csv() {
  return (fs::path(ONEBIT_DATA_DIR) / "slow_decay_fixture.csv").string();
}

}  // namespace

TEST_CASE("ensemble handles expose their parameters") {
  obc_ensemble* e = nullptr;
  REQUIRE(obc_ensemble_create(32, 48, 4, &e) == OBC_OK);
  CHECK(obc_ensemble_n(e) == 32);
  CHECK(obc_ensemble_m(e) == 48);
  CHECK(obc_ensemble_seed(e) == 4);
  obc_ensemble_destroy(e);

  CHECK(obc_ensemble_create(0, 8, 1, &e) == OBC_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(obc_last_error()) > 0);
  CHECK(obc_ensemble_create(8, 8, 1, nullptr) == OBC_ERR_INVALID_ARGUMENT);
  obc_ensemble_destroy(nullptr);
}

TEST_CASE("encode exposes signs and the norm side channel") {
  obc_ensemble* e = nullptr;
  REQUIRE(obc_ensemble_create(32, 48, 4, &e) == OBC_OK);
  const std::vector<double> x = sample_window(32);

  obc_measurements* meas = nullptr;
  REQUIRE(obc_encode(e, x.data(), 32, "unit", &meas) == OBC_OK);
  CHECK(obc_measurements_n(meas) == 32);
  CHECK(obc_measurements_m(meas) == 48);
  CHECK(obc_measurements_seed(meas) == 4);
  CHECK(std::string(obc_measurements_source_id(meas)) == "unit");

  double norm_sq = 0.0;
  for (double v : x) norm_sq += v * v;
  CHECK(obc_measurements_norm(meas) ==
        doctest::Approx(std::sqrt(norm_sq)).epsilon(1e-6));

  std::vector<int8_t> signs(48);
  REQUIRE(obc_measurements_signs(meas, signs.data(), 48) == OBC_OK);
  for (int8_t s : signs) CHECK((s == 1 || s == -1));
  CHECK(obc_measurements_signs(meas, signs.data(), 47) ==
        OBC_ERR_INVALID_ARGUMENT);

  CHECK(obc_encode(e, nullptr, 32, "unit", &meas) == OBC_ERR_INVALID_ARGUMENT);
  CHECK(obc_encode(e, x.data(), 31, "unit", &meas) == OBC_ERR_INVALID_ARGUMENT);

  obc_measurements_destroy(meas);
  obc_measurements_destroy(nullptr);
  obc_ensemble_destroy(e);
}

TEST_CASE("pack and file io round trip every field") {
  obc_ensemble* e = nullptr;
  REQUIRE(obc_ensemble_create(32, 41, 4, &e) == OBC_OK);
  const std::vector<double> x = sample_window(32);
  obc_measurements* meas = nullptr;
  REQUIRE(obc_encode(e, x.data(), 32, "unit", &meas) == OBC_OK);

  uint8_t* bytes = nullptr;
  size_t size = 0;
  REQUIRE(obc_measurements_pack(meas, &bytes, &size) == OBC_OK);
  REQUIRE(bytes != nullptr);

  obc_measurements* back = nullptr;
  REQUIRE(obc_measurements_unpack(bytes, size, &back) == OBC_OK);
  CHECK(obc_measurements_m(back) == 41);
  CHECK(obc_measurements_n(back) == 32);
  CHECK(obc_measurements_seed(back) == 4);
  CHECK(obc_measurements_norm(back) == obc_measurements_norm(meas));
  std::vector<int8_t> a(41), b(41);
  REQUIRE(obc_measurements_signs(meas, a.data(), 41) == OBC_OK);
  REQUIRE(obc_measurements_signs(back, b.data(), 41) == OBC_OK);
  CHECK(a == b);
  obc_measurements_destroy(back);

  // Truncating the payload must be detected, not zero filled.
  obc_measurements* bad = nullptr;
  CHECK(obc_measurements_unpack(bytes, size - 1, &bad) == OBC_ERR_FORMAT);
  obc_buffer_free(bytes);

  const fs::path file = work_dir() / "roundtrip.1bm";
  REQUIRE(obc_measurements_write_file(meas, file.string().c_str()) == OBC_OK);
  obc_measurements* from_file = nullptr;
  REQUIRE(obc_measurements_read_file(file.string().c_str(), &from_file) ==
          OBC_OK);
  CHECK(obc_measurements_m(from_file) == 41);
  obc_measurements_destroy(from_file);

  CHECK(obc_measurements_read_file((work_dir() / "absent.1bm").string().c_str(),
                                   &from_file) == OBC_ERR_IO);

  obc_measurements_destroy(meas);
  obc_ensemble_destroy(e);
}

TEST_CASE("solver configs resolve by name") {
  obc_solver_config cfg;
  REQUIRE(obc_solver_config_from_name("bbiht", &cfg) == OBC_OK);
  CHECK(cfg.kind == OBC_SOLVER_BBIHT);
  CHECK(cfg.d == doctest::Approx(0.1));
  CHECK(cfg.stop_var == doctest::Approx(0.01));

  REQUIRE(obc_solver_config_from_name("fpc_1bit", &cfg) == OBC_OK);
  CHECK(cfg.kind == OBC_SOLVER_FPC_1BIT);

  CHECK(obc_solver_config_from_name("rss", &cfg) == OBC_ERR_SOLVER);
  const std::string msg = obc_last_error();
  CHECK(msg.find("biht") != std::string::npos);
  CHECK(msg.find("fpc_1bit") != std::string::npos);

  CHECK(std::string(obc_solver_kind_name(OBC_SOLVER_BBIHT)) == "bbiht");
}

TEST_CASE("reconstruct restores the stored norm blindly") {
  obc_series* series = nullptr;
  REQUIRE(obc_series_load_csv(fixture_csv().c_str(), "temperature_c", ',',
                              &series) == OBC_OK);
  std::vector<double> x(64);
  REQUIRE(obc_series_window(series, 64, 0, x.data()) == OBC_OK);
  obc_series_destroy(series);

  obc_ensemble* e = nullptr;
  REQUIRE(obc_ensemble_create(64, 96, 4, &e) == OBC_OK);
  obc_measurements* meas = nullptr;
  REQUIRE(obc_encode(e, x.data(), 64, nullptr, &meas) == OBC_OK);

  obc_solver_config cfg;
  REQUIRE(obc_solver_config_from_name("bbiht", &cfg) == OBC_OK);
  std::vector<double> xhat(64);
  int32_t k_used = -1;
  int32_t iterations = -1;
  double hamming = -1.0;
  REQUIRE(obc_reconstruct(meas, e, &cfg, xhat.data(), &k_used, &iterations,
                          &hamming) == OBC_OK);
  REQUIRE(k_used >= 1);
  CHECK(iterations >= 1);
  CHECK(hamming >= 0.0);
  CHECK(hamming <= 1.0);

  double norm = 0.0;
  for (double v : xhat) norm += v * v;
  CHECK(std::sqrt(norm) ==
        doctest::Approx(double(obc_measurements_norm(meas))).epsilon(1e-9));

  // Optional outputs are individually skippable.
  REQUIRE(obc_reconstruct(meas, e, &cfg, xhat.data(), nullptr, nullptr,
                          nullptr) == OBC_OK);

  // biht requires an explicit sparsity level.
  obc_solver_config biht;
  REQUIRE(obc_solver_config_from_name("biht", &biht) == OBC_OK);
  CHECK(obc_reconstruct(meas, e, &biht, xhat.data(), nullptr, nullptr,
                        nullptr) == OBC_ERR_INVALID_ARGUMENT);

  obc_ensemble* other = nullptr;
  REQUIRE(obc_ensemble_create(64, 96, 5, &other) == OBC_OK);
  CHECK(obc_reconstruct(meas, other, &cfg, xhat.data(), nullptr, nullptr,
                        nullptr) == OBC_ERR_ENSEMBLE_MISMATCH);
  obc_ensemble_destroy(other);

  CHECK(obc_reconstruct(meas, e, &cfg, nullptr, nullptr, nullptr, nullptr) ==
        OBC_ERR_INVALID_ARGUMENT);

  obc_measurements_destroy(meas);
  obc_ensemble_destroy(e);
}

TEST_CASE("series ingestion counts skipped rows and windows correctly") {
  const fs::path csv = work_dir() / "trace.csv";
  std::ofstream(csv) << "t,v\n0,1.5\n1,oops\n2,2.5\n3,3.5\n";

  obc_series* series = nullptr;
  REQUIRE(obc_series_load_csv(csv.string().c_str(), "v", ',', &series) ==
          OBC_OK);
  CHECK(obc_series_length(series) == 3);
  CHECK(obc_series_skipped_rows(series) == 1);
  CHECK(std::string(obc_series_source_id(series)).find("trace.csv") !=
        std::string::npos);

  double window[2] = {0.0, 0.0};
  REQUIRE(obc_series_window(series, 2, 1, window) == OBC_OK);
  CHECK(window[0] == 2.5);
  CHECK(window[1] == 3.5);
  CHECK(obc_series_window(series, 2, 2, window) == OBC_ERR_INVALID_ARGUMENT);
  obc_series_destroy(series);
  obc_series_destroy(nullptr);

  CHECK(obc_series_load_csv(csv.string().c_str(), "w", ',', &series) ==
        OBC_ERR_INGESTION);
  CHECK(obc_series_load_csv((work_dir() / "absent.csv").string().c_str(), "v",
                            ',', &series) == OBC_ERR_INGESTION);
}

TEST_CASE("sparsity profile ends at unit cumulative energy") {
  const std::vector<double> x = sample_window(16);
  std::vector<double> coeff(16), prefix(16);
  REQUIRE(obc_sparsity_report(x.data(), 16, coeff.data(), prefix.data()) ==
          OBC_OK);
  CHECK(prefix[15] == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i < 16; ++i) CHECK(prefix[i] >= prefix[i - 1] - 1e-12);
  REQUIRE(obc_sparsity_report(x.data(), 16, nullptr, prefix.data()) == OBC_OK);

  const std::vector<double> zeros(16, 0.0);
  CHECK(obc_sparsity_report(zeros.data(), 16, coeff.data(), prefix.data()) ==
        OBC_ERR_DEGENERATE_INPUT);

  const fs::path out = work_dir() / "profile.csv";
  REQUIRE(obc_sparsity_write_csv(x.data(), 16, out.string().c_str()) == OBC_OK);
  const std::string text = slurp(out);
  CHECK(text.find("index,coefficient,cumulative_energy\n") == 0);
  CHECK(text.rfind(",1.000000\n") == text.size() - 10);
}

TEST_CASE("metric helpers match hand values") {
  const double x[2] = {10.0, 0.0};
  const double xhat[2] = {9.0, 0.0};
  double out = 0.0;
  REQUIRE(obc_snr_db(x, xhat, 2, &out) == OBC_OK);
  CHECK(out == doctest::Approx(20.0).epsilon(1e-12));
  REQUIRE(obc_snr_db(x, x, 2, &out) == OBC_OK);
  CHECK(out == 300.0);
  const double zeros[2] = {0.0, 0.0};
  CHECK(obc_snr_db(zeros, xhat, 2, &out) == OBC_ERR_INVALID_ARGUMENT);
  CHECK(obc_snr_db(x, xhat, 0, &out) == OBC_ERR_INVALID_ARGUMENT);

  REQUIRE(obc_compression_ratio_cs(25, 250, &out) == OBC_OK);
  CHECK(out == 0.1);
  REQUIRE(obc_compression_ratio_1bit(250, 250, &out) == OBC_OK);
  CHECK(out == doctest::Approx(274.0 / 6000.0).epsilon(1e-15));
  CHECK(obc_compression_ratio_cs(0, 250, &out) == OBC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("experiments run through the c api and serialize") {
  const std::vector<double> x = sample_window(16);
  obc_solver_config solver;
  REQUIRE(obc_solver_config_from_name("bbiht", &solver) == OBC_OK);

  const int32_t grid[2] = {8, 12};
  obc_experiment_config cfg;
  cfg.n = 16;
  cfg.m_grid = grid;
  cfg.m_grid_len = 2;
  cfg.trials = 2;
  cfg.master_seed = 5;
  cfg.signal = x.data();
  cfg.signal_id = "unit";
  cfg.solvers = &solver;
  cfg.solver_count = 1;
  cfg.measure_timing = 0;

  obc_report* report = nullptr;
  REQUIRE(obc_run_experiment(&cfg, &report) == OBC_OK);
  REQUIRE(obc_report_row_count(report) == 2);
  CHECK(std::string(obc_report_row_solver(report, 0)) == "bbiht");
  CHECK(obc_report_row_m(report, 0) == 8);
  CHECK(obc_report_row_m(report, 1) == 12);
  CHECK(std::isfinite(obc_report_row_mean_snr_db(report, 0)));
  CHECK(obc_report_row_std_snr_db(report, 0) >= 0.0);
  CHECK(obc_report_row_mean_seconds(report, 0) == 0.0);

  const fs::path csv = work_dir() / "report.csv";
  const fs::path json = work_dir() / "report.json";
  REQUIRE(obc_report_write_csv(report, csv.string().c_str()) == OBC_OK);
  REQUIRE(obc_report_write_json(report, json.string().c_str()) == OBC_OK);
  CHECK(slurp(csv).find("solver,m,trials,") != std::string::npos);
  CHECK(slurp(json).find("\"rows\"") != std::string::npos);
  obc_report_destroy(report);
  obc_report_destroy(nullptr);

  // NULL grid selects the library default.
  cfg.m_grid = nullptr;
  cfg.m_grid_len = 0;
  cfg.trials = 1;
  REQUIRE(obc_run_experiment(&cfg, &report) == OBC_OK);
  CHECK(obc_report_row_count(report) == 20);
  CHECK(obc_report_row_m(report, 0) == 25);
  CHECK(obc_report_row_m(report, 19) == 500);
  obc_report_destroy(report);

  cfg.trials = 0;
  CHECK(obc_run_experiment(&cfg, &report) == OBC_ERR_CONFIG);
  CHECK(obc_run_experiment(nullptr, &report) == OBC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("status names match the diagnostic prefixes") {
  CHECK(std::string(obc_status_name(OBC_OK)) == "ok");
  CHECK(std::string(obc_status_name(OBC_ERR_INGESTION)) == "ingestion");
  CHECK(std::string(obc_status_name(OBC_ERR_FORMAT)) == "format");
  CHECK(std::string(obc_status_name(OBC_ERR_ENSEMBLE_MISMATCH)) ==
        "ensemble_mismatch");
  CHECK(std::string(obc_status_name(OBC_ERR_SOLVER)) == "solver");
  CHECK(std::string(obc_status_name(OBC_ERR_IO)) == "io");
}
