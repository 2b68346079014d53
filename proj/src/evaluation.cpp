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

#include "onebit/evaluation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>

#include "onebit/errors.hpp"

namespace onebit {

namespace {

constexpr double kSnrCapDb = 300.0;

std::uint64_t mix64(std::uint64_t z) {
  // SplitMix64 finalizer.
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

Stats mean_std(const std::vector<double>& v) {
  Stats st;
  if (v.empty()) return st;
  double sum = 0.0;
  for (double x : v) sum += x;
  st.mean = sum / static_cast<double>(v.size());
  if (v.size() < 2) return st;
  double acc = 0.0;
  for (double x : v) acc += (x - st.mean) * (x - st.mean);
  st.stddev = std::sqrt(acc / static_cast<double>(v.size() - 1));
  return st;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

double snr_db(const Eigen::VectorXd& x, const Eigen::VectorXd& xhat) {
  if (x.size() != xhat.size())
    throw error(errc::invalid_argument, "snr_db: length mismatch");
  const double ref = x.norm();
  if (ref == 0.0)
    throw error(errc::invalid_argument, "snr_db: reference signal is zero");
  const double err = (x - xhat).norm();
  if (err == 0.0) return kSnrCapDb;
  return std::min(20.0 * std::log10(ref / err), kSnrCapDb);
}

double compression_ratio_cs(int m, int n) {
  if (m < 1 || n < 1)
    throw error(errc::invalid_argument, "compression_ratio_cs: m and n must be >= 1");
  return static_cast<double>(m) / static_cast<double>(n);
}

double compression_ratio_1bit(int m, int n) {
  if (m < 1 || n < 1)
    throw error(errc::invalid_argument, "compression_ratio_1bit: m and n must be >= 1");
  return (static_cast<double>(m) + 24.0) / (24.0 * static_cast<double>(n));
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, int m, int trial_index) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ static_cast<std::uint64_t>(m));
  h = mix64(h ^ static_cast<std::uint64_t>(trial_index));
  return h;
}

std::vector<int> default_m_grid() {
  std::vector<int> grid;
  for (int m = 25; m <= 500; m += 25) grid.push_back(m);
  return grid;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.n < 1) throw error(errc::config, "experiment: n must be >= 1");
  if (cfg.trials < 1) throw error(errc::config, "experiment: trials must be >= 1");
  if (cfg.signal.size() != cfg.n)
    throw error(errc::config, "experiment: signal length must equal n");
  if (cfg.solvers.empty())
    throw error(errc::config, "experiment: at least one solver is required");
  if (cfg.m_grid.empty()) throw error(errc::config, "experiment: m grid is empty");
  const std::vector<int>& grid = cfg.m_grid;
  for (int m : grid)
    if (m < 1) throw error(errc::config, "experiment: every m must be >= 1");

  ExperimentReport report;
  report.n = cfg.n;
  report.m_grid = grid;
  report.trials = cfg.trials;
  report.master_seed = cfg.master_seed;
  report.signal_id = cfg.signal_id;
  for (const SolverConfig& s : cfg.solvers)
    report.solvers.emplace_back(solver_name(s.kind));

  for (const SolverConfig& solver : cfg.solvers) {
    for (int m : grid) {
      std::vector<double> snrs;
      std::vector<double> times;
      snrs.reserve(static_cast<std::size_t>(cfg.trials));
      times.reserve(static_cast<std::size_t>(cfg.trials));
      for (int trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t seed = derive_trial_seed(cfg.master_seed, m, trial);
        const SensingEnsemble ens = build_ensemble(cfg.n, m, seed);
        const SignMeasurements sm = encode(cfg.signal, ens, cfg.signal_id);

        const auto t0 = std::chrono::steady_clock::now();
        const ReconstructResult res = reconstruct(sm, ens, solver);
        const auto t1 = std::chrono::steady_clock::now();
        const double elapsed =
            cfg.measure_timing
                ? std::chrono::duration<double>(t1 - t0).count()
                : 0.0;

        TrialResult tr;
        tr.solver = solver_name(solver.kind);
        tr.m = m;
        tr.trial_index = trial;
        tr.snr_db = snr_db(cfg.signal, res.xhat);
        tr.elapsed_seconds = elapsed;
        tr.k_used = res.estimate.k_used;
        tr.hamming_fraction =
            static_cast<double>(res.estimate.hamming_error) / static_cast<double>(m);
        report.trial_results.push_back(tr);
        snrs.push_back(tr.snr_db);
        times.push_back(elapsed);
      }

      const Stats snr_stats = mean_std(snrs);
      const Stats time_stats = mean_std(times);
      ReportRow row;
      row.solver = solver_name(solver.kind);
      row.m = m;
      row.trials = cfg.trials;
      row.mean_snr_db = snr_stats.mean;
      row.std_snr_db = snr_stats.stddev;
      row.mean_seconds = time_stats.mean;
      row.std_seconds = time_stats.stddev;
      row.ratio_cs = compression_ratio_cs(m, cfg.n);
      row.ratio_1bit = compression_ratio_1bit(m, cfg.n);
      report.rows.push_back(row);
    }
  }
  return report;
}

void write_report_csv(const ExperimentReport& report, std::ostream& out) {
  out << "# n=" << report.n << '\n';
  out << "# trials=" << report.trials << '\n';
  out << "# master_seed=" << report.master_seed << '\n';
  out << "# source=" << report.signal_id << '\n';
  out << "# m_grid=" << join_ints(report.m_grid) << '\n';
  out << "# solvers=";
  for (std::size_t i = 0; i < report.solvers.size(); ++i)
    out << (i ? "," : "") << report.solvers[i];
  out << '\n';
  out << "solver,m,trials,mean_snr_db,std_snr_db,mean_seconds,ratio_cs,ratio_1bit\n";
  char buf[256];
  for (const ReportRow& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.6f,%.6f,%.6f,%.6g,%.6g",
                  r.solver.c_str(), r.m, r.trials, r.mean_snr_db, r.std_snr_db,
                  r.mean_seconds, r.ratio_cs, r.ratio_1bit);
    out << buf << '\n';
  }
}

void write_report_json(const ExperimentReport& report, std::ostream& out) {
  nlohmann::json j;
  j["config"]["n"] = report.n;
  j["config"]["m_grid"] = report.m_grid;
  j["config"]["trials"] = report.trials;
  j["config"]["master_seed"] = report.master_seed;
  j["config"]["source"] = report.signal_id;
  j["config"]["solvers"] = report.solvers;
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& r : report.rows) {
    nlohmann::json row;
    row["solver"] = r.solver;
    row["m"] = r.m;
    row["trials"] = r.trials;
    row["mean_snr_db"] = r.mean_snr_db;
    row["std_snr_db"] = r.std_snr_db;
    row["mean_seconds"] = r.mean_seconds;
    row["ratio_cs"] = r.ratio_cs;
    row["ratio_1bit"] = r.ratio_1bit;
    rows.push_back(row);
  }
  j["rows"] = rows;
  out << j.dump(2) << '\n';
}

}  // namespace onebit
