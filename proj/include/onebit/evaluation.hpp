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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "onebit/solvers.hpp"

namespace onebit {

/* 20 log10(|x| / |x - xhat|), capped at +300 dB; exact recovery returns
 * the cap.  A zero reference signal is rejected. */
double snr_db(const Eigen::VectorXd& x, const Eigen::VectorXd& xhat);

/* Measurement-count ratio of plain compressive gathering: m / n. */
double compression_ratio_cs(int m, int n);

/* Sign payload plus a 24-bit norm side channel versus 24-bit raw values:
 * (m + 24) / (24 n). */
double compression_ratio_1bit(int m, int n);

/* Per-trial seed: SplitMix64 finalizer chained over (master_seed, m,
 * trial_index).  Stable across platforms and evaluation order. */
std::uint64_t derive_trial_seed(std::uint64_t master_seed, int m, int trial_index);

struct TrialResult {
  std::string solver;
  int m = 0;
  int trial_index = 0;
  double snr_db = 0.0;
  double elapsed_seconds = 0.0;
  int k_used = 0;
  double hamming_fraction = 0.0;
};

struct ReportRow {
  std::string solver;
  int m = 0;
  int trials = 0;
  double mean_snr_db = 0.0;
  double std_snr_db = 0.0;
  double mean_seconds = 0.0;
  double std_seconds = 0.0;
  double ratio_cs = 0.0;
  double ratio_1bit = 0.0;
};

struct ExperimentConfig {
  int n = 250;
  std::vector<int> m_grid;  // must be nonempty; default_m_grid() is the usual choice
  int trials = 20;
  std::uint64_t master_seed = 1;
  Eigen::VectorXd signal;  // length n
  std::string signal_id;
  std::vector<SolverConfig> solvers;
  /* When false, elapsed_seconds fields are reported as exactly 0 so two
   * runs with the same seed serialize byte-identically. */
  bool measure_timing = true;
};

struct ExperimentReport {
  // Config echo (the signal itself is represented by its id).
  int n = 0;
  std::vector<int> m_grid;
  int trials = 0;
  std::uint64_t master_seed = 0;
  std::string signal_id;
  std::vector<std::string> solvers;

  std::vector<TrialResult> trial_results;
  std::vector<ReportRow> rows;
};

/* Each trial draws a fresh ensemble from derive_trial_seed and encodes the
 * same signal; timing wraps the reconstruct call only.  Rows aggregate
 * mean and sample standard deviation per (solver, m). */
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/* CSV: '#'-prefixed config echo, then
 * solver,m,trials,mean_snr_db,std_snr_db,mean_seconds,ratio_cs,ratio_1bit */
void write_report_csv(const ExperimentReport& report, std::ostream& out);

/* JSON object mirroring the CSV fields plus the config echo. */
void write_report_json(const ExperimentReport& report, std::ostream& out);

/* 25, 50, ..., 500. */
std::vector<int> default_m_grid();

}  // namespace onebit
