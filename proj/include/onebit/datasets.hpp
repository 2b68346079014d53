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

#include "onebit/transform.hpp"

namespace onebit {

struct TraceSeries {
  std::vector<double> values;
  long skipped_rows = 0;
  std::string source_id;
};

/* Selects a CSV column either by 0-based index or by header name.  Name
 * selection consumes the first row as the header. */
struct ColumnSelector {
  static ColumnSelector index(int i) { return {true, i, {}}; }
  static ColumnSelector name(std::string n) { return {false, 0, std::move(n)}; }

  bool by_index = true;
  int idx = 0;
  std::string header;
};

/* Rows whose selected field is missing, empty, or non-numeric are skipped
 * and counted.  Missing file, unknown column, or zero parsed rows raise
 * ingestion errors. */
TraceSeries load_csv_trace(const std::string& path, const ColumnSelector& column,
                           char delimiter = ',');

struct TraceWindow {
  Eigen::VectorXd values;
  std::string source_id;
  long start_index = 0;
};

TraceWindow window(const TraceSeries& series, int n, long start);

struct SparsityReport {
  Eigen::VectorXd coefficients;   // psi^T x
  Eigen::VectorXd energy_prefix;  // entry K: fraction of energy in coefficients 0..K
};

/* Rejects an all-zero window (degenerate input). */
SparsityReport sparsity_report(const TraceWindow& w, const Eigen::MatrixXd& psi);

/* CSV rows: index, coefficient, cumulative_energy. */
void write_sparsity_csv(const SparsityReport& report, std::ostream& out);

/* Deterministic synthetic traces on a temperature-like scale, built by
 * synthesizing a fixed coefficient profile plus seeded noise.
 *
 * sparse_head: first four coefficients carry >= 99.97% of the energy.
 * slow_decay: polynomially decaying coefficients, less compressible. */
enum class FixtureKind { sparse_head, slow_decay };

Eigen::VectorXd fixture_trace(FixtureKind kind, int n, std::uint64_t seed);

}  // namespace onebit
