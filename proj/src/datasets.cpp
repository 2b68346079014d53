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

#include "onebit/datasets.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "onebit/errors.hpp"

namespace onebit {

namespace {

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return {};
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(delimiter, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

bool parse_value(const std::string& token, double& out) {
  const std::string t = trim(token);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::string basename_of(const std::string& path) {
  const auto pos = path.find_last_of("/\\");
  return pos == std::string::npos ? path : path.substr(pos + 1);
}

}  // namespace

TraceSeries load_csv_trace(const std::string& path, const ColumnSelector& column,
                           char delimiter) {
  std::ifstream in(path);
  if (!in) throw error(errc::ingestion, "cannot open trace: " + path);

  TraceSeries series;
  series.source_id = basename_of(path);

  std::string line;
  bool saw_first = false;
  int col = column.by_index ? column.idx : -1;
  if (column.by_index && col < 0)
    throw error(errc::ingestion, "column index out of range");

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split(line, delimiter);

    if (!saw_first) {
      saw_first = true;
      if (column.by_index) {
        if (col >= static_cast<int>(fields.size()))
          throw error(errc::ingestion, "column index out of range");
        // First row is data; fall through.
      } else {
        for (std::size_t i = 0; i < fields.size(); ++i)
          if (trim(fields[i]) == column.header) col = static_cast<int>(i);
        if (col < 0)
          throw error(errc::ingestion,
                      "column '" + column.header + "' not found in header");
        continue;
      }
    }

    double v = 0.0;
    if (col < static_cast<int>(fields.size()) && parse_value(fields[static_cast<std::size_t>(col)], v))
      series.values.push_back(v);
    else
      ++series.skipped_rows;
  }

  if (series.values.empty())
    throw error(errc::ingestion, "no numeric rows parsed from " + path);
  return series;
}

TraceWindow window(const TraceSeries& series, int n, long start) {
  if (n < 1) throw error(errc::invalid_argument, "window: n must be >= 1");
  if (start < 0 ||
      start + n > static_cast<long>(series.values.size()))
    throw error(errc::invalid_argument, "window: [start, start + n) out of range");

  TraceWindow w;
  w.values.resize(n);
  for (int i = 0; i < n; ++i)
    w.values[i] = series.values[static_cast<std::size_t>(start + i)];
  w.source_id = series.source_id;
  w.start_index = start;
  return w;
}

SparsityReport sparsity_report(const TraceWindow& w, const Eigen::MatrixXd& psi) {
  if (w.values.size() != psi.rows())
    throw error(errc::invalid_argument, "sparsity_report: window length does not match basis");
  if (w.values.isZero(0.0))
    throw error(errc::degenerate_input, "sparsity_report: all-zero window");

  SparsityReport report;
  report.coefficients = analyze(w.values, psi);
  const double total = report.coefficients.squaredNorm();
  report.energy_prefix.resize(report.coefficients.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < report.coefficients.size(); ++i) {
    acc += report.coefficients[i] * report.coefficients[i];
    report.energy_prefix[i] = acc / total;
  }
  return report;
}

void write_sparsity_csv(const SparsityReport& report, std::ostream& out) {
  out << "index,coefficient,cumulative_energy\n";
  char buf[64];
  for (Eigen::Index i = 0; i < report.coefficients.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%lld,%.10g,%.6f", static_cast<long long>(i),
                  report.coefficients[i], report.energy_prefix[i]);
    out << buf << '\n';
  }
}

Eigen::VectorXd fixture_trace(FixtureKind kind, int n, std::uint64_t seed) {
  if (n < 8) throw error(errc::invalid_argument, "fixture_trace: n must be >= 8");

  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  NormalSampler noise(seed);
  if (kind == FixtureKind::sparse_head) {
    // Four dominant coefficients, ~99.98% of the energy for n = 250.
    // Magnitudes are deliberately non monotone in index so the blind
    // variance scan settles on the three large ones; the index 2 entry
    // plus the seeded tail bound the blind reconstruction floor near
    // 25 dB instead of snapping every trial to one exact basis vector.
    s[0] = 240.0;
    s[1] = -118.0;
    s[2] = 16.0;
    s[3] = -176.0;
    for (int i = 4; i < n; ++i) s[i] = 0.3 * noise.next();
  } else {
    s[0] = 310.0;
    for (int i = 1; i < n; ++i) {
      const double mag = 40.0 * std::pow(static_cast<double>(i + 1), -1.1);
      s[i] = noise.next() >= 0.0 ? mag : -mag;
    }
  }
  return synthesize(s, dct_synthesis_matrix(n));
}

}  // namespace onebit
