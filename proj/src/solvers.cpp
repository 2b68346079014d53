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

#include "onebit/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "onebit/errors.hpp"

namespace onebit {

namespace {

void check_operator(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.rows() < 1 || a.cols() < 1)
    throw error(errc::invalid_argument, "solver: empty operator");
  if (b.size() != a.rows())
    throw error(errc::invalid_argument, "solver: b length does not match rows of a");
  for (Eigen::Index i = 0; i < b.size(); ++i)
    if (b[i] != 1.0 && b[i] != -1.0)
      throw error(errc::invalid_argument, "solver: b entries must be +1 or -1");
}

// Disagreements between sign(y) and b, with sign(0) = +1.
int hamming(const Eigen::VectorXd& y, const Eigen::VectorXd& b) {
  int e = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if ((y[i] >= 0.0 ? 1.0 : -1.0) != b[i]) ++e;
  return e;
}

Eigen::VectorXd sign_of(const Eigen::VectorXd& y) {
  Eigen::VectorXd s(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) s[i] = y[i] >= 0.0 ? 1.0 : -1.0;
  return s;
}

SparseEstimate zero_fallback(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             int iterations, const char* name) {
  SparseEstimate est;
  est.shat = Eigen::VectorXd::Zero(a.cols());
  est.k_used = 0;
  est.iterations = iterations;
  est.hamming_error = hamming(Eigen::VectorXd::Zero(b.size()), b);
  est.solver_name = name;
  return est;
}

SparseEstimate finish(Eigen::VectorXd best, const Eigen::MatrixXd& a,
                      const Eigen::VectorXd& b, int k_used, int iterations,
                      const char* name) {
  if (best.isZero(0.0)) return zero_fallback(a, b, iterations, name);
  SparseEstimate est;
  est.shat = best / best.norm();
  est.k_used = k_used;
  est.iterations = iterations;
  est.hamming_error = hamming(a * est.shat, b);
  est.solver_name = name;
  return est;
}

}  // namespace

Eigen::VectorXd hard_threshold(const Eigen::VectorXd& v, int k) {
  const int n = static_cast<int>(v.size());
  if (k < 1 || k > n)
    throw error(errc::invalid_argument, "hard_threshold: k must be in [1, n]");
  if (k == n) return v;

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int l, int r) {
    const double al = std::abs(v[l]);
    const double ar = std::abs(v[r]);
    return al != ar ? al > ar : l < r;
  });
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < k; ++j) out[order[static_cast<std::size_t>(j)]] = v[order[static_cast<std::size_t>(j)]];
  return out;
}

double sample_variance(const Eigen::VectorXd& v) {
  const Eigen::Index len = v.size();
  if (len < 2)
    throw error(errc::invalid_argument, "sample_variance: need at least 2 values");
  const double mean = v.mean();
  return (v.array() - mean).square().sum() / static_cast<double>(len - 1);
}

SparseEstimate biht(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                    const BihtConfig& cfg) {
  check_operator(a, b);
  const int n = static_cast<int>(a.cols());
  if (cfg.k < 1 || cfg.k > n)
    throw error(errc::invalid_argument, "biht: k must be in [1, n]");
  if (cfg.max_iters < 1)
    throw error(errc::invalid_argument, "biht: max_iters must be >= 1");
  if (!(cfg.step_tau > 0.0))
    throw error(errc::invalid_argument, "biht: step_tau must be > 0");

  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd as = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd best = s;
  int best_err = hamming(as, b);
  int iters = 0;

  for (int t = 1; t <= cfg.max_iters && best_err > 0; ++t) {
    const Eigen::VectorXd grad = a.transpose() * (b - sign_of(as));
    s = hard_threshold(s + (cfg.step_tau / 2.0) * grad, cfg.k);
    as.noalias() = a * s;
    iters = t;
    const int err = hamming(as, b);
    if (err < best_err) {
      best_err = err;
      best = s;
    }
  }
  return finish(std::move(best), a, b, cfg.k, iters, "biht");
}

VarianceScan variance_scan(const Eigen::MatrixXd& solutions, double stop_var) {
  const int cols = static_cast<int>(solutions.cols());
  if (cols < 2)
    throw error(errc::invalid_argument, "variance_scan: need at least 2 columns");
  if (solutions.rows() < cols)
    throw error(errc::invalid_argument,
                "variance_scan: need at least as many rows as columns");

  VarianceScan scan;
  scan.row_variance.resize(cols);
  int first = 0;
  int last = 0;
  for (int i = 1; i <= cols; ++i) {
    const double v = sample_variance(solutions.row(i - 1).transpose());
    scan.row_variance[i - 1] = v;
    if (v > stop_var) {
      last = i;
      if (first == 0) first = i;
    }
  }
  scan.literal_k = last == 0 ? 1 : std::max(last - 1, 1);
  scan.first_exceed_k = first == 0 ? 1 : std::max(first - 1, 1);
  return scan;
}

BbihtTrace bbiht_detailed(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          const BbihtConfig& cfg) {
  check_operator(a, b);
  const int n = static_cast<int>(a.cols());
  if (!(cfg.d > 0.0 && cfg.d < 1.0))
    throw error(errc::invalid_argument, "bbiht: d must be in (0, 1)");
  if (!(cfg.stop_var > 0.0))
    throw error(errc::invalid_argument, "bbiht: stop_var must be > 0");
  const int max_k = static_cast<int>(std::lround(cfg.d * n));
  if (max_k < 1)
    throw error(errc::invalid_argument, "bbiht: round(d * n) must be >= 1");

  BbihtTrace trace;
  trace.solutions.resize(n, max_k);
  std::vector<SparseEstimate> columns;
  columns.reserve(static_cast<std::size_t>(max_k));
  BihtConfig inner = cfg.base;
  for (int k = 1; k <= max_k; ++k) {
    inner.k = k;
    columns.push_back(biht(a, b, inner));
    trace.solutions.col(k - 1) = columns.back().shat;
  }

  int best_k = 1;
  if (max_k >= 2) {
    trace.scan = variance_scan(trace.solutions, cfg.stop_var);
    best_k = cfg.scan_mode == ScanMode::literal ? trace.scan.literal_k
                                                : trace.scan.first_exceed_k;
  }

  trace.estimate = std::move(columns[static_cast<std::size_t>(best_k - 1)]);
  trace.estimate.solver_name = "bbiht";
  // k_used stays 0 when that column is the zero fallback.
  if (trace.estimate.k_used != 0) trace.estimate.k_used = best_k;
  return trace;
}

SparseEstimate bbiht(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                     const BbihtConfig& cfg) {
  return bbiht_detailed(a, b, cfg).estimate;
}

SparseEstimate fpc_1bit(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                        const FpcConfig& cfg) {
  check_operator(a, b);
  if (!(cfg.lambda0 > 0.0) || !(cfg.lambda_growth > 1.0))
    throw error(errc::invalid_argument,
                "fpc_1bit: lambda0 must be > 0 and lambda_growth > 1");
  if (cfg.stages < 1 || cfg.inner_iters < 1)
    throw error(errc::invalid_argument,
                "fpc_1bit: stages and inner_iters must be >= 1");
  if (!(cfg.grad_step > 0.0) || !(cfg.tol > 0.0))
    throw error(errc::invalid_argument, "fpc_1bit: grad_step and tol must be > 0");

  Eigen::VectorXd s = a.transpose() * b;
  if (s.isZero(0.0)) return zero_fallback(a, b, 0, "fpc_1bit");
  s /= s.norm();

  Eigen::VectorXd as = a * s;
  Eigen::VectorXd best = s;
  int best_err = hamming(as, b);
  int iters = 0;

  double lambda = cfg.lambda0;
  for (int stage = 0; stage < cfg.stages; ++stage) {
    const double threshold = cfg.grad_step / lambda;
    for (int it = 0; it < cfg.inner_iters; ++it) {
      // One-sided gradient: only sign-violating entries pull.
      const Eigen::VectorXd residual = (b.array() * as.array()).min(0.0).matrix();
      const Eigen::VectorXd grad =
          a.transpose() * (b.array() * residual.array()).matrix();
      Eigen::VectorXd z = s - (cfg.grad_step * lambda) * grad;
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        const double mag = std::abs(z[i]) - threshold;
        z[i] = mag > 0.0 ? (z[i] > 0.0 ? mag : -mag) : 0.0;
      }
      // Thresholded away entirely: this lambda is too aggressive, move on.
      if (z.isZero(0.0)) break;
      z /= z.norm();
      const double change = (z - s).norm();
      s = std::move(z);
      as.noalias() = a * s;
      ++iters;
      const int err = hamming(as, b);
      if (err < best_err) {
        best_err = err;
        best = s;
      }
      if (change < cfg.tol) break;
    }
    lambda *= cfg.lambda_growth;
  }

  SparseEstimate est = finish(std::move(best), a, b, 0, iters, "fpc_1bit");
  if (!est.shat.isZero(0.0))
    est.k_used = static_cast<int>((est.shat.array() != 0.0).count());
  return est;
}

const char* solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::biht: return "biht";
    case SolverKind::bbiht: return "bbiht";
    case SolverKind::fpc_1bit: return "fpc_1bit";
  }
  return "unknown";
}

SolverConfig solver_from_name(const std::string& name) {
  SolverConfig cfg;
  if (name == "biht")
    cfg.kind = SolverKind::biht;
  else if (name == "bbiht")
    cfg.kind = SolverKind::bbiht;
  else if (name == "fpc_1bit")
    cfg.kind = SolverKind::fpc_1bit;
  else
    throw error(errc::solver, "unknown solver '" + name +
                                  "' (valid: biht, bbiht, fpc_1bit)");
  return cfg;
}

SparseEstimate run_solver(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          const SolverConfig& cfg) {
  switch (cfg.kind) {
    case SolverKind::biht: return biht(a, b, cfg.biht);
    case SolverKind::bbiht: return bbiht(a, b, cfg.bbiht);
    case SolverKind::fpc_1bit: return fpc_1bit(a, b, cfg.fpc);
  }
  throw error(errc::solver, "unknown solver kind");
}

ReconstructResult reconstruct(const SignMeasurements& sm,
                              const SensingEnsemble& ensemble,
                              const SolverConfig& solver) {
  if (sm.n != ensemble.n || sm.m != ensemble.m || sm.seed != ensemble.seed)
    throw error(errc::ensemble_mismatch,
                "reconstruct: measurement metadata (n, m, seed) does not match ensemble");
  if (sm.b.size() != sm.m)
    throw error(errc::invalid_argument, "reconstruct: b length must equal m");

  ReconstructResult res;
  res.estimate = run_solver(ensemble.a, sm.b, solver);
  res.xhat = synthesize(res.estimate.shat, ensemble.psi) *
             static_cast<double>(sm.norm_x);
  return res;
}

}  // namespace onebit
