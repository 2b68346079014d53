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

#include <string>

#include "onebit/encoder.hpp"
#include "onebit/transform.hpp"

namespace onebit {

/* Solver output in the coefficient domain.
 *
 * shat is unit l2 norm except for the all-zero fallback, which is flagged
 * by k_used = 0.  hamming_error counts sign(a shat) entries that disagree
 * with b, using the same sign(0) = +1 convention as the encoder.  For
 * fpc_1bit, which has no explicit sparsity target, k_used is the number
 * of nonzeros in shat. */
struct SparseEstimate {
  Eigen::VectorXd shat;
  int k_used = 0;
  int iterations = 0;
  int hamming_error = 0;
  std::string solver_name;
};

struct BihtConfig {
  int k = 0;  // target sparsity, must be set to >= 1
  int max_iters = 100;
  double step_tau = 1.0;
};

enum class ScanMode {
  /* Every row whose variance exceeds stop_var overwrites best_k with
   * row - 1; the last crossing wins. */
  literal,
  /* Stop at the first crossing. */
  first_exceed,
};

struct BbihtConfig {
  double d = 0.1;          // sparsity ratio bound; max_K = round(d * n)
  double stop_var = 0.01;  // row variance threshold
  ScanMode scan_mode = ScanMode::literal;
  BihtConfig base;         // k is ignored; iteration budget for inner runs
};

struct FpcConfig {
  double lambda0 = 1.0;
  double lambda_growth = 2.0;
  int stages = 10;
  int inner_iters = 200;
  double grad_step = 1.0;
  double tol = 1e-6;
};

/* Keeps the k largest-magnitude entries of v and zeroes the rest; equal
 * magnitudes keep the lower index. */
Eigen::VectorXd hard_threshold(const Eigen::VectorXd& v, int k);

/* Unbiased sample variance (divisor L - 1); requires length >= 2. */
double sample_variance(const Eigen::VectorXd& v);

/* Binary iterative hard thresholding.  From s = 0, iterate
 *   s <- hard_threshold(s + (tau / 2) * a^T (b - sign(a s)), k)
 * tracking the iterate with the fewest sign disagreements; stops early at
 * zero disagreement.  The best iterate is returned unit-normalized with
 * its Hamming error recomputed after normalization. */
SparseEstimate biht(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                    const BihtConfig& cfg);

/* Row variance scan over the first K rows of an n x K solution matrix
 * whose column k-1 is the estimate at sparsity k. */
struct VarianceScan {
  Eigen::VectorXd row_variance;  // length K
  int literal_k = 1;
  int first_exceed_k = 1;
};

VarianceScan variance_scan(const Eigen::MatrixXd& solutions, double stop_var);

/* Blind BIHT: runs biht for k = 1..max_K, scans the solution matrix row
 * variances, and returns the column at the selected sparsity. */
SparseEstimate bbiht(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                     const BbihtConfig& cfg);

/* bbiht plus its intermediate solution matrix and scan, for diagnostics. */
struct BbihtTrace {
  SparseEstimate estimate;
  Eigen::MatrixXd solutions;  // n x max_K
  VarianceScan scan;
};

BbihtTrace bbiht_detailed(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          const BbihtConfig& cfg);

/* Fixed-point continuation for the relaxed one-sided objective
 *   min |s|_1 + lambda * sum_i f((b o a s)_i),  f(x) = x^2 / 2 for x < 0
 * on the unit sphere.  Starts from a^T b normalized (zero is a fixed point
 * of the iteration, so it cannot be the start), alternates a gradient step
 * scaled by lambda * grad_step with soft thresholding at grad_step / lambda
 * and renormalization, growing lambda by lambda_growth each stage.  Returns
 * the best-consistency iterate seen. */
SparseEstimate fpc_1bit(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                        const FpcConfig& cfg);

enum class SolverKind { biht, bbiht, fpc_1bit };

const char* solver_name(SolverKind kind);

struct SolverConfig {
  SolverKind kind = SolverKind::bbiht;
  BihtConfig biht;
  BbihtConfig bbiht;
  FpcConfig fpc;
};

/* Accepts "biht", "bbiht", "fpc_1bit"; anything else is a solver error
 * listing the valid names. */
SolverConfig solver_from_name(const std::string& name);

SparseEstimate run_solver(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          const SolverConfig& cfg);

/* Blind reconstruction: solve in the coefficient domain, synthesize, and
 * restore the recorded norm: xhat = psi shat * norm_x.  The measurement
 * metadata (n, m, seed) must match the ensemble. */
struct ReconstructResult {
  Eigen::VectorXd xhat;
  SparseEstimate estimate;
};

ReconstructResult reconstruct(const SignMeasurements& sm,
                              const SensingEnsemble& ensemble,
                              const SolverConfig& solver);

}  // namespace onebit
