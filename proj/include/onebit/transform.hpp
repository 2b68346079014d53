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

#include <Eigen/Core>
#include <cstdint>
#include <random>

namespace onebit {

/* Deterministic N(0,1) stream.
 *
 * Built on std::mt19937_64, whose output sequence is fixed by the C++
 * standard, so the stream depends only on the seed.  Normal deviates come
 * from the Marsaglia polar method: draw (u, v) uniform on [-1,1)^2, accept
 * when 0 < r2 = u^2 + v^2 < 1, and return u * sqrt(-2 ln(r2) / r2),
 * caching the v branch for the next call.  std::normal_distribution is
 * avoided on purpose: its algorithm is implementation defined and would
 * break seed-stable regeneration across standard libraries. */
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

  double next();

 private:
  double uniform01() {
    // 53-bit mantissa draw in [0, 1).
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/* m x n matrix with i.i.d. N(0, 1/m) entries, filled row major from
 * NormalSampler(seed).  Same (m, n, seed) regenerates the same matrix. */
Eigen::MatrixXd gaussian_matrix(int m, int n, std::uint64_t seed);

/* Orthonormal type-II DCT synthesis basis: psi = D^T where the analysis
 * matrix D has rows D[0,j] = sqrt(1/n) and, for i >= 1,
 * D[i,j] = sqrt(2/n) * cos(pi * (2j + 1) * i / (2n)). */
Eigen::MatrixXd dct_synthesis_matrix(int n);

/* Coefficients of x in the basis: s = psi^T x. */
Eigen::VectorXd analyze(const Eigen::VectorXd& x, const Eigen::MatrixXd& psi);

/* Signal from coefficients: x = psi s. */
Eigen::VectorXd synthesize(const Eigen::VectorXd& s, const Eigen::MatrixXd& psi);

enum class BasisKind { dct, identity };

/* Measurement operator bundle.  a = phi * psi is cached so solvers work
 * directly in the coefficient domain. */
struct SensingEnsemble {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd phi;  // m x n sensing matrix
  Eigen::MatrixXd psi;  // n x n synthesis basis
  Eigen::MatrixXd a;    // phi * psi
};

SensingEnsemble build_ensemble(int n, int m, std::uint64_t seed,
                               BasisKind basis = BasisKind::dct);

/* Assembles an ensemble from explicit matrices (psi must have orthonormal
 * columns).  Intended for tests and callers with custom operators. */
SensingEnsemble ensemble_from_matrices(Eigen::MatrixXd phi, Eigen::MatrixXd psi,
                                       std::uint64_t seed = 0);

}  // namespace onebit
