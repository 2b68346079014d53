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

#include "onebit/transform.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "onebit/errors.hpp"

namespace onebit {

namespace {
// Dense matrices only; keeps a bad n/m from turning into a giant allocation.
constexpr long long kMaxDenseEntries = 1LL << 25;
}  // namespace

double NormalSampler::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  for (;;) {
    const double u = 2.0 * uniform01() - 1.0;
    const double v = 2.0 * uniform01() - 1.0;
    const double r2 = u * u + v * v;
    if (r2 >= 1.0 || r2 == 0.0) continue;
    const double f = std::sqrt(-2.0 * std::log(r2) / r2);
    cached_ = v * f;
    has_cached_ = true;
    return u * f;
  }
}

Eigen::MatrixXd gaussian_matrix(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1)
    throw error(errc::invalid_argument, "gaussian_matrix: m and n must be >= 1");
  if (static_cast<long long>(m) * n > kMaxDenseEntries)
    throw error(errc::invalid_argument,
                "gaussian_matrix: m * n too large for a dense ensemble");

  NormalSampler sampler(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  Eigen::MatrixXd phi(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) phi(i, j) = scale * sampler.next();
  return phi;
}

Eigen::MatrixXd dct_synthesis_matrix(int n) {
  if (n < 1) throw error(errc::invalid_argument, "dct_synthesis_matrix: n must be >= 1");

  const double c0 = std::sqrt(1.0 / n);
  const double c = std::sqrt(2.0 / n);
  Eigen::MatrixXd psi(n, n);
  for (int j = 0; j < n; ++j) {
    psi(j, 0) = c0;
    for (int i = 1; i < n; ++i)
      psi(j, i) =
          c * std::cos(std::numbers::pi * (2.0 * j + 1.0) * i / (2.0 * n));
  }
  return psi;
}

Eigen::VectorXd analyze(const Eigen::VectorXd& x, const Eigen::MatrixXd& psi) {
  if (x.size() != psi.rows())
    throw error(errc::invalid_argument, "analyze: x length does not match basis");
  return psi.transpose() * x;
}

Eigen::VectorXd synthesize(const Eigen::VectorXd& s, const Eigen::MatrixXd& psi) {
  if (s.size() != psi.cols())
    throw error(errc::invalid_argument, "synthesize: s length does not match basis");
  return psi * s;
}

SensingEnsemble build_ensemble(int n, int m, std::uint64_t seed, BasisKind basis) {
  SensingEnsemble e;
  e.n = n;
  e.m = m;
  e.seed = seed;
  e.phi = gaussian_matrix(m, n, seed);
  e.psi = basis == BasisKind::dct ? dct_synthesis_matrix(n)
                                  : Eigen::MatrixXd::Identity(n, n);
  e.a = e.phi * e.psi;
  return e;
}

SensingEnsemble ensemble_from_matrices(Eigen::MatrixXd phi, Eigen::MatrixXd psi,
                                       std::uint64_t seed) {
  if (psi.rows() != psi.cols() || psi.rows() < 1)
    throw error(errc::invalid_argument, "ensemble_from_matrices: psi must be square");
  if (phi.cols() != psi.rows() || phi.rows() < 1)
    throw error(errc::invalid_argument,
                "ensemble_from_matrices: phi columns must match psi rows");
  const Eigen::MatrixXd gram = psi.transpose() * psi;
  const double dev = (gram - Eigen::MatrixXd::Identity(psi.rows(), psi.cols()))
                         .cwiseAbs()
                         .maxCoeff();
  if (dev > 1e-12)
    throw error(errc::invalid_argument,
                "ensemble_from_matrices: psi columns are not orthonormal");

  SensingEnsemble e;
  e.n = static_cast<int>(psi.rows());
  e.m = static_cast<int>(phi.rows());
  e.seed = seed;
  e.phi = std::move(phi);
  e.psi = std::move(psi);
  e.a = e.phi * e.psi;
  return e;
}

}  // namespace onebit
