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

#ifndef ONEBIT_TESTS_SUPPORT_PLANTED_HPP_
#define ONEBIT_TESTS_SUPPORT_PLANTED_HPP_

#include <Eigen/Dense>
#include <array>
#include <cstdint>

#include "onebit/encoder.hpp"
#include "onebit/transform.hpp"

namespace planted {

/* A known 3-sparse coefficient vector observed through a fresh ensemble.
 * Support {4, 17, 30} is fixed; values come from the value seed so every
 * instance has its own magnitudes.  Index 4 sits inside the blind scan
 * band for n = 50, d = 0.1. */
struct Instance {
  onebit::SensingEnsemble ensemble;
  Eigen::VectorXd s_true;   // unit norm
  Eigen::VectorXd b;        // sign(A s_true)
};

inline Instance make(int n, int m, std::uint64_t ensemble_seed,
                     std::uint64_t value_seed) {
  Instance inst;
  inst.ensemble = onebit::build_ensemble(n, m, ensemble_seed);
  inst.s_true = Eigen::VectorXd::Zero(n);
  onebit::NormalSampler values(value_seed);
  const std::array<int, 3> support = {4, 17, 30};
  for (int idx : support) inst.s_true[idx] = values.next();
  inst.s_true.normalize();
  const Eigen::VectorXd projections = inst.ensemble.a * inst.s_true;
  inst.b.resize(m);
  for (int i = 0; i < m; ++i)
    inst.b[i] = onebit::sign_fn(projections[i]) > 0 ? 1.0 : -1.0;
  return inst;
}

}  // namespace planted

#endif  // ONEBIT_TESTS_SUPPORT_PLANTED_HPP_
