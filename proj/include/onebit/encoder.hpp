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
#include <string>
#include <vector>

#include "onebit/transform.hpp"

namespace onebit {

/* One encoded window: m signs plus the l2 norm side channel.
 *
 * norm_x is kept in single precision because that is the wire precision of
 * the .1bm format; pack/unpack then round-trips every field exactly.
 * Entries of b are exactly +1.0 or -1.0. */
struct SignMeasurements {
  Eigen::VectorXd b;
  float norm_x = 0.0f;
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::string source_id;
};

/* Sign with the tie at zero resolved upward: y >= 0 maps to +1, y < 0 to
 * -1.  Rejects non-finite input. */
int sign_fn(double y);

/* b = sign(phi x) elementwise, norm_x = |x|_2. */
SignMeasurements encode(const Eigen::VectorXd& x, const SensingEnsemble& ensemble,
                        std::string source_id = {});

/* .1bm wire format.
 *
 * One UTF-8 JSON header line terminated by '\n' with keys
 * {"m", "n", "norm_x", "seed", "source_id"}; norm_x is the 8-hex-digit
 * IEEE-754 single precision bit pattern.  Then ceil(m/8) payload bytes:
 * measurement i occupies bit (i mod 8), LSB first, of byte floor(i/8),
 * with +1 stored as a set bit.  Pad bits in the last byte are zero.
 *
 * unpack rejects a truncated or oversized payload, a malformed header,
 * and nonzero pad bits. */
std::vector<std::uint8_t> pack(const SignMeasurements& sm);
SignMeasurements unpack(const std::uint8_t* data, std::size_t size);
SignMeasurements unpack(const std::vector<std::uint8_t>& bytes);

void write_measurements_file(const SignMeasurements& sm, const std::string& path);
SignMeasurements read_measurements_file(const std::string& path);

}  // namespace onebit
