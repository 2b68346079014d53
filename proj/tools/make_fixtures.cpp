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

/* Regenerates the synthetic traces under data/.  Seeds are fixed so the
 * committed files are reproducible bit for bit. */

#include <cstdio>
#include <filesystem>
#include <string>

#include "onebit/datasets.hpp"

namespace {

int write_trace(const std::string& path, onebit::FixtureKind kind,
                std::uint64_t seed) {
  const Eigen::VectorXd x = onebit::fixture_trace(kind, 250, seed);
  std::FILE* out = std::fopen(path.c_str(), "wb");
  if (out == nullptr) {
    std::fprintf(stderr, "cannot open %s\n", path.c_str());
    return 1;
  }
  std::fprintf(out, "index,temperature_c\n");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    std::fprintf(out, "%lld,%.17g\n", static_cast<long long>(i), x[i]);
  std::fclose(out);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "data";
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  int rc = write_trace(dir + "/sparse_head_fixture.csv",
                       onebit::FixtureKind::sparse_head, 7);
  rc |= write_trace(dir + "/slow_decay_fixture.csv",
                    onebit::FixtureKind::slow_decay, 9);
  return rc;
}
