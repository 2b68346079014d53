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

#include <stdexcept>
#include <string>

namespace onebit {

/* Error categories; the C API and the CLI map these one to one onto
 * status codes and exit statuses. */
enum class errc {
  invalid_argument,
  ingestion,
  format,
  ensemble_mismatch,
  degenerate_input,
  config,
  solver,
  io,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_argument: return "invalid_argument";
    case errc::ingestion: return "ingestion";
    case errc::format: return "format";
    case errc::ensemble_mismatch: return "ensemble_mismatch";
    case errc::degenerate_input: return "degenerate_input";
    case errc::config: return "config";
    case errc::solver: return "solver";
    case errc::io: return "io";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

}  // namespace onebit
