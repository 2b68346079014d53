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

#include "onebit/encoder.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <json.hpp>

#include "onebit/errors.hpp"

namespace onebit {

namespace {

constexpr std::uint64_t kMaxWireDim = 1ULL << 28;

std::size_t payload_bytes(int m) { return (static_cast<std::size_t>(m) + 7) / 8; }

[[noreturn]] void bad_format(const std::string& what) {
  throw error(errc::format, ".1bm: " + what);
}

}  // namespace

int sign_fn(double y) {
  if (!std::isfinite(y))
    throw error(errc::invalid_argument, "sign_fn: non-finite input");
  return y >= 0.0 ? 1 : -1;
}

SignMeasurements encode(const Eigen::VectorXd& x, const SensingEnsemble& ensemble,
                        std::string source_id) {
  if (x.size() != ensemble.n)
    throw error(errc::invalid_argument, "encode: x length does not match ensemble n");
  if (!x.allFinite())
    throw error(errc::invalid_argument, "encode: x contains a non-finite reading");

  const Eigen::VectorXd y = ensemble.phi * x;
  SignMeasurements sm;
  sm.b.resize(ensemble.m);
  for (int i = 0; i < ensemble.m; ++i) sm.b[i] = y[i] >= 0.0 ? 1.0 : -1.0;
  sm.norm_x = static_cast<float>(x.norm());
  sm.n = ensemble.n;
  sm.m = ensemble.m;
  sm.seed = ensemble.seed;
  sm.source_id = std::move(source_id);
  return sm;
}

std::vector<std::uint8_t> pack(const SignMeasurements& sm) {
  if (sm.m < 1 || sm.b.size() != sm.m)
    throw error(errc::invalid_argument, "pack: measurement vector length must equal m");
  if (sm.n < 1) throw error(errc::invalid_argument, "pack: n must be >= 1");

  char hex[9];
  std::snprintf(hex, sizeof hex, "%08x", std::bit_cast<std::uint32_t>(sm.norm_x));

  nlohmann::json header;
  header["n"] = sm.n;
  header["m"] = sm.m;
  header["seed"] = sm.seed;
  header["norm_x"] = hex;
  header["source_id"] = sm.source_id;
  const std::string line = header.dump();  // sorted keys, no whitespace

  std::vector<std::uint8_t> out(line.begin(), line.end());
  out.push_back('\n');
  const std::size_t base = out.size();
  out.resize(base + payload_bytes(sm.m), 0);
  for (int i = 0; i < sm.m; ++i) {
    if (sm.b[i] == 1.0)
      out[base + static_cast<std::size_t>(i) / 8] |=
          static_cast<std::uint8_t>(1u << (i % 8));
    else if (sm.b[i] != -1.0)
      throw error(errc::invalid_argument, "pack: measurements must be +1 or -1");
  }
  return out;
}

SignMeasurements unpack(const std::uint8_t* data, std::size_t size) {
  const void* nl = std::memchr(data, '\n', size);
  if (nl == nullptr) bad_format("missing header line terminator");
  const std::size_t header_len =
      static_cast<std::size_t>(static_cast<const std::uint8_t*>(nl) - data);

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(data, data + header_len);
  } catch (const nlohmann::json::exception&) {
    bad_format("malformed header");
  }
  if (!header.is_object() || header.size() != 5 || !header.contains("n") ||
      !header.contains("m") || !header.contains("seed") ||
      !header.contains("norm_x") || !header.contains("source_id"))
    bad_format("header must carry exactly n, m, seed, norm_x, source_id");

  const auto& jn = header["n"];
  const auto& jm = header["m"];
  const auto& jseed = header["seed"];
  if (!jn.is_number_integer() || !jm.is_number_integer() ||
      !(jseed.is_number_unsigned() ||
        (jseed.is_number_integer() && jseed.get<std::int64_t>() >= 0)) ||
      !header["norm_x"].is_string() || !header["source_id"].is_string())
    bad_format("header field has the wrong type");

  const std::int64_t n64 = jn.get<std::int64_t>();
  const std::int64_t m64 = jm.get<std::int64_t>();
  if (n64 < 1 || m64 < 1 || static_cast<std::uint64_t>(n64) > kMaxWireDim ||
      static_cast<std::uint64_t>(m64) > kMaxWireDim)
    bad_format("n and m must be positive");

  const std::string hex = header["norm_x"].get<std::string>();
  if (hex.size() != 8 || hex.find_first_not_of("0123456789abcdefABCDEF") !=
                             std::string::npos)
    bad_format("norm_x must be an 8-hex-digit bit pattern");
  const auto bits =
      static_cast<std::uint32_t>(std::stoul(hex, nullptr, 16));
  const float norm = std::bit_cast<float>(bits);
  if (!std::isfinite(norm) || norm < 0.0f) bad_format("norm_x must be finite and >= 0");

  SignMeasurements sm;
  sm.n = static_cast<int>(n64);
  sm.m = static_cast<int>(m64);
  sm.seed = jseed.get<std::uint64_t>();
  sm.norm_x = norm;
  sm.source_id = header["source_id"].get<std::string>();

  const std::size_t expected = payload_bytes(sm.m);
  const std::size_t have = size - header_len - 1;
  if (have < expected) bad_format("truncated payload");
  if (have > expected) bad_format("trailing bytes after payload");

  const std::uint8_t* payload = data + header_len + 1;
  sm.b.resize(sm.m);
  for (int i = 0; i < sm.m; ++i)
    sm.b[i] = (payload[i / 8] >> (i % 8)) & 1u ? 1.0 : -1.0;
  for (std::size_t i = static_cast<std::size_t>(sm.m); i < expected * 8; ++i)
    if ((payload[i / 8] >> (i % 8)) & 1u) bad_format("nonzero pad bits");
  return sm;
}

SignMeasurements unpack(const std::vector<std::uint8_t>& bytes) {
  return unpack(bytes.data(), bytes.size());
}

void write_measurements_file(const SignMeasurements& sm, const std::string& path) {
  const std::vector<std::uint8_t> bytes = pack(sm);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw error(errc::io, "cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw error(errc::io, "short write: " + path);
}

SignMeasurements read_measurements_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::io, "cannot open: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return unpack(bytes);
}

}  // namespace onebit
