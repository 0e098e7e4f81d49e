#pragma once

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <string>

#include "ncp1/io/json.hpp"

namespace ncp1::io {

inline constexpr const char* kVersion = "0.1.0";

inline std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

/// Report of one command run. Everything except "timing" is a function of
/// the inputs; the digest covers the canonical dump of the inputs.
struct RunReport {
  std::string command;
  json inputs = json::object();
  json outputs = json::object();
  double seconds = 0;

  json to_json(bool with_timing = true) const {
    json j = {{"schema_version", kSchemaVersion},
              {"command", command},
              {"inputs", inputs},
              {"inputs_digest", sha256_hex(inputs.dump())},
              {"outputs", outputs},
              {"versions", {{"ncp1", kVersion}, {"gmp", gmp_version}}}};
    if (with_timing) j["timing"] = {{"seconds", seconds}};
    return j;
  }

  std::string dump(bool with_timing = true) const { return to_json(with_timing).dump(2) + "\n"; }
};

/// Wall-clock stopwatch for RunReport timing.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace ncp1::io
