// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/lab/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>

#include "anderson/error.hpp"
#include "anderson/rng.hpp"

#ifndef ANDERSON_VERSION
#define ANDERSON_VERSION "unknown"
#endif

namespace anderson::lab {

std::string sha256_hex(const void* data, std::size_t size) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data, size, md.data(), &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::Io, "SHA-256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::Io, "cannot read " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return sha256_hex(bytes.data(), bytes.size());
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

ExperimentManifest begin_manifest(const RunConfig& config) {
  ExperimentManifest m;
  m.config = config;
  m.hash = config_hash(config);
  m.code_version = ANDERSON_VERSION;
  m.rng = std::string(kRngIdentity);
  m.started_at = utc_timestamp();
  return m;
}

Json ExperimentManifest::to_json() const {
  Json outputs_json = Json::array();
  for (const auto& o : outputs) {
    outputs_json.push_back({{"file", o.file}, {"sha256", o.sha256}, {"bytes", o.bytes}});
  }
  Json j = {{"experiment", config.experiment},
            {"config_hash", hash},
            {"seed", config.seed},
            {"parameters", config.params},
            {"formats", config.formats},
            {"budget_seconds", config.budget_seconds},
            {"threads", config.threads},
            {"rng", rng},
            {"code_version", code_version},
            {"started_at", started_at},
            {"finished_at", finished_at},
            {"elapsed_seconds", elapsed_seconds},
            {"status", status},
            {"checks", checks},
            {"outputs", outputs_json}};
  if (!error.empty()) j["error"] = error;
  return j;
}

std::string ExperimentManifest::file_name() const {
  return config.experiment + "-" + hash + ".manifest.json";
}

void ExperimentManifest::write(const std::filesystem::path& dir) const {
  const auto path = dir / file_name();
  std::ofstream os(path);
  if (!os) fail(ErrorKind::Io, "cannot write " + path.string());
  os << to_json().dump(2) << '\n';
  if (!os) fail(ErrorKind::Io, "failed writing " + path.string());
}

}  // namespace anderson::lab
