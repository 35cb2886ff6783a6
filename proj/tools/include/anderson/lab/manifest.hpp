// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "anderson/lab/config.hpp"

namespace anderson::lab {

std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_file(const std::filesystem::path& path);

struct OutputFile {
  std::string file;  // name relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct ExperimentManifest {
  RunConfig config;
  std::string hash;
  std::string code_version;
  std::string rng;
  std::string started_at;
  std::string finished_at;
  double elapsed_seconds = 0.0;
  std::string status = "running";  // running | passed | failed | error
  Json checks = Json::array();
  std::string error;
  std::vector<OutputFile> outputs;

  [[nodiscard]] Json to_json() const;
  [[nodiscard]] std::string file_name() const;  // {experiment}-{hash}.manifest.json
  void write(const std::filesystem::path& dir) const;
};

ExperimentManifest begin_manifest(const RunConfig& config);
std::string utc_timestamp();

}  // namespace anderson::lab
