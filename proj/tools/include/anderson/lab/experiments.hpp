// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <filesystem>

#include "anderson/lab/config.hpp"
#include "anderson/lab/manifest.hpp"
#include "anderson/lab/outputs.hpp"

namespace anderson::lab {

/// Cooperative wall-clock cap, checked between experiment stages.
class Budget {
 public:
  explicit Budget(double seconds);
  void check(const char* stage) const;
  [[nodiscard]] double elapsed() const;

 private:
  std::chrono::steady_clock::time_point start_;
  double seconds_;
};

ExperimentResult run_experiment(const RunConfig& config, const Budget& budget);

struct RunOutcome {
  ExperimentResult result;
  ExperimentManifest manifest;
};

/// Writes the manifest, runs, emits outputs and finalizes the manifest.
RunOutcome run_and_record(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace anderson::lab
