// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anderson/lab/config.hpp"
#include "anderson/lab/manifest.hpp"
#include "anderson/lattice.hpp"

namespace anderson::lab {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Plot {
  std::string x;
  std::string y;
  bool log_x = false;
  std::string title;
};

struct ExperimentResult {
  std::string experiment;
  Json summary = Json::object();
  Table table;
  std::optional<Plot> plot;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, Field>> fields;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] const Check* find(const std::string& name) const;
};

std::string render_csv(const Table& table);
/// Line plot of two table columns; axes labelled, optional log-x.
std::string render_svg(const Table& table, const Plot& plot);

/// Writes {experiment}-{hash}.{csv,json,svg} plus one binary file per field,
/// and returns the inventory. Throws Io with the offending path.
std::vector<OutputFile> emit_outputs(const ExperimentResult& result,
                                     const std::vector<std::string>& formats,
                                     const std::filesystem::path& dir, const std::string& hash);

}  // namespace anderson::lab
