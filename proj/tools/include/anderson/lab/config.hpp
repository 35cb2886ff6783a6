// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace anderson::lab {

using Json = nlohmann::json;

/// Validated run configuration; `params` holds the defaults of the kind
/// overlaid with the user's values.
struct RunConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  double budget_seconds = 600.0;
  std::vector<std::string> formats{"csv", "json"};
  unsigned threads = 0;  // 0 = hardware concurrency
  Json params = Json::object();

  /// Canonical document (sorted keys) that fully determines the outputs.
  [[nodiscard]] Json canonical() const;
};

/// Names of all experiment kinds.
const std::vector<std::string>& experiment_kinds();

/// Default parameters of a kind; throws SchemaViolation for unknown kinds.
Json default_params(const std::string& kind);

/// Validates `doc` (unknown keys and type mismatches are rejected, naming the
/// key) and fills defaults. `fallback_kind` applies when `experiment` is absent.
RunConfig parse_config(const Json& doc, const std::string& fallback_kind = {},
                       std::optional<std::uint64_t> seed_override = std::nullopt);

/// First 16 hex digits of the SHA-256 of canonical().dump().
std::string config_hash(const RunConfig& config);

}  // namespace anderson::lab
