// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/lab/config.hpp"

#include <algorithm>

#include "anderson/error.hpp"
#include "anderson/lab/manifest.hpp"

namespace anderson::lab {
namespace {

Json defaults_for(const std::string& kind) {
  if (kind == "renorm2d_rate") {
    return {{"epsilons", {0.125, 0.0625, 0.03125, 0.015625, 0.0078125}},
            {"extent", 4.5},
            {"cells_per_epsilon", 6.0},
            {"max_points", 4096},
            {"slope_tolerance", 0.10}};
  }
  if (kind == "renorm3d_rate") {
    return {{"epsilons", {0.25, 0.125, 0.0625, 0.03125}},
            {"c1_epsilons", {0.25, 0.125, 0.0625}},
            {"extent", 4.0},
            {"cells_per_epsilon", 4.0},
            {"mc_epsilon", 0.5},
            {"mc_samples", 64},
            {"c_tolerance", 0.15},
            {"c1_tolerance", 0.25}};
  }
  if (kind == "enhanced_cauchy") {
    return {{"epsilons", {0.5, 0.25, 0.125, 0.0625}},
            {"extent", 8.0},
            {"points", 512},
            {"seeds", 8},
            {"kappa", 0.5}};
  }
  if (kind == "semigroup_props") {
    return {{"extent", 8.0},
            {"points", 32},
            {"amplitude", 0.5},
            {"t", 0.25},
            {"s", 0.1},
            {"dts", {4e-4, 2e-4, 1e-4}},
            {"composition_dt", 1e-3},
            {"symmetry_tolerance", 1e-6},
            {"composition_tolerance", 1e-12}};
  }
  if (kind == "two_route_oracle") {
    return {{"points", {16, 64}},
            {"tolerances", {1e-5, 1e-3}},
            {"extent", 8.0},
            {"epsilon", 2.0},
            {"times", {0.1, 0.25, 0.5}},
            {"dt", 1e-3},
            {"scheme", "strang"},
            {"laplacian", "spectral"}};
  }
  if (kind == "weyl_sweep") {
    return {{"flat_extent", 64.0},
            {"flat_points", 1024},
            {"flat_level", 1.0},
            {"flat_radii", {1.0, 2.0, 4.0, 8.0}},
            {"quarter_tolerance", 0.2},
            {"random_extent", 64.0},
            {"random_points", 256},
            {"epsilon", 1.0},
            {"random_radii", {1.0, 2.0, 4.0}},
            {"seeds", 8}};
  }
  if (kind == "ids_coverage") {
    return {{"extents", {8.0, 16.0, 32.0}},
            {"spacing", 0.5},
            {"epsilon", 2.0},
            {"seeds", 8},
            {"interval", {-5.0, 20.0}},
            {"coverage_radius", 0.5},
            {"coverage_target", 0.95},
            {"laplacian", "fd2"}};
  }
  if (kind == "resonance_sweep") {
    return {{"c", 1.0},
            {"deltas", {0.3, 0.2, 0.1, 0.05, 0.02, 0.01}},
            {"overlap_grid", {0.5, 0.25, 0.1, 0.05, 0.01, 0.001}},
            {"residual_tolerance", 1e-8}};
  }
  if (kind == "shift_identities") {
    return {{"extent", 8.0},
            {"points", 64},
            {"epsilon", 0.5},
            {"shifts", {{3, 5}, {17, -4}}},
            {"tolerance", 1e-10},
            {"identity_tolerance", 1e-12},
            {"spectral_points", 16},
            {"spectral_epsilon", 2.0},
            {"spectral_tolerance", 1e-9}};
  }
  if (kind == "sample") {
    return {{"dim", 2}, {"extent", 8.0}, {"points", 64}, {"epsilon", 0.0}, {"stream", 0}};
  }
  if (kind == "enhance") {
    return {{"extent", 8.0}, {"points", 64}, {"epsilon", 0.5}, {"stream", 0}};
  }
  if (kind == "solve") {
    return {{"dim", 2},       {"extent", 8.0},         {"points", 64},
            {"epsilon", 1.0}, {"t", 0.5},              {"dt", 1e-3},
            {"stream", 0},    {"scheme", "exp_euler"}, {"laplacian", "spectral"}};
  }
  fail(ErrorKind::SchemaViolation, "unknown experiment kind '" + kind + "'");
}

bool same_type(const Json& expected, const Json& given) {
  if (expected.is_number_float()) return given.is_number();
  if (expected.is_number_integer()) return given.is_number_integer();
  if (expected.is_array()) {
    if (!given.is_array()) return false;
    if (expected.empty()) return true;
    return std::all_of(given.begin(), given.end(),
                       [&](const Json& g) { return same_type(expected.front(), g); });
  }
  return expected.type() == given.type();
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds{
      "renorm2d_rate",   "renorm3d_rate",  "enhanced_cauchy", "semigroup_props",
      "two_route_oracle", "weyl_sweep",    "ids_coverage",    "resonance_sweep",
      "shift_identities", "sample",        "enhance",         "solve"};
  return kinds;
}

Json default_params(const std::string& kind) { return defaults_for(kind); }

Json RunConfig::canonical() const {
  return {{"experiment", experiment}, {"seed", seed}, {"params", params}};
}

RunConfig parse_config(const Json& doc, const std::string& fallback_kind,
                       std::optional<std::uint64_t> seed_override) {
  require(doc.is_object(), ErrorKind::SchemaViolation, "config must be a JSON object");
  static const std::vector<std::string> top{"experiment", "seed",    "budget_seconds",
                                            "formats",    "threads", "params"};
  for (const auto& [key, value] : doc.items()) {
    require(std::find(top.begin(), top.end(), key) != top.end(), ErrorKind::SchemaViolation,
            "unknown config key '" + key + "'");
  }
  RunConfig cfg;
  if (doc.contains("experiment")) {
    require(doc["experiment"].is_string(), ErrorKind::SchemaViolation,
            "config key 'experiment' must be a string");
    cfg.experiment = doc["experiment"].get<std::string>();
  } else {
    cfg.experiment = fallback_kind;
  }
  require(!cfg.experiment.empty(), ErrorKind::SchemaViolation, "config key 'experiment' missing");
  cfg.params = defaults_for(cfg.experiment);

  if (doc.contains("seed")) {
    require(doc["seed"].is_number_unsigned() || doc["seed"].is_number_integer(),
            ErrorKind::SchemaViolation, "config key 'seed' must be an integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (seed_override) cfg.seed = *seed_override;
  if (doc.contains("budget_seconds")) {
    require(doc["budget_seconds"].is_number() && doc["budget_seconds"].get<double>() > 0.0,
            ErrorKind::SchemaViolation, "config key 'budget_seconds' must be a positive number");
    cfg.budget_seconds = doc["budget_seconds"].get<double>();
  }
  if (doc.contains("threads")) {
    require(doc["threads"].is_number_unsigned() || doc["threads"].is_number_integer(),
            ErrorKind::SchemaViolation, "config key 'threads' must be an integer");
    cfg.threads = doc["threads"].get<unsigned>();
  }
  if (doc.contains("formats")) {
    require(doc["formats"].is_array(), ErrorKind::SchemaViolation,
            "config key 'formats' must be an array");
    cfg.formats.clear();
    for (const auto& f : doc["formats"]) {
      require(f.is_string(), ErrorKind::SchemaViolation, "formats entries must be strings");
      const auto name = f.get<std::string>();
      require(name == "csv" || name == "json" || name == "svg", ErrorKind::SchemaViolation,
              "unknown output format '" + name + "'");
      cfg.formats.push_back(name);
    }
  }
  if (doc.contains("params")) {
    require(doc["params"].is_object(), ErrorKind::SchemaViolation,
            "config key 'params' must be an object");
    for (const auto& [key, value] : doc["params"].items()) {
      require(cfg.params.contains(key), ErrorKind::SchemaViolation,
              "unknown parameter '" + key + "' for experiment '" + cfg.experiment + "'");
      require(same_type(cfg.params[key], value), ErrorKind::SchemaViolation,
              "parameter '" + key + "' has the wrong type");
      cfg.params[key] = value;
    }
  }
  return cfg;
}

std::string config_hash(const RunConfig& config) {
  const auto text = config.canonical().dump();
  return sha256_hex(text.data(), text.size()).substr(0, 16);
}

}  // namespace anderson::lab
