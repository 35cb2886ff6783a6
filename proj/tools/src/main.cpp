// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// anderson_lab <subcommand> [--config file] [--out dir] [--seed n]
// Exit status: 0 all checks passed, 1 a check failed, 2 error.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include "anderson/error.hpp"
#include "anderson/lab/experiments.hpp"

namespace {

using anderson::lab::Json;

struct Subcommand {
  std::string name;
  std::string help;
  std::vector<std::string> kinds;  // empty: any kind
};

const std::vector<Subcommand>& subcommands() {
  static const std::vector<Subcommand> all = {
      {"sample", "draw a lattice white-noise field", {"sample"}},
      {"renorm", "renormalization constant sweeps", {"renorm2d_rate", "renorm3d_rate"}},
      {"enhance", "enhanced noise and its identities", {"enhance", "enhanced_cauchy", "shift_identities"}},
      {"solve", "semigroup solver runs", {"solve", "semigroup_props"}},
      {"spectrum", "spectral measures and coverage", {"two_route_oracle", "ids_coverage"}},
      {"weyl", "Weyl-sequence probes", {"weyl_sweep"}},
      {"resonance", "resonance fixed-point sweep", {"resonance_sweep"}},
      {"sweep", "run any experiment kind from a config", {}},
  };
  return all;
}

Json load(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) anderson::fail(anderson::ErrorKind::Io, "cannot open config " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    anderson::fail(anderson::ErrorKind::SchemaViolation, path + ": " + e.what());
  }
}

int run(const Subcommand& sub, const std::string& config_path, std::string out_dir,
        const std::optional<std::uint64_t>& seed) {
  const auto doc = load(config_path);
  const std::string fallback = sub.kinds.empty() ? std::string() : sub.kinds.front();
  const auto cfg = anderson::lab::parse_config(doc, fallback, seed);
  if (!sub.kinds.empty() &&
      std::find(sub.kinds.begin(), sub.kinds.end(), cfg.experiment) == sub.kinds.end()) {
    anderson::fail(anderson::ErrorKind::SchemaViolation,
                   "experiment '" + cfg.experiment + "' is not handled by '" + sub.name + "'");
  }
  if (out_dir.empty()) {
    const char* env = std::getenv("ANDERSON_OUT_DIR");
    out_dir = env != nullptr ? env : "out";
  }
  const auto outcome = anderson::lab::run_and_record(cfg, out_dir);
  for (const auto& c : outcome.result.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  std::cout << "manifest: " << (std::filesystem::path(out_dir) / outcome.manifest.file_name()).string()
            << '\n';
  return outcome.result.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anderson_lab: numerical experiments for the Anderson Hamiltonian"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  std::map<std::string, CLI::App*> apps;
  std::map<std::string, CLI::Option*> seed_opts;
  for (const auto& s : subcommands()) {
    auto* cmd = app.add_subcommand(s.name, s.help);
    cmd->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    cmd->add_option("--out", out_dir, "output directory (default $ANDERSON_OUT_DIR or ./out)");
    seed_opts[s.name] = cmd->add_option("--seed", seed, "master seed, overrides the config");
    apps[s.name] = cmd;
  }
  CLI11_PARSE(app, argc, argv);
  for (const auto& s : subcommands()) {
    if (!apps[s.name]->parsed()) continue;
    try {
      std::optional<std::uint64_t> so;
      if (seed_opts[s.name]->count() > 0) so = seed;
      return run(s, config_path, out_dir, so);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return 2;
}
