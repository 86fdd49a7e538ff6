// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: wrlb <experiment> [--key value ...] [--config file]

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "wrlb/cli_runner.hpp"

namespace {

struct Key {
  const char* name;
  const char* help;
};

const Key kKeys[] = {
    {"s", "regularity index"},
    {"N", "frequency cut |n| <= N"},
    {"M", "mode radius of sampled fields"},
    {"G", "physical grid size, odd, >= 4N+1 (default 4N+1)"},
    {"dt", "time step"},
    {"t", "final time"},
    {"p", "density moment"},
    {"R", "radius of the transport ball"},
    {"sigma", "Sobolev index of the transport ball (default s - 0.6)"},
    {"epsilon", "epsilon of the estimate functional"},
    {"samples", "Monte Carlo samples (or random fields for besov-audit)"},
    {"iters", "optimizer iterations"},
    {"seed", "base seed"},
    {"out", "output path"},
    {"data", "initial data: nu, mu or zero"},
    {"scheme", "strang, optimal2 or yoshida4"},
    {"fixture", "JSON of calibrated maxima for besov-audit"},
    {"N_list", "cuts for sigma-scan, a..b or a,b,c"},
    {"record_every", "steps between evolve rows"},
    {"threads", "worker threads (0: automatic)"},
};

const std::pair<const char*, const char*> kExperiments[] = {
    {"sample", "draw one phase point, write its coefficients"},
    {"evolve", "integrate the truncated flow, write energies"},
    {"energy-audit", "analytic vs finite-difference energy derivative"},
    {"sigma-scan", "renormalization constants over a range of cuts"},
    {"density", "moments of the Gibbs density"},
    {"transport", "mass of a ball under the flow"},
    {"variational", "optimize a mean shift, bound -log Z"},
    {"besov-audit", "worst ratios of the Besov inequalities"},
    {"decay-fit", "shell spectrum of the Wick square and its slope"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wrlb: renormalized wave dynamics and Gaussian measure experiments"};
  app.require_subcommand(0, 1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value file; flags override it")
      ->check(CLI::ExistingFile);
  bool dry = false;
  app.add_flag("--validate", dry, "only validate the resolved config");

  std::map<std::string, std::string> flags;
  for (const Key& key : kKeys) app.add_option(std::string("--") + key.name, flags[key.name], key.help);
  for (const auto& [name, help] : kExperiments) app.add_subcommand(name, help)->fallthrough();

  CLI11_PARSE(app, argc, argv);

  std::vector<wrlb::Diagnostic> diags;
  wrlb::ExperimentConfig cfg;
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    cfg = wrlb::parse_config(is, diags);
  }
  if (!app.get_subcommands().empty())
    wrlb::apply_setting(cfg, "experiment", app.get_subcommands().front()->get_name(), 0, diags);
  for (const Key& key : kKeys)
    if (app.count(std::string("--") + key.name) > 0)
      wrlb::apply_setting(cfg, key.name, flags[key.name], 0, diags);

  if (diags.empty()) diags = wrlb::validate(cfg);
  if (!diags.empty()) {
    for (const auto& d : diags)
      std::cerr << "wrlb: " << (config_path.empty() || d.line == 0 ? "" : config_path + ":")
                << d.to_string() << '\n';
    return 2;
  }
  if (dry) {
    for (const auto& [k, v] : cfg.resolved().entries()) std::cout << k << " = " << v << '\n';
    return 0;
  }
  const wrlb::RunResult r = wrlb::run(cfg);
  (r.exit_code == 0 ? std::cout : std::cerr) << "wrlb: " << r.message << '\n';
  return r.exit_code;
}
