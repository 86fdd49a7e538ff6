// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wrlb {

enum class Experiment {
  Sample,
  Evolve,
  EnergyAudit,
  SigmaScan,
  Density,
  Transport,
  Variational,
  BesovAudit,
  DecayFit,
};

std::string experiment_name(Experiment e);
std::optional<Experiment> experiment_from_name(const std::string& name);

/// Fully resolved experiment description. Every field has a default, so a
/// config file only lists what differs.
struct ExperimentConfig {
  Experiment experiment = Experiment::SigmaScan;
  double s = 4.0;
  int N = 8;
  int M = 8;
  int G = 0;             // 0 resolves to 4N+1
  double dt = 1e-3;
  double t = 1.0;
  double p = 1.0;
  double R = 10.0;
  double sigma = -1.0;   // negative resolves to s - 0.6
  double epsilon = 0.1;
  std::int64_t samples = 10000;
  int iters = 100;
  std::uint64_t seed = 1;
  std::string out = "wrlb_out.csv";
  std::string data = "nu";  // initial data for sample/evolve: nu, mu or zero
  std::string scheme = "strang";  // strang, optimal2 or yoshida4
  std::string fixture;      // besov-audit: calibrated maxima (JSON)
  std::string N_list;       // sigma-scan: "a..b" or "a,b,c"; empty means 1..N
  int record_every = 10;    // evolve: steps between trajectory rows
  int threads = 0;          // 0: WRLB_THREADS or hardware concurrency

  /// Fill derived defaults (G, sigma, N_list). Idempotent.
  ExperimentConfig resolved() const;
  /// Ordered key/value view used for headers and round trips.
  std::vector<std::pair<std::string, std::string>> entries() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct Diagnostic {
  int line = 0;  // 0: not from a config file
  std::string field;
  std::string message;

  std::string to_string() const;
};

/// Apply one key = value setting. Unknown keys and unparsable values are
/// reported rather than thrown.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value,
                   int line, std::vector<Diagnostic>& diags);

/// Parse a flat "key = value" file. Blank lines and lines starting with '#'
/// are ignored.
ExperimentConfig parse_config(std::istream& is, std::vector<Diagnostic>& diags,
                              ExperimentConfig base = {});

/// Empty iff run() would accept the config.
std::vector<Diagnostic> validate(const ExperimentConfig& cfg);

/// Header block: one "# key = value" line per resolved config entry, then
/// the build identifier and a timestamp.
void write_header(std::ostream& os, const ExperimentConfig& cfg);
/// Recover the config from the header of a CSV written by run().
ExperimentConfig parse_header(std::istream& is);
/// Recover the config from a JSON artifact written by run().
ExperimentConfig parse_json_header(std::istream& is);

std::string build_id();

struct RunResult {
  int exit_code = 0;
  std::string message;
};

/// Validate, then run the experiment and write cfg.out. Exit 2 on a
/// validation failure, 3 on a runtime error (message names the operation).
RunResult run(const ExperimentConfig& cfg);

}  // namespace wrlb
