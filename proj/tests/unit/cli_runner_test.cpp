// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "wrlb/cli_runner.hpp"

namespace wrlb {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "wrlb_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream is(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

bool mentions(const std::vector<Diagnostic>& d, const std::string& field, const std::string& msg) {
  for (const auto& x : d)
    if (x.field == field && x.message.find(msg) != std::string::npos) return true;
  return false;
}

TEST(Validate, DefaultsAreAccepted) { EXPECT_TRUE(validate(ExperimentConfig{}).empty()); }

TEST(Validate, GridBelowDealiasingBound) {
  ExperimentConfig c;
  c.experiment = Experiment::Evolve;
  c.N = 4;
  c.G = 15;
  EXPECT_TRUE(mentions(validate(c), "G", "dealiasing requires G"));
  c.G = 16;
  EXPECT_TRUE(mentions(validate(c), "G", "odd"));
}

TEST(Validate, EnergyExperimentsNeedEvenOrder) {
  ExperimentConfig c;
  c.experiment = Experiment::EnergyAudit;
  c.s = 3.0;
  EXPECT_TRUE(mentions(validate(c), "s", "s must be even"));
  c.s = 6.0;
  EXPECT_TRUE(validate(c).empty());
}

TEST(Validate, ReportsEveryProblemAtOnce) {
  ExperimentConfig c;
  c.experiment = Experiment::Density;
  c.p = 3.0;
  c.samples = 10;
  c.dt = 0.5;
  EXPECT_GE(validate(c).size(), 3u);
}

TEST(ParseConfig, UnknownKeysCarryTheirLine) {
  std::istringstream is("# comment\nexperiment = evolve\n\nN = 4\nwidth = 3\ndt = abc\n");
  std::vector<Diagnostic> d;
  const ExperimentConfig c = parse_config(is, d);
  EXPECT_EQ(c.experiment, Experiment::Evolve);
  EXPECT_EQ(c.N, 4);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].line, 5);
  EXPECT_EQ(d[0].to_string(), "line 5: width: unknown key");
  EXPECT_EQ(d[1].line, 6);
  EXPECT_EQ(d[1].field, "dt");
}

TEST(ParseConfig, ResolvesDerivedDefaults) {
  ExperimentConfig c;
  c.N = 5;
  const ExperimentConfig r = c.resolved();
  EXPECT_EQ(r.G, 21);
  EXPECT_DOUBLE_EQ(r.sigma, 3.4);
  EXPECT_EQ(r.N_list, "1..5");
  EXPECT_EQ(r.resolved(), r);
}

TEST(Run, InvalidConfigExitsTwo) {
  ExperimentConfig c;
  c.N = 0;
  EXPECT_EQ(run(c).exit_code, 2);
}

TEST(Run, SigmaScanStartsAtThree) {
  ExperimentConfig c;
  c.N = 3;
  c.out = scratch("sigma.csv").string();
  ASSERT_EQ(run(c).exit_code, 0);
  std::vector<std::string> rows;
  for (const auto& l : lines_of(c.out))
    if (!l.empty() && l[0] != '#') rows.push_back(l);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "N,sigma_N,sigma_N_over_N");
  EXPECT_EQ(rows[1], "1,3,3");
}

TEST(Run, HeaderReproducesTheConfig) {
  ExperimentConfig c;
  c.experiment = Experiment::Evolve;
  c.N = 2;
  c.t = 0.05;
  c.dt = 1e-2;
  c.seed = 12345678901234ULL;
  c.out = scratch("evolve_header.csv").string();
  ASSERT_EQ(run(c).exit_code, 0);
  std::ifstream is(c.out);
  EXPECT_EQ(parse_header(is), c.resolved());
}

TEST(Run, ZeroDataStaysAtRest) {
  ExperimentConfig c;
  c.experiment = Experiment::Evolve;
  c.N = 2;
  c.t = 0.1;
  c.dt = 1e-2;
  c.record_every = 5;
  c.data = "zero";
  c.out = scratch("evolve_zero.csv").string();
  ASSERT_EQ(run(c).exit_code, 0);
  int rows = 0;
  bool header = true;
  for (const auto& l : lines_of(c.out)) {
    if (l.empty() || l[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    ++rows;
    EXPECT_EQ(l.substr(l.find(',')), ",0,0,0") << l;
  }
  EXPECT_EQ(rows, 3);
}

TEST(Run, RerunsAreByteIdenticalBarTheTimestamp) {
  ExperimentConfig c;
  c.experiment = Experiment::EnergyAudit;
  c.N = 2;
  c.samples = 3;
  const auto body = [&](const std::string& name) {
    c.out = scratch(name).string();
    EXPECT_EQ(run(c).exit_code, 0);
    std::vector<std::string> keep;
    for (const auto& l : lines_of(c.out))
      if (l.rfind("# timestamp", 0) != 0 && l.rfind("# out", 0) != 0) keep.push_back(l);
    return keep;
  };
  const auto a = body("audit_a.csv");
  EXPECT_EQ(a, body("audit_b.csv"));
  EXPECT_GT(a.size(), 5u);
}

TEST(Run, MissingFixtureIsARuntimeError) {
  ExperimentConfig c;
  c.experiment = Experiment::BesovAudit;
  c.M = 2;
  c.samples = 2;
  c.fixture = scratch("does_not_exist.json").string();
  c.out = scratch("besov.csv").string();
  const RunResult r = run(c);
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_FALSE(r.message.empty());
}

TEST(Run, VariationalJsonRoundTrip) {
  ExperimentConfig c;
  c.experiment = Experiment::Variational;
  c.N = 2;
  c.samples = 1000;
  c.iters = 2;
  c.out = scratch("var.json").string();
  ASSERT_EQ(run(c).exit_code, 0);
  std::ifstream is(c.out);
  EXPECT_EQ(parse_json_header(is), c.resolved());
}

TEST(Names, ExperimentsRoundTrip) {
  for (Experiment e : {Experiment::Sample, Experiment::Evolve, Experiment::EnergyAudit,
                       Experiment::SigmaScan, Experiment::Density, Experiment::Transport,
                       Experiment::Variational, Experiment::BesovAudit, Experiment::DecayFit})
    EXPECT_EQ(experiment_from_name(experiment_name(e)), e);
  EXPECT_FALSE(experiment_from_name("bogus").has_value());
}

}  // namespace
}  // namespace wrlb
