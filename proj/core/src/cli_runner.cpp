// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrlb/cli_runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wrlb/besov_norms.hpp"
#include "wrlb/errors.hpp"
#include "wrlb/gaussian_fields.hpp"
#include "wrlb/measure_lab.hpp"
#include "wrlb/nlw_dynamics.hpp"
#include "wrlb/parallel.hpp"
#include "wrlb/renorm_energy.hpp"
#include "wrlb/variational_control.hpp"

#ifndef WRLB_BUILD_ID
#define WRLB_BUILD_ID "unknown"
#endif

namespace wrlb {
namespace {

constexpr std::pair<Experiment, const char*> kNames[] = {
    {Experiment::Sample, "sample"},          {Experiment::Evolve, "evolve"},
    {Experiment::EnergyAudit, "energy-audit"}, {Experiment::SigmaScan, "sigma-scan"},
    {Experiment::Density, "density"},        {Experiment::Transport, "transport"},
    {Experiment::Variational, "variational"}, {Experiment::BesovAudit, "besov-audit"},
    {Experiment::DecayFit, "decay-fit"},
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
bool parse_number(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool is_even_integer_at_least_4(double s) {
  return s >= 4.0 && std::floor(s) == s && std::fmod(s, 2.0) == 0.0;
}

bool parse_scheme(const std::string& name, Scheme& out) {
  if (name == "strang") out = Scheme::Strang;
  else if (name == "yoshida4") out = Scheme::Yoshida4;
  else if (name == "optimal2") out = Scheme::Optimal2;
  else return false;
  return true;
}

/// "a..b" or "a,b,c". Empty result on malformed input.
std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    int a = 0, b = 0;
    if (!parse_number(trim(text.substr(0, dots)), a) || !parse_number(trim(text.substr(dots + 2)), b) ||
        a < 1 || b < a)
      return {};
    for (int n = a; n <= b; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int n = 0;
    if (!parse_number(trim(item), n) || n < 1) return {};
    out.push_back(n);
  }
  return out;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("run", "cannot open output file " + path);
  return os;
}

MeasureSpec data_spec(const ExperimentConfig& c) {
  return c.data == "mu" ? MeasureSpec::mu(c.s, c.M, c.N) : MeasureSpec::nu(c.s, c.M, c.N);
}

void run_sample(const ExperimentConfig& c) {
  const PhasePoint x = c.data == "zero" ? PhasePoint(c.M) : sample(data_spec(c), c.seed, 0);
  auto os = open_output(c.out);
  write_header(os, c);
  os << "n1,n2,n3,u_re,u_im,v_re,v_im\n";
  for_each_mode(c.M, [&](int n1, int n2, int n3, std::size_t i) {
    if (norm_sq(n1, n2, n3) > c.N * c.N) return;
    const Complex u = x.u.coeffs()[i];
    const Complex v = x.v.coeffs()[i];
    os << n1 << ',' << n2 << ',' << n3 << ',' << num(u.real()) << ',' << num(u.imag()) << ','
       << num(v.real()) << ',' << num(v.imag()) << '\n';
  });
}

void run_evolve(const ExperimentConfig& c) {
  const RenormContext ctx = RenormContext::make(c.s, c.N, c.G);
  const PhasePoint x = c.data == "zero" ? PhasePoint(c.M) : sample(data_spec(c), c.seed, 0);
  Scheme scheme{};
  parse_scheme(c.scheme, scheme);
  auto os = open_output(c.out);
  write_header(os, c);
  os << "t,E_N,H_sigma_u,H_sigma_minus_1_v\n";
  const auto row = [&](double t, const PhasePoint& p) {
    os << num(t) << ',' << num(energy(p, c.N, ctx)) << ',' << num(sobolev_norm(p.u, c.sigma))
       << ',' << num(sobolev_norm(p.v, c.sigma - 1.0)) << '\n';
  };
  const FlowParams fp{c.N, c.dt, scheme, c.t, false};
  evolve(x, fp, ctx, row, c.record_every);
}

void run_energy_audit(const ExperimentConfig& c) {
  const RenormContext ctx = RenormContext::make(c.s, c.N, c.G);
  const MeasureSpec spec = MeasureSpec::nu(c.s, c.N, c.N);
  Scheme scheme{};
  parse_scheme(c.scheme, scheme);
  struct Row {
    double e, total, analytic, fd, F, h;
  };
  const auto n = static_cast<std::size_t>(c.samples);
  std::vector<Row> rows(n);
  parallel_for(n, c.threads, [&](std::size_t i) {
    const PhasePoint x = sample(spec, c.seed, i);
    const FlowParams fwd{c.N, c.dt, scheme, c.dt, false};
    const FlowParams bwd{c.N, c.dt, scheme, -c.dt, false};
    const double ep = full_energy(evolve(x, fwd, ctx), ctx).total;
    const double em = full_energy(evolve(x, bwd, ctx), ctx).total;
    rows[i] = {energy(x, c.N, ctx),
               full_energy(x, ctx).total,
               energy_derivative(x, ctx).total,
               (ep - em) / (2.0 * c.dt),
               estimate_functional(x, ctx, c.epsilon),
               sobolev_pair_norm(x, c.sigma)};
  });
  auto os = open_output(c.out);
  write_header(os, c);
  os << "sample,E_N,E_sN_total,dE_analytic,dE_fd,F_value,H_sigma_norm\n";
  for (std::size_t i = 0; i < n; ++i) {
    const Row& r = rows[i];
    os << i << ',' << num(r.e) << ',' << num(r.total) << ',' << num(r.analytic) << ','
       << num(r.fd) << ',' << num(r.F) << ',' << num(r.h) << '\n';
  }
}

void run_sigma_scan(const ExperimentConfig& c) {
  auto os = open_output(c.out);
  write_header(os, c);
  os << "N,sigma_N,sigma_N_over_N\n";
  for (int n : parse_n_list(c.N_list)) {
    const double sig = sigma_n(c.s, n);
    os << n << ',' << num(sig) << ',' << num(sig / n) << '\n';
  }
}

void run_density(const ExperimentConfig& c) {
  const DensityEstimate d = density_moments(c.s, c.N, c.p, static_cast<std::size_t>(c.samples),
                                            c.seed, {}, c.threads);
  auto os = open_output(c.out);
  write_header(os, c);
  os << "N,p,estimate,ci95,log_estimate,mean_R,max_exponent,guard_violations,count\n";
  os << c.N << ',' << num(c.p) << ',' << num(d.weights.mean) << ',' << num(d.weights.ci95())
     << ',' << num(d.log_mean) << ',' << num(d.interaction.mean) << ','
     << num(d.max_exponent) << ',' << d.guard_violations << ',' << d.weights.count << '\n';
}

void run_transport(const ExperimentConfig& c) {
  const BallSet A{c.R, c.sigma};
  const auto n = static_cast<std::size_t>(c.samples);
  TransportOptions opts;
  opts.dt = c.dt;
  opts.workers = c.threads;
  parse_scheme(c.scheme, opts.scheme);
  const TransportEstimate direct = restricted_density(A, c.s, c.N, n, c.seed, c.threads);
  const TransportEstimate at0 = pushforward_mass(A, 0.0, c.s, c.N, n, c.seed, opts);
  const TransportEstimate att = pushforward_mass(A, c.t, c.s, c.N, n, c.seed, opts);
  auto os = open_output(c.out);
  write_header(os, c);
  os << "estimator,t,mass,ci95,count,acceptance,ess,max_exponent\n";
  const auto row = [&](const char* name, double t, const TransportEstimate& e) {
    os << name << ',' << num(t) << ',' << num(e.mass) << ',' << num(e.ci95) << ',' << e.count
       << ',' << num(e.acceptance) << ',' << num(e.ess) << ',' << num(e.max_exponent) << '\n';
  };
  row("restricted", 0.0, direct);
  row("pushforward", 0.0, at0);
  row("pushforward", c.t, att);
}

void run_variational(const ExperimentConfig& c) {
  const auto n = static_cast<std::size_t>(c.samples);
  const ShiftResult r = minimize_shift(c.s, c.N, n, c.seed, c.iters, {}, c.threads);
  nlohmann::ordered_json j;
  nlohmann::ordered_json cfg;
  for (const auto& [k, v] : c.entries()) cfg[k] = v;
  j["config"] = cfg;
  j["build"] = build_id();
  j["timestamp"] = timestamp();
  j["result"] = {{"bound", r.bound},
                 {"bound_std_error", r.bound_stats.std_error()},
                 {"jensen", r.jensen},
                 {"cm_cost", r.best.cm_cost},
                 {"iterations", r.iterations},
                 {"grad_norm", r.grad_norm},
                 {"history", r.history}};
  auto os = open_output(c.out);
  os << j.dump(2) << '\n';
}

std::map<std::string, double> read_fixture(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("besov_audit", "cannot open fixture " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("besov_audit", std::string("fixture is not valid JSON: ") + e.what());
  }
  const nlohmann::json& table = j.contains("constants") ? j["constants"] : j;
  std::map<std::string, double> out;
  for (auto it = table.begin(); it != table.end(); ++it)
    if (it->is_number()) out[it.key()] = it->get<double>();
  return out;
}

void run_besov_audit(const ExperimentConfig& c) {
  const std::map<std::string, double> fixture =
      c.fixture.empty() ? std::map<std::string, double>{} : read_fixture(c.fixture);
  const auto n = static_cast<std::size_t>(c.samples);
  auto os = open_output(c.out);
  write_header(os, c);
  os << "inequality,max_ratio,fixture_max,ratio_to_fixture,regression\n";
  for (Inequality kind : kAllInequalities) {
    const double worst = parallel_reduce(
        n, c.threads, 0.0,
        [&](std::size_t i, double& acc) {
          std::vector<SpectralField> fs;
          for (int a = 0; a < inequality_arity(kind); ++a)
            fs.push_back(random_test_field(c.M, c.seed, 2 * i + a));
          acc = std::max(acc, estimate_ratio(kind, fs));
        },
        [](double& a, double b) { a = std::max(a, b); });
    const std::string name = inequality_name(kind);
    os << name << ',' << num(worst);
    if (const auto it = fixture.find(name); it != fixture.end()) {
      const double rel = worst / it->second;
      os << ',' << num(it->second) << ',' << num(rel) << ',' << (rel > 1.2 ? 1 : 0) << '\n';
    } else {
      os << ",,,\n";
    }
  }
}

void run_decay_fit(const ExperimentConfig& c) {
  const RenormContext ctx = RenormContext::make(c.s, c.N, c.G);
  const MeasureSpec spec = MeasureSpec::nu(c.s, c.N, c.N);
  const auto n = static_cast<std::size_t>(c.samples);
  const DecayAccumulator acc = parallel_reduce(
      n, c.threads, DecayAccumulator(2 * c.N),
      [&](std::size_t i, DecayAccumulator& a) { a.add(wick_square(sample_u(spec, c.seed, i), ctx)); },
      [](DecayAccumulator& a, const DecayAccumulator& b) { a.merge(b); });
  std::vector<int> shells;
  for (int k = 2; k <= c.N; ++k) shells.push_back(k);
  const DecayFit fit = acc.fit(shells, kMinSamples);
  auto os = open_output(c.out);
  write_header(os, c);
  os << "# fit.slope = " << num(fit.slope) << '\n'
     << "# fit.slope_stderr = " << num(fit.slope_stderr) << '\n'
     << "# fit.intercept = " << num(fit.intercept) << '\n';
  os << "abs_n,mean_sq,stderr\n";
  for (const ShellPoint& p : acc.shells())
    if (p.modes > 0) os << p.k << ',' << num(p.mean_sq) << ',' << num(p.std_error) << '\n';
}

}  // namespace

std::string experiment_name(Experiment e) {
  for (const auto& [k, name] : kNames)
    if (k == e) return name;
  return "unknown";
}

std::optional<Experiment> experiment_from_name(const std::string& name) {
  for (const auto& [k, n] : kNames)
    if (name == n) return k;
  return std::nullopt;
}

ExperimentConfig ExperimentConfig::resolved() const {
  ExperimentConfig c = *this;
  if (c.G == 0) c.G = 4 * c.N + 1;
  if (c.sigma < 0.0) c.sigma = c.s - 0.6;
  if (c.N_list.empty()) c.N_list = "1.." + std::to_string(c.N);
  return c;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
  return {
      {"experiment", experiment_name(experiment)},
      {"s", num(s)},
      {"N", std::to_string(N)},
      {"M", std::to_string(M)},
      {"G", std::to_string(G)},
      {"dt", num(dt)},
      {"t", num(t)},
      {"p", num(p)},
      {"R", num(R)},
      {"sigma", num(sigma)},
      {"epsilon", num(epsilon)},
      {"samples", std::to_string(samples)},
      {"iters", std::to_string(iters)},
      {"seed", std::to_string(seed)},
      {"out", out},
      {"data", data},
      {"scheme", scheme},
      {"fixture", fixture},
      {"N_list", N_list},
      {"record_every", std::to_string(record_every)},
      {"threads", std::to_string(threads)},
  };
}

std::string Diagnostic::to_string() const {
  std::string s;
  if (line > 0) s += "line " + std::to_string(line) + ": ";
  if (!field.empty()) s += field + ": ";
  return s + message;
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value,
                   int line, std::vector<Diagnostic>& diags) {
  const auto bad = [&](const std::string& what) { diags.push_back({line, key, what}); };
  const auto real = [&](double& dst) {
    double x = 0.0;
    if (parse_number(value, x) && std::isfinite(x)) dst = x;
    else bad("expected a finite number, got '" + value + "'");
  };
  const auto integer = [&](auto& dst) {
    std::remove_reference_t<decltype(dst)> x{};
    if (parse_number(value, x)) dst = x;
    else bad("expected an integer, got '" + value + "'");
  };
  if (key == "experiment") {
    if (const auto e = experiment_from_name(value)) cfg.experiment = *e;
    else bad("unknown experiment '" + value + "'");
  } else if (key == "s") real(cfg.s);
  else if (key == "N") integer(cfg.N);
  else if (key == "M") integer(cfg.M);
  else if (key == "G") integer(cfg.G);
  else if (key == "dt") real(cfg.dt);
  else if (key == "t") real(cfg.t);
  else if (key == "p") real(cfg.p);
  else if (key == "R") real(cfg.R);
  else if (key == "sigma") real(cfg.sigma);
  else if (key == "epsilon") real(cfg.epsilon);
  else if (key == "samples") integer(cfg.samples);
  else if (key == "iters") integer(cfg.iters);
  else if (key == "seed") integer(cfg.seed);
  else if (key == "out" || key == "out-path") cfg.out = value;
  else if (key == "data") cfg.data = value;
  else if (key == "scheme") cfg.scheme = value;
  else if (key == "fixture") cfg.fixture = value;
  else if (key == "N_list") cfg.N_list = value;
  else if (key == "record_every") integer(cfg.record_every);
  else if (key == "threads") integer(cfg.threads);
  else bad("unknown key");
}

ExperimentConfig parse_config(std::istream& is, std::vector<Diagnostic>& diags,
                              ExperimentConfig base) {
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      diags.push_back({line, "", "expected 'key = value'"});
      continue;
    }
    apply_setting(base, trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line, diags);
  }
  return base;
}

std::vector<Diagnostic> validate(const ExperimentConfig& config) {
  const ExperimentConfig c = config.resolved();
  std::vector<Diagnostic> d;
  const auto fail = [&](const char* field, std::string msg) { d.push_back({0, field, std::move(msg)}); };
  const Experiment e = c.experiment;

  if (!(c.s > 0.0)) fail("s", "s must be positive");
  if (c.N < 1 || c.N > 128) fail("N", "N must be in [1, 128]");
  if (c.M < 1 || c.M > 128) fail("M", "M must be in [1, 128]");
  if (c.G % 2 == 0) fail("G", "G must be odd");
  if (c.G < 4 * c.N + 1) fail("G", "dealiasing requires G ≥ 4N+1");
  if (!(c.dt > 0.0 && c.dt <= 0.1)) fail("dt", "dt must be in (0, 0.1]");
  if (!(c.epsilon > 0.0 && c.epsilon < 0.5)) fail("epsilon", "epsilon must be in (0, 1/2)");
  if (c.samples < 1) fail("samples", "samples must be positive");
  if (c.iters < 1) fail("iters", "iters must be at least 1");
  if (c.record_every < 1) fail("record_every", "record_every must be at least 1");
  if (c.threads < 0) fail("threads", "threads must be non-negative");
  if (c.data != "nu" && c.data != "mu" && c.data != "zero")
    fail("data", "data must be one of nu, mu, zero");
  Scheme scheme{};
  if (!parse_scheme(c.scheme, scheme)) fail("scheme", "scheme must be strang, optimal2 or yoshida4");
  if (c.out.empty()) fail("out", "output path is empty");

  if ((e == Experiment::EnergyAudit || e == Experiment::Transport) &&
      !is_even_integer_at_least_4(c.s))
    fail("s", "s must be even ≥ 4 for energy experiments");
  if ((e == Experiment::Sample || e == Experiment::Evolve) && c.M < c.N)
    fail("M", "M must be at least N");
  if (e == Experiment::Density && c.p != 1.0 && c.p != 2.0 && c.p != 4.0)
    fail("p", "p must be 1, 2 or 4");
  if ((e == Experiment::Density || e == Experiment::Transport || e == Experiment::DecayFit) &&
      c.samples < static_cast<std::int64_t>(kMinSamples))
    fail("samples", "Monte Carlo estimates need at least " + std::to_string(kMinSamples) + " samples");
  if (e == Experiment::DecayFit && c.N < 4) fail("N", "decay fits need N ≥ 4");
  if (e == Experiment::SigmaScan && parse_n_list(c.N_list).empty())
    fail("N_list", "expected 'a..b' or a comma-separated list of positive integers");
  return d;
}

void write_header(std::ostream& os, const ExperimentConfig& cfg) {
  for (const auto& [k, v] : cfg.resolved().entries()) os << "# " << k << " = " << v << '\n';
  os << "# build = " << build_id() << '\n';
  os << "# timestamp = " << timestamp() << '\n';
}

ExperimentConfig parse_header(std::istream& is) {
  ExperimentConfig cfg;
  std::vector<Diagnostic> diags;
  std::string raw;
  while (is.peek() == '#' && std::getline(is, raw)) {
    const std::string text = trim(raw.substr(1));
    const auto eq = text.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(text.substr(0, eq));
    if (key == "build" || key == "timestamp" || key.find('.') != std::string::npos) continue;
    apply_setting(cfg, key, trim(text.substr(eq + 1)), 0, diags);
  }
  if (!diags.empty()) throw FormatError("parse_header", diags.front().to_string());
  return cfg;
}

ExperimentConfig parse_json_header(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("parse_json_header", e.what());
  }
  if (!j.contains("config") || !j["config"].is_object())
    throw FormatError("parse_json_header", "missing config object");
  ExperimentConfig cfg;
  std::vector<Diagnostic> diags;
  for (const auto& [k, v] : j["config"].items())
    apply_setting(cfg, k, v.get<std::string>(), 0, diags);
  if (!diags.empty()) throw FormatError("parse_json_header", diags.front().to_string());
  return cfg;
}

std::string build_id() { return WRLB_BUILD_ID; }

RunResult run(const ExperimentConfig& config) {
  const auto diags = validate(config);
  if (!diags.empty()) {
    std::string msg;
    for (const auto& d : diags) msg += d.to_string() + '\n';
    return {2, msg};
  }
  const ExperimentConfig c = config.resolved();
  try {
    switch (c.experiment) {
      case Experiment::Sample: run_sample(c); break;
      case Experiment::Evolve: run_evolve(c); break;
      case Experiment::EnergyAudit: run_energy_audit(c); break;
      case Experiment::SigmaScan: run_sigma_scan(c); break;
      case Experiment::Density: run_density(c); break;
      case Experiment::Transport: run_transport(c); break;
      case Experiment::Variational: run_variational(c); break;
      case Experiment::BesovAudit: run_besov_audit(c); break;
      case Experiment::DecayFit: run_decay_fit(c); break;
    }
  } catch (const Error& e) {
    return {3, e.operation() + ": " + e.what()};
  } catch (const std::exception& e) {
    return {3, experiment_name(c.experiment) + ": " + e.what()};
  }
  return {0, "wrote " + c.out};
}

}  // namespace wrlb
