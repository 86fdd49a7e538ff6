// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrlb/besov_norms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "wrlb/errors.hpp"
#include "wrlb/random.hpp"
#include "wrlb/spectral_ops.hpp"

namespace wrlb {
namespace {

double lq_sum(const std::vector<double>& b, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : b) m = std::max(m, x);
    return m;
  }
  double acc = 0.0;
  for (double x : b) acc += std::pow(x, q);
  return std::pow(acc, 1.0 / q);
}

double checked_ratio(const char* name, double lhs, double rhs) {
  if (!(rhs > 0.0) || !std::isfinite(rhs))
    throw BadShape(name, "right-hand side vanishes; the ratio is undefined");
  return lhs / rhs;
}

}  // namespace

int norm_grid_size(int M) { return smooth_grid_size(4 * M + 1); }

double lp_norm(const GridField& g, double p) {
  if (g.values.empty()) return 0.0;
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : g.values) m = std::max(m, std::abs(x));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (double x : g.values) acc += x * x;
  } else if (p == 4.0) {
    for (double x : g.values) acc += (x * x) * (x * x);
  } else {
    for (double x : g.values) acc += std::pow(std::abs(x), p);
  }
  return std::pow(acc / static_cast<double>(g.values.size()), 1.0 / p);
}

double lp_norm(const SpectralField& f, double p) {
  if (p == 2.0) return std::sqrt(l2_norm_sq(f));
  const FourierGrid grid(norm_grid_size(f.M()));
  return lp_norm(grid.synthesize(f), p);
}

std::vector<double> besov_blocks(const SpectralField& f, double s, double p, int G) {
  const int J = lp_last_block(f.M());
  std::vector<double> out(static_cast<std::size_t>(J + 1), 0.0);
  std::unique_ptr<FourierGrid> grid;
  if (p != 2.0) grid = std::make_unique<FourierGrid>(G > 0 ? G : norm_grid_size(f.M()));
  GridField scratch;
  for (int j = 0; j <= J; ++j) {
    const SpectralField b = littlewood_paley(f, j);
    double norm;
    if (p == 2.0) {
      norm = std::sqrt(l2_norm_sq(b));
    } else {
      grid->synthesize(b, scratch);
      norm = lp_norm(scratch, p);
    }
    out[static_cast<std::size_t>(j)] = std::pow(2.0, s * j) * norm;
  }
  return out;
}

double besov_norm(const SpectralField& f, const BesovParams& params) {
  if (params.p < 1.0 || params.q < 1.0) throw BadShape("besov_norm", "p and q must be >= 1");
  return lq_sum(besov_blocks(f, params.s, params.p), params.q);
}

double sobolev_norm(const SpectralField& f, double sigma) {
  std::vector<double> w(static_cast<std::size_t>(3 * f.M() * f.M() + 1));
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::pow(1.0 + static_cast<double>(k), sigma);
  double acc = 0.0;
  const auto& c = f.coeffs();
  for_each_mode(f.M(), [&](int n1, int n2, int n3, std::size_t i) {
    acc += w[static_cast<std::size_t>(norm_sq(n1, n2, n3))] * std::norm(c[i]);
  });
  return std::sqrt(acc);
}

double sobolev_pair_norm(const PhasePoint& p, double sigma) {
  const double a = sobolev_norm(p.u, sigma);
  const double b = sobolev_norm(p.v, sigma - 1.0);
  return std::sqrt(a * a + b * b);
}

std::string inequality_name(Inequality kind) {
  switch (kind) {
    case Inequality::Interpolation: return "interp";
    case Inequality::Embedding: return "embed";
    case Inequality::BesovEmbedding: return "emb_b";
    case Inequality::Algebra: return "alge";
    case Inequality::Duality: return "dual";
    case Inequality::Leibniz: return "prod";
    case Inequality::NegativeProduct: return "prod2";
  }
  return "?";
}

Inequality inequality_from_name(const std::string& name) {
  for (Inequality k : kAllInequalities)
    if (inequality_name(k) == name) return k;
  throw BadShape("estimate_ratio", "unknown inequality '" + name + "'");
}

int inequality_arity(Inequality kind) {
  switch (kind) {
    case Inequality::Interpolation:
    case Inequality::Embedding:
    case Inequality::BesovEmbedding: return 1;
    default: return 2;
  }
}

double estimate_ratio(Inequality kind, std::span<const SpectralField> fields) {
  const std::string name = "estimate_ratio(" + inequality_name(kind) + ")";
  const int arity = inequality_arity(kind);
  if (static_cast<int>(fields.size()) != arity)
    throw BadShape(name, "expects " + std::to_string(arity) + " field(s), got " +
                             std::to_string(fields.size()));
  if (arity == 2 && fields[0].M() != fields[1].M())
    throw BadShape(name, "fields must share one mode radius");
  const SpectralField& u = fields[0];
  switch (kind) {
    case Inequality::Interpolation: {
      const double lhs = besov_norm(u, {1.0, 2.0, 2.0});
      const double rhs = std::sqrt(besov_norm(u, {2.0, 2.0, 2.0}) * lp_norm(u, 2.0));
      return checked_ratio(name.c_str(), lhs, rhs);
    }
    case Inequality::Embedding:
      return checked_ratio(name.c_str(), besov_norm(u, {0.5, 2.0, kInf}),
                           besov_norm(u, {1.0, 4.0, 1.0}));
    case Inequality::BesovEmbedding:
      return checked_ratio(name.c_str(), besov_norm(u, {0.0, kInf, 2.0}),
                           besov_norm(u, {1.5, 2.0, 2.0}));
    default: break;
  }
  const SpectralField& v = fields[1];
  switch (kind) {
    case Inequality::Algebra: {
      const BesovParams c{0.5, kInf, kInf};
      return checked_ratio(name.c_str(), besov_norm(multiply(u, v), c),
                           besov_norm(u, c) * besov_norm(v, c));
    }
    case Inequality::Duality:
      return checked_ratio(name.c_str(), std::abs(l2_dot(u, v)),
                           besov_norm(u, {0.5, 2.0, 2.0}) * besov_norm(v, {-0.5, 2.0, 2.0}));
    case Inequality::Leibniz: {
      const BesovParams b{1.0, 4.0, 2.0};
      const double rhs = besov_norm(u, b) * lp_norm(v, 4.0) + lp_norm(u, 4.0) * besov_norm(v, b);
      return checked_ratio(name.c_str(), besov_norm(multiply(u, v), {1.0, 2.0, 2.0}), rhs);
    }
    case Inequality::NegativeProduct:
      return checked_ratio(name.c_str(), besov_norm(multiply(u, v), {-0.5, kInf, kInf}),
                           besov_norm(u, {-0.5, kInf, kInf}) * besov_norm(v, {1.0, kInf, kInf}));
    default: break;
  }
  throw BadShape(name, "unhandled inequality");
}

SpectralField random_test_field(int M, std::uint64_t seed, std::uint64_t index) {
  const CounterRng shape(seed, index, 7);
  const double beta = 0.5 + 2.5 * shape.uniform(0);
  const double scale = std::pow(10.0, 2.0 * shape.uniform(1) - 1.0);
  const int band = 1 + static_cast<int>(shape.uniform(2) * M);
  const CounterRng rng(seed, index, 8);
  SpectralField f(M);
  for_each_mode(M, [&](int n1, int n2, int n3, std::size_t idx) {
    const int k = norm_sq(n1, n2, n3);
    if (k > band * band || !(k == 0 || is_canonical(n1, n2, n3))) return;
    const auto [a, b] = rng.normal_pair(mode_key(n1, n2, n3));
    const double w = scale * std::pow(1.0 + k, -0.5 * beta);
    f.coeffs()[idx] = k == 0 ? Complex(w * a, 0.0) : w * Complex(a, b);
  });
  f.symmetrize();
  return f;
}

}  // namespace wrlb
