// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrlb/renorm_energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "wrlb/besov_norms.hpp"
#include "wrlb/errors.hpp"
#include "wrlb/nlw_dynamics.hpp"
#include "wrlb/spectral_ops.hpp"

namespace wrlb {
namespace {

void require_dealiased(const char* op, const RenormContext& ctx) {
  if (ctx.G < 4 * ctx.N + 1)
    throw GridTooSmall(op, "dealiasing requires G >= 4N+1 (G = " + std::to_string(ctx.G) +
                               ", N = " + std::to_string(ctx.N) + ")");
}

}  // namespace

double interaction_from_grids(const GridField& c, const GridField& a, const RenormContext& ctx,
                              const InteractionModel& model) {
  const double sigma = ctx.sigma_N;
  double acc = 0.0;
  const std::size_t n = c.values.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double u = c.values[i];
    const double u2 = u * u;
    double r = 0.25 * model.quartic * u2 * u2 + 0.5 * model.quadratic * u2;
    if (model.wick != 0.0) {
      const double d = a.values[i];
      r += 1.5 * model.wick * (d * d - sigma) * u2;
    }
    acc += r;
  }
  return acc / static_cast<double>(n);
}

double interaction(const SpectralField& u, const RenormContext& ctx, const InteractionModel& model) {
  require_dealiased("interaction", ctx);
  const FourierGrid grid(ctx.G);
  const GridField c = grid.synthesize(u, ctx.N);
  GridField a;
  if (model.wick != 0.0) a = grid.synthesize(riesz(u, ctx.s), ctx.N);
  return interaction_from_grids(c, a, ctx, model);
}

double hamiltonian_part(const PhasePoint& p, double s) {
  const int M = p.M();
  std::vector<double> wu(static_cast<std::size_t>(3 * M * M + 1)), wv(wu.size());
  for (std::size_t k = 0; k < wu.size(); ++k) {
    const double kk = static_cast<double>(k);
    wu[k] = k == 0 ? 1.0 : kk + std::pow(kk, s + 1.0);
    wv[k] = 1.0 + (k == 0 ? 0.0 : std::pow(kk, s));
  }
  double acc = 0.0;
  const auto& u = p.u.coeffs();
  const auto& v = p.v.coeffs();
  for_each_mode(M, [&](int n1, int n2, int n3, std::size_t i) {
    const auto k = static_cast<std::size_t>(norm_sq(n1, n2, n3));
    acc += wu[k] * std::norm(u[i]) + wv[k] * std::norm(v[i]);
  });
  return 0.5 * acc;
}

EnergyReport full_energy(const PhasePoint& p, const RenormContext& ctx) {
  require_dealiased("full_energy", ctx);
  const int M = p.M();
  const double s = ctx.s;
  std::vector<double> wu(static_cast<std::size_t>(3 * M * M + 1)), wv(wu.size());
  for (std::size_t k = 1; k < wu.size(); ++k) {
    const double kk = static_cast<double>(k);
    wu[k] = std::pow(kk, s + 1.0);
    wv[k] = std::pow(kk, s);
  }
  EnergyReport r;
  double quad = 0.0;
  const auto& u = p.u.coeffs();
  const auto& v = p.v.coeffs();
  for_each_mode(M, [&](int n1, int n2, int n3, std::size_t i) {
    const auto k = static_cast<std::size_t>(norm_sq(n1, n2, n3));
    quad += wu[k] * std::norm(u[i]) + wv[k] * std::norm(v[i]);
  });
  r.quadratic = 0.5 * quad;
  r.wick_term = interaction(p.u, ctx, {1.0, 0.0, 0.0});
  r.base_energy = energy(p, ctx.N, ctx);
  const double m = p.u.mean();
  r.mean_sq = 0.5 * m * m;
  r.total = r.quadratic + r.wick_term + r.base_energy + r.mean_sq;
  return r;
}

DerivativeReport energy_derivative(const PhasePoint& p, const RenormContext& ctx) {
  require_dealiased("energy_derivative", ctx);
  const FourierGrid grid(ctx.G);
  const int N = ctx.N;
  const GridField c = grid.synthesize(p.u, N);
  const GridField a = grid.synthesize(riesz(p.u, ctx.s), N);
  const GridField w = grid.synthesize(p.v, N);
  const GridField b = grid.synthesize(riesz(p.v, ctx.s), N);
  const GridField e = grid.synthesize(riesz(p.v, 2.0 * ctx.s), N);
  const double sigma = ctx.sigma_N;
  double f1 = 0.0, f2a = 0.0, f2b = 0.0;
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    const double u = c.values[i];
    const double d = a.values[i];
    f1 += (d * d - sigma) * w.values[i] * u;
    f2a += e.values[i] * u * u * u;
    f2b += b.values[i] * d * u * u;
  }
  const double n = static_cast<double>(c.values.size());
  DerivativeReport r;
  r.F1 = 3.0 * f1 / n;
  r.F2 = -f2a / n + 3.0 * f2b / n;
  r.F3 = p.u.mean() * p.v.mean();
  r.total = r.F1 + r.F2 + r.F3;
  return r;
}

double estimate_functional(const PhasePoint& p, const RenormContext& ctx, double eps) {
  const int s = static_cast<int>(std::lround(ctx.s));
  if (std::abs(ctx.s - s) > 0.0 || s < 2 || s % 2 != 0)
    throw BadOrder("estimate_functional", "s must be an even integer");
  if (!(eps > 0.0 && eps < 0.5)) throw BadOrder("estimate_functional", "eps must lie in (0, 1/2)");
  require_dealiased("estimate_functional", ctx);
  const FourierGrid grid(ctx.G);
  const int N = ctx.N;
  const int M2 = 2 * N;

  auto holder = [&](const GridField& g, double reg) {
    const SpectralField f = grid.analyze(g, M2, M2);
    const auto blocks = besov_blocks(f, reg, kInf, ctx.G);
    return *std::max_element(blocks.begin(), blocks.end());
  };

  GridField q = grid.synthesize(riesz(p.u, ctx.s), N);
  for (double& x : q.values) x = x * x - ctx.sigma_N;
  double F = 1.0 + holder(q, -1.0 - eps);

  std::vector<GridField> dv;
  for (const MultiIndex& k : multi_indices_of_order(s - 1))
    dv.push_back(grid.synthesize(partial_derivative(p.v, k), N));
  std::vector<std::vector<GridField>> du(static_cast<std::size_t>(s + 1));
  for (int order = 0; order <= s; ++order)
    for (const MultiIndex& a : multi_indices_of_order(order))
      du[static_cast<std::size_t>(order)].push_back(grid.synthesize(partial_derivative(p.u, a), N));

  GridField prod(ctx.G);
  double top = 0.0, low = 0.0;
  for (const GridField& gv : dv) {
    for (int order = 0; order <= s; ++order) {
      for (const GridField& gu : du[static_cast<std::size_t>(order)]) {
        for (std::size_t i = 0; i < prod.values.size(); ++i) prod.values[i] = gv.values[i] * gu.values[i];
        if (order == s)
          top = std::max(top, holder(prod, -1.0 - eps));
        else
          low = std::max(low, holder(prod, -0.5 - eps));
      }
    }
  }
  return F + top + low;
}

}  // namespace wrlb
