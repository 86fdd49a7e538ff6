// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "wrlb/fourier_grid.hpp"
#include "wrlb/phase_point.hpp"
#include "wrlb/renorm_context.hpp"
#include "wrlb/spectral_field.hpp"

namespace wrlb {

/// Coefficients of the interaction terms. The default is the renormalized
/// interaction; switching terms off gives the simplified models used by the
/// Monte Carlo sanity checks.
struct InteractionModel {
  double wick = 1.0;       // (3/2) int Q_{s,N}(u_N) u_N^2
  double quartic = 1.0;    // (1/4) int u_N^4
  double quadratic = 0.0;  // (1/2) int u_N^2

  static InteractionModel full() { return {}; }
  static InteractionModel none() { return {0.0, 0.0, 0.0}; }
  static InteractionModel quartic_only() { return {0.0, 1.0, 0.0}; }
  static InteractionModel quadratic_only() { return {0.0, 0.0, 1.0}; }
};

/// R_{s,N}(u) for the given model, by grid quadrature of degree-4 products.
double interaction(const SpectralField& u, const RenormContext& ctx,
                   const InteractionModel& model = {});
/// Same on grid values of u_N and D^s u_N already synthesized on the ctx grid.
double interaction_from_grids(const GridField& u_N, const GridField& dsu_N,
                              const RenormContext& ctx, const InteractionModel& model = {});

/// Quadratic part H_s of the renormalized energy (the Gaussian density of nu_s):
/// 1/2 c(0)^2 + 1/2 sum (|n|^2 + |n|^{2s+2}) |u(n)|^2 + 1/2 sum (1 + |n|^{2s}) |v(n)|^2.
double hamiltonian_part(const PhasePoint& p, double s);

struct EnergyReport {
  double quadratic = 0.0;    // 1/2 int (D^{s+1}u)^2 + 1/2 int (D^s v)^2
  double wick_term = 0.0;    // (3/2) int Q_{s,N}(u_N) u_N^2
  double base_energy = 0.0;  // E_N
  double mean_sq = 0.0;      // 1/2 (int u_N)^2
  double total = 0.0;
};

EnergyReport full_energy(const PhasePoint& p, const RenormContext& ctx);

struct DerivativeReport {
  double F1 = 0.0;  // 3 int Q_{s,N}(u_N) v_N u_N
  double F2 = 0.0;  // -int D^{2s} v_N u_N^3 + 3 int D^s v_N D^s u_N u_N^2
  double F3 = 0.0;  // (int u_N)(int v_N)
  double total = 0.0;
};

/// d/dt of full_energy().total along the truncated flow, at p.
DerivativeReport energy_derivative(const PhasePoint& p, const RenormContext& ctx);

/// 1 + ||Q||_{C^{-1-eps}} + max_{|k|=s-1,|a|=s} ||d^k v_N d^a u_N||_{C^{-1-eps}}
///   + max_{|k|=s-1,|a|<=s-1} ||d^k v_N d^a u_N||_{C^{-1/2-eps}}.
/// Requires an even integer s (BadOrder otherwise) and eps in (0, 1/2).
double estimate_functional(const PhasePoint& p, const RenormContext& ctx, double eps);

}  // namespace wrlb
