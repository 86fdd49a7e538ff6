// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "wrlb/phase_point.hpp"
#include "wrlb/renorm_context.hpp"

namespace wrlb {

enum class Scheme {
  Strang,    // second order, one cubic evaluation per step
  Yoshida4,  // fourth order triple-jump composition of Strang, three evaluations
  Optimal2,  // second order, two evaluations, error-norm minimizing drift split
};

struct FlowParams {
  int N = 8;
  double dt = 1e-3;
  Scheme scheme = Scheme::Strang;
  double t = 0.0;
  /// Switch off the cubic kick (pure linear flow); used for diagnostics.
  bool linear_only = false;
};

/// Exact free wave flow: per mode cos/sin rotation at frequency |n|, and
/// u + t v, v unchanged at n = 0.
PhasePoint linear_propagator(const PhasePoint& p, double t);

/// One step of size params.dt.
PhasePoint step(const PhasePoint& p, const FlowParams& params, const RenormContext& ctx);

/// Called after every `every` steps with the current time and state.
using FlowObserver = std::function<void(double, const PhasePoint&)>;

/// Flow to time params.t using ceil(|t|/dt) equal steps of size <= dt, so the
/// map is exactly reversible. Negative t runs the time-reversed flow.
PhasePoint evolve(const PhasePoint& p, const FlowParams& params, const RenormContext& ctx,
                  const FlowObserver& observer = {}, int every = 1);

/// E_N = 1/2 int(|grad u|^2 + v^2) + 1/4 int (pi_N u)^4.
double energy(const PhasePoint& p, int N, const RenormContext& ctx);

/// sup over the sampled times of the H^sigma x H^{sigma-1} distance between
/// the flows truncated at N_small and N_large, both with step dt on a grid
/// fit for N_large. `samples` equispaced times in (0, t] are compared.
double approximation_gap(const PhasePoint& p, double t, int N_small, int N_large, double dt,
                         double sigma, int samples = 10, Scheme scheme = Scheme::Strang);

}  // namespace wrlb
