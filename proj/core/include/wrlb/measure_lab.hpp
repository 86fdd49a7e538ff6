// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "wrlb/ensemble_stats.hpp"
#include "wrlb/nlw_dynamics.hpp"
#include "wrlb/phase_point.hpp"
#include "wrlb/renorm_energy.hpp"

namespace wrlb {

/// Smallest ensemble accepted by the Monte Carlo estimators.
inline constexpr std::size_t kMinSamples = 1000;

/// The event {||(u, v)||_{H^sigma x H^{sigma-1}} <= R}.
struct BallSet {
  double R = 1.0;
  double sigma = 3.4;
  /// R <= 0 or infinite R is treated as the whole space.
  bool whole_space() const { return !(R > 0.0) || R == std::numeric_limits<double>::infinity(); }
  bool contains(const PhasePoint& p) const;
};

/// Estimate of E[exp(-p R_{s,N}(u))] under the u-marginal of nu_s.
struct DensityEstimate {
  EnsembleStats weights;           // of exp(-p R)
  EnsembleStats interaction;       // of R itself; its mean is the Jensen point
  double log_mean = 0.0;           // log of weights.mean, computed without overflow
  double max_exponent = 0.0;       // largest -p R seen (heavy-tail guard)
  double guard_bound = 0.0;        // -(9/2) sigma_N^2, an a priori lower bound on R
  std::size_t guard_violations = 0;
};

/// R_{s,N}(u_i) for i < samples, u_i the i-th nu_s sample with band N.
std::vector<double> sample_interactions(double s, int N, std::size_t samples, std::uint64_t seed,
                                        const InteractionModel& model = {}, int workers = 0);

/// Moment estimate from precomputed interaction values.
DensityEstimate density_from_interactions(std::span<const double> R, double p, double sigma_N);

DensityEstimate partition_function(double s, int N, std::size_t samples, std::uint64_t seed,
                                   const InteractionModel& model = {}, int workers = 0);

/// p must be 1, 2 or 4 (BadOrder otherwise).
DensityEstimate density_moments(double s, int N, double p, std::size_t samples,
                                std::uint64_t seed, const InteractionModel& model = {},
                                int workers = 0);

/// E|R_{s,N}(u) - R_{s,M}(u)|^p with the same u at both cuts.
EnsembleStats interaction_convergence(double s, int N, int M, double p, std::size_t samples,
                                      std::uint64_t seed, int workers = 0);

struct TransportEstimate {
  double mass = 0.0;
  double ci95 = 0.0;         // delta-method half-width of the ratio estimator
  std::size_t count = 0;
  std::size_t accepted = 0;  // samples inside the set
  double acceptance = 0.0;
  double max_exponent = 0.0; // largest log-weight
  double ess = 0.0;          // effective sample size of the weights
};

struct TransportOptions {
  double dt = 1e-3;
  Scheme scheme = Scheme::Strang;
  int workers = 0;
};

/// rho_{s,N}(Phi_N(t)(A)) by reweighting nu_s samples with
/// exp(H_s(x) - E_{s,N}(Phi_N(t) x)), normalized by the same sum over all
/// samples. Throws DegenerateSet when fewer than 0.1% of samples fall in A.
TransportEstimate pushforward_mass(const BallSet& A, double t, double s, int N,
                                   std::size_t samples, std::uint64_t seed,
                                   const TransportOptions& opts = {});

/// rho_{s,N}(A) from the interaction alone, exp(-R_{s,N}(u)) weights.
TransportEstimate restricted_density(const BallSet& A, double s, int N, std::size_t samples,
                                     std::uint64_t seed, int workers = 0);

/// Central difference of pushforward_mass at t = 0 with common samples.
struct TransportSlope {
  double slope = 0.0;
  double mass = 0.0;    // at t = 0
  double h = 0.0;
};
TransportSlope transport_slope(const BallSet& A, double h, double s, int N, std::size_t samples,
                               std::uint64_t seed, const TransportOptions& opts = {});

}  // namespace wrlb
