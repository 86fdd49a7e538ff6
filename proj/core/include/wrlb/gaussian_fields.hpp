// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wrlb/phase_point.hpp"
#include "wrlb/renorm_context.hpp"
#include "wrlb/spectral_field.hpp"

namespace wrlb {

enum class MeasureKind { Mu, Nu };

/// Gaussian measure on phase space given by per-mode standard deviations.
struct MeasureSpec {
  double s = 4.0;
  MeasureKind kind = MeasureKind::Nu;
  int M = 8;
  /// Only modes with |n| <= band are drawn (band < 0: the whole cube).
  int band = -1;

  double u_weight(int n_sq) const;
  double v_weight(int n_sq) const;

  static MeasureSpec nu(double s, int M, int band = -1) { return {s, MeasureKind::Nu, M, band}; }
  static MeasureSpec mu(double s, int M, int band = -1) { return {s, MeasureKind::Mu, M, band}; }
};

/// Sample `index` of the ensemble keyed by `seed`. Each mode draws from its
/// own counter, so two specs that differ only in M or band agree on every
/// mode they share.
PhasePoint sample(const MeasureSpec& spec, std::uint64_t seed, std::uint64_t index = 0);
/// The u-component of sample(spec, seed, index), without drawing v.
SpectralField sample_u(const MeasureSpec& spec, std::uint64_t seed, std::uint64_t index = 0);

/// sum over 1 <= |n| <= N of |n|^{2s} / (|n|^2 + |n|^{2s+2}), by exact
/// lattice enumeration.
double sigma_n(double s, int N);

/// (D^s pi_N u)^2 - sigma_N on the cube of radius 2N.
SpectralField wick_square(const SpectralField& u, const RenormContext& ctx);

/// d^kappa pi_N v * d^alpha pi_N u on the cube of radius 2N. ctx.s must be
/// an integer with |kappa| = s - 1 and |alpha| <= s, else BadOrder.
SpectralField mixed_product(const SpectralField& v, const SpectralField& u,
                            const MultiIndex& kappa, const MultiIndex& alpha,
                            const RenormContext& ctx);

/// One point of a shell-averaged power spectrum.
struct ShellPoint {
  int k = 0;              // shell index round(|n|)
  double mean_sq = 0.0;   // ensemble mean of |c(n)|^2 over the shell
  double std_error = 0.0; // standard error across samples
  std::size_t modes = 0;  // lattice points in the shell
};

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::vector<ShellPoint> shells;
};

/// Streaming accumulator of shell-averaged |c(n)|^2 over an ensemble.
class DecayAccumulator {
 public:
  explicit DecayAccumulator(int M = 0);

  void add(const SpectralField& f);
  void merge(const DecayAccumulator& other);
  std::size_t count() const noexcept { return count_; }
  int max_shell() const noexcept { return static_cast<int>(sum_.size()) - 1; }

  std::vector<ShellPoint> shells() const;
  /// Least-squares fit of log mean_sq against log<k> for k in shells.
  /// Throws InsufficientSamples below min_samples draws.
  DecayFit fit(const std::vector<int>& shells, std::size_t min_samples = 1000) const;

 private:
  int M_;
  std::size_t count_ = 0;
  std::vector<std::size_t> modes_;
  std::vector<double> sum_;    // sum over samples of the shell average
  std::vector<double> sumsq_;  // and of its square
};

/// Shell-binned decay fit of an ensemble over the listed shells. The shells
/// must span a factor of at least 4 in |n|.
DecayFit spectral_decay_fit(const std::vector<SpectralField>& samples,
                            const std::vector<int>& shells, std::size_t min_samples = 1000);

/// sum over |n| <= N of (a_n/b_n - 1)^2 for the u and v weights of mu_s
/// (a) against nu_s (b).
double kakutani_partial_sum(double s, int N);

}  // namespace wrlb
