// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrlb/measure_lab.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wrlb/besov_norms.hpp"
#include "wrlb/errors.hpp"
#include "wrlb/gaussian_fields.hpp"
#include "wrlb/parallel.hpp"

namespace wrlb {
namespace {

void require_samples(const char* op, std::size_t samples) {
  if (samples < kMinSamples)
    throw InsufficientSamples(op, "need at least " + std::to_string(kMinSamples) +
                                      " samples, got " + std::to_string(samples));
}

struct WeightedSample {
  bool in_set = false;
  std::vector<double> log_w;  // one per requested time
};

TransportEstimate ratio_estimate(const char* op, const std::vector<WeightedSample>& xs,
                                 std::size_t slot) {
  TransportEstimate out;
  out.count = xs.size();
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& x : xs) m = std::max(m, x.log_w[slot]);
  out.max_exponent = m;
  double den = 0.0, num = 0.0, sq = 0.0;
  for (const auto& x : xs) {
    const double w = std::exp(x.log_w[slot] - m);
    den += w;
    sq += w * w;
    if (x.in_set) {
      num += w;
      ++out.accepted;
    }
  }
  out.acceptance = static_cast<double>(out.accepted) / static_cast<double>(out.count);
  if (out.acceptance < 1e-3)
    throw DegenerateSet(op, "acceptance " + std::to_string(out.acceptance) + " is below 0.1%");
  out.mass = num / den;
  double var = 0.0;
  for (const auto& x : xs) {
    const double w = std::exp(x.log_w[slot] - m);
    const double r = w * ((x.in_set ? 1.0 : 0.0) - out.mass);
    var += r * r;
  }
  out.ci95 = 1.96 * std::sqrt(var) / den;
  out.ess = den * den / sq;
  return out;
}

std::vector<WeightedSample> transport_samples(const BallSet& A, const std::vector<double>& times,
                                              double s, int N, std::size_t samples,
                                              std::uint64_t seed, const TransportOptions& opts) {
  const RenormContext ctx = RenormContext::make(s, N);
  const MeasureSpec spec = MeasureSpec::nu(s, N, N);
  std::vector<WeightedSample> xs(samples);
  parallel_for(samples, opts.workers, [&](std::size_t i) {
    const PhasePoint x = sample(spec, seed, i);
    WeightedSample& w = xs[i];
    w.in_set = A.whole_space() || A.contains(x);
    const double h = hamiltonian_part(x, s);
    for (double t : times) {
      double e;
      if (t == 0.0) {
        e = full_energy(x, ctx).total;
      } else {
        const FlowParams fp{N, opts.dt, opts.scheme, t, false};
        e = full_energy(evolve(x, fp, ctx), ctx).total;
      }
      w.log_w.push_back(h - e);
    }
  });
  return xs;
}

}  // namespace

bool BallSet::contains(const PhasePoint& p) const {
  return whole_space() || sobolev_pair_norm(p, sigma) <= R;
}

std::vector<double> sample_interactions(double s, int N, std::size_t samples, std::uint64_t seed,
                                        const InteractionModel& model, int workers) {
  const RenormContext ctx = RenormContext::make(s, N);
  const MeasureSpec spec = MeasureSpec::nu(s, N, N);
  std::vector<double> R(samples);
  parallel_for(samples, workers, [&](std::size_t i) {
    R[i] = interaction(sample_u(spec, seed, i), ctx, model);
  });
  return R;
}

DensityEstimate density_from_interactions(std::span<const double> R, double p, double sigma_N) {
  DensityEstimate out;
  out.guard_bound = -4.5 * sigma_N * sigma_N;
  double m = -std::numeric_limits<double>::infinity();
  for (double r : R) m = std::max(m, -p * r);
  out.max_exponent = m;
  double scaled = 0.0;
  for (double r : R) {
    out.weights.add(std::exp(-p * r));
    out.interaction.add(r);
    scaled += std::exp(-p * r - m);
    if (r < out.guard_bound) ++out.guard_violations;
  }
  out.log_mean = m + std::log(scaled / static_cast<double>(R.size()));
  return out;
}

DensityEstimate partition_function(double s, int N, std::size_t samples, std::uint64_t seed,
                                   const InteractionModel& model, int workers) {
  require_samples("partition_function", samples);
  const auto R = sample_interactions(s, N, samples, seed, model, workers);
  return density_from_interactions(R, 1.0, sigma_n(s, N));
}

DensityEstimate density_moments(double s, int N, double p, std::size_t samples,
                                std::uint64_t seed, const InteractionModel& model, int workers) {
  if (p != 1.0 && p != 2.0 && p != 4.0) throw BadOrder("density_moments", "p must be 1, 2 or 4");
  require_samples("density_moments", samples);
  const auto R = sample_interactions(s, N, samples, seed, model, workers);
  return density_from_interactions(R, p, sigma_n(s, N));
}

EnsembleStats interaction_convergence(double s, int N, int M, double p, std::size_t samples,
                                      std::uint64_t seed, int workers) {
  if (N > M) throw BadOrder("interaction_convergence", "need N <= M");
  require_samples("interaction_convergence", samples);
  if (N == M) {
    EnsembleStats zero;
    for (std::size_t i = 0; i < samples; ++i) zero.add(0.0);
    return zero;
  }
  const RenormContext lo = RenormContext::make(s, N);
  const RenormContext hi = RenormContext::make(s, M);
  const MeasureSpec spec = MeasureSpec::nu(s, M, M);
  return parallel_reduce(
      samples, workers, EnsembleStats{},
      [&](std::size_t i, EnsembleStats& acc) {
        const SpectralField u = sample_u(spec, seed, i);
        const double d = interaction(u, lo) - interaction(u, hi);
        acc.add(std::pow(std::abs(d), p));
      },
      [](EnsembleStats& a, const EnsembleStats& b) { a.merge(b); });
}

TransportEstimate pushforward_mass(const BallSet& A, double t, double s, int N,
                                   std::size_t samples, std::uint64_t seed,
                                   const TransportOptions& opts) {
  require_samples("pushforward_mass", samples);
  const auto xs = transport_samples(A, {t}, s, N, samples, seed, opts);
  return ratio_estimate("pushforward_mass", xs, 0);
}

TransportEstimate restricted_density(const BallSet& A, double s, int N, std::size_t samples,
                                     std::uint64_t seed, int workers) {
  require_samples("restricted_density", samples);
  const RenormContext ctx = RenormContext::make(s, N);
  const MeasureSpec spec = MeasureSpec::nu(s, N, N);
  std::vector<WeightedSample> xs(samples);
  parallel_for(samples, workers, [&](std::size_t i) {
    const PhasePoint x = sample(spec, seed, i);
    xs[i].in_set = A.contains(x);
    xs[i].log_w = {-interaction(x.u, ctx)};
  });
  return ratio_estimate("restricted_density", xs, 0);
}

TransportSlope transport_slope(const BallSet& A, double h, double s, int N, std::size_t samples,
                               std::uint64_t seed, const TransportOptions& opts) {
  require_samples("transport_slope", samples);
  const auto xs = transport_samples(A, {-h, 0.0, h}, s, N, samples, seed, opts);
  TransportSlope out;
  out.h = h;
  const double minus = ratio_estimate("transport_slope", xs, 0).mass;
  out.mass = ratio_estimate("transport_slope", xs, 1).mass;
  const double plus = ratio_estimate("transport_slope", xs, 2).mass;
  out.slope = (plus - minus) / (2.0 * h);
  return out;
}

}  // namespace wrlb
