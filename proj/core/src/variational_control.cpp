// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrlb/variational_control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wrlb/errors.hpp"
#include "wrlb/gaussian_fields.hpp"
#include "wrlb/measure_lab.hpp"
#include "wrlb/parallel.hpp"
#include "wrlb/spectral_ops.hpp"

namespace wrlb {
namespace {

// Fixed number of partial sums, so memory stays bounded and the reduction
// order never depends on the worker count.
constexpr std::size_t kPartitions = 8;

void require_samples(const char* op, std::size_t samples) {
  if (samples < kMinSamples)
    throw InsufficientSamples(op, "need at least " + std::to_string(kMinSamples) +
                                      " samples, got " + std::to_string(samples));
}

void require_band(const char* op, const SpectralField& theta, int N) {
  const long n2 = static_cast<long>(N) * N;
  bool ok = true;
  for_each_mode(theta.M(), [&](int a, int b, int c, std::size_t i) {
    if (norm_sq(a, b, c) > n2 && theta.coeffs()[i] != Complex{}) ok = false;
  });
  if (!ok) throw BadShape(op, "shift must be band-limited to |n| <= N");
}

// w_n^{-2} for the nu_s u-weights
double inv_weight_sq(int k, double s) {
  if (k == 0) return 1.0;
  const double kk = static_cast<double>(k);
  return kk + std::pow(kk, s + 1.0);
}

SpectralField cm_gradient(const SpectralField& theta, double s) {
  SpectralField g(theta.M());
  for_each_mode(theta.M(), [&](int a, int b, int c, std::size_t i) {
    g.coeffs()[i] = inv_weight_sq(norm_sq(a, b, c), s) * theta.coeffs()[i];
  });
  return g;
}

// pi_N f_phi + D^s pi_N f_psi on the cube of radius N
SpectralField l2_gradient(const FourierGrid& grid, const GridField& f_phi, const GridField& f_psi,
                          int N, double s, bool with_psi) {
  SpectralField g = grid.analyze(f_phi, N, N);
  if (with_psi) g += riesz(grid.analyze(f_psi, N, N), s);
  return g;
}

}  // namespace

double cm_cost(const SpectralField& theta, double s) {
  double acc = 0.0;
  for_each_mode(theta.M(), [&](int a, int b, int c, std::size_t i) {
    acc += inv_weight_sq(norm_sq(a, b, c), s) * std::norm(theta.coeffs()[i]);
  });
  return 0.5 * acc;
}

ShiftField ShiftField::make(SpectralField theta, double s) {
  ShiftField f;
  f.cm_cost = wrlb::cm_cost(theta, s);
  f.theta = std::move(theta);
  return f;
}

ShiftProblem::ShiftProblem(double s, int N, std::size_t samples, std::uint64_t seed,
                           const InteractionModel& model, int workers)
    : ctx_(RenormContext::make(s, N)), samples_(samples), seed_(seed), model_(model) {
  require_samples("shift_objective", samples);
  const int G = ctx_.G;
  const MeasureSpec spec = MeasureSpec::nu(s, N, N);
  const FourierGrid grid(G);
  struct Partial {
    std::vector<GridField> m;
  };
  std::vector<Partial> parts(kPartitions);
  parallel_for(kPartitions, workers, [&](std::size_t p) {
    auto& m = parts[p].m;
    m.assign(10, GridField(G));
    const std::size_t begin = samples * p / kPartitions;
    const std::size_t end = samples * (p + 1) / kPartitions;
    GridField c(G), a(G);
    for (std::size_t i = begin; i < end; ++i) {
      const SpectralField y = sample_u(spec, seed, i);
      grid.synthesize(y, c, N);
      grid.synthesize(riesz(y, s), a, N);
      for (std::size_t x = 0; x < c.values.size(); ++x) {
        const double cx = c.values[x], ax = a.values[x];
        const double c2 = cx * cx, a2 = ax * ax;
        m[0].values[x] += cx;
        m[1].values[x] += c2;
        m[2].values[x] += c2 * cx;
        m[3].values[x] += c2 * c2;
        m[4].values[x] += ax;
        m[5].values[x] += ax * cx;
        m[6].values[x] += ax * c2;
        m[7].values[x] += a2;
        m[8].values[x] += a2 * cx;
        m[9].values[x] += a2 * c2;
      }
    }
  });
  GridField* out[10] = {&m01_, &m02_, &m03_, &m04_, &m10_, &m11_, &m12_, &m20_, &m21_, &m22_};
  const double inv = 1.0 / static_cast<double>(samples);
  for (int k = 0; k < 10; ++k) {
    *out[k] = GridField(G);
    for (const auto& p : parts)
      for (std::size_t x = 0; x < out[k]->values.size(); ++x) out[k]->values[x] += p.m[static_cast<std::size_t>(k)].values[x];
    for (double& v : out[k]->values) v *= inv;
  }
}

double ShiftProblem::objective(const SpectralField& theta) const {
  require_band("shift_objective", theta, ctx_.N);
  const FourierGrid grid(ctx_.G);
  const GridField phi = grid.synthesize(theta, ctx_.N);
  const GridField psi = grid.synthesize(riesz(theta, ctx_.s), ctx_.N);
  const double sig = ctx_.sigma_N;
  double acc = 0.0;
  for (std::size_t x = 0; x < phi.values.size(); ++x) {
    const double f = phi.values[x], g = psi.values[x];
    const double f2 = f * f, g2 = g * g;
    const double P = m22_.values[x] + 2 * f * m21_.values[x] + f2 * m20_.values[x] +
                     2 * g * m12_.values[x] + 4 * g * f * m11_.values[x] +
                     2 * g * f2 * m10_.values[x] + g2 * m02_.values[x] +
                     2 * g2 * f * m01_.values[x] + g2 * f2;
    const double S = m02_.values[x] + 2 * f * m01_.values[x] + f2;
    const double Q4 = m04_.values[x] + 4 * f * m03_.values[x] + 6 * f2 * m02_.values[x] +
                      4 * f2 * f * m01_.values[x] + f2 * f2;
    acc += model_.wick * 1.5 * (P - sig * S) + model_.quartic * 0.25 * Q4 +
           model_.quadratic * 0.5 * S;
  }
  return acc / static_cast<double>(phi.values.size()) + cm_cost(theta, ctx_.s);
}

SpectralField ShiftProblem::gradient(const SpectralField& theta) const {
  require_band("shift_gradient", theta, ctx_.N);
  const int N = ctx_.N;
  const FourierGrid grid(ctx_.G);
  const GridField phi = grid.synthesize(theta, N);
  const GridField psi = grid.synthesize(riesz(theta, ctx_.s), N);
  const double sig = ctx_.sigma_N;
  GridField fphi(ctx_.G), fpsi(ctx_.G);
  for (std::size_t x = 0; x < phi.values.size(); ++x) {
    const double f = phi.values[x], g = psi.values[x];
    const double f2 = f * f, g2 = g * g;
    const double dP_dphi = 2 * m21_.values[x] + 2 * f * m20_.values[x] + 4 * g * m11_.values[x] +
                           4 * g * f * m10_.values[x] + 2 * g2 * m01_.values[x] + 2 * g2 * f;
    const double dP_dpsi = 2 * m12_.values[x] + 4 * f * m11_.values[x] + 2 * f2 * m10_.values[x] +
                           2 * g * m02_.values[x] + 4 * g * f * m01_.values[x] + 2 * g * f2;
    const double dS = 2 * m01_.values[x] + 2 * f;
    const double dQ4 = 4 * m03_.values[x] + 12 * f * m02_.values[x] + 12 * f2 * m01_.values[x] +
                       4 * f2 * f;
    fphi.values[x] = model_.wick * 1.5 * (dP_dphi - sig * dS) + model_.quartic * 0.25 * dQ4 +
                     model_.quadratic * 0.5 * dS;
    fpsi.values[x] = model_.wick * 1.5 * dP_dpsi;
  }
  SpectralField g = l2_gradient(grid, fphi, fpsi, N, ctx_.s, model_.wick != 0.0);
  g += cm_gradient(theta.resized(N), ctx_.s);
  return g.M() == theta.M() ? g : g.resized(theta.M());
}

EnsembleStats shift_objective(const SpectralField& theta, double s, int N, std::size_t samples,
                              std::uint64_t seed, const InteractionModel& model, int workers) {
  require_samples("shift_objective", samples);
  require_band("shift_objective", theta, N);
  const RenormContext ctx = RenormContext::make(s, N);
  const MeasureSpec spec = MeasureSpec::nu(s, N, N);
  const double cost = cm_cost(theta, s);
  const SpectralField th = theta.resized(N);
  return parallel_reduce(
      samples, workers, EnsembleStats{},
      [&](std::size_t i, EnsembleStats& acc) {
        const SpectralField u = sample_u(spec, seed, i) + th;
        acc.add(interaction(u, ctx, model) + cost);
      },
      [](EnsembleStats& a, const EnsembleStats& b) { a.merge(b); });
}

ShiftGradient shift_gradient(const SpectralField& theta, double s, int N, std::size_t samples,
                             std::uint64_t seed, const InteractionModel& model, int workers) {
  require_samples("shift_gradient", samples);
  require_band("shift_gradient", theta, N);
  const RenormContext ctx = RenormContext::make(s, N);
  const MeasureSpec spec = MeasureSpec::nu(s, N, N);
  const FourierGrid grid(ctx.G);
  const SpectralField th = theta.resized(N);
  const std::size_t nc = th.size();
  struct Partial {
    std::vector<Complex> sum;
    std::vector<Complex> sumsq;  // (Re^2, Im^2)
  };
  std::vector<Partial> parts(kPartitions);
  parallel_for(kPartitions, workers, [&](std::size_t p) {
    auto& part = parts[p];
    part.sum.assign(nc, Complex{});
    part.sumsq.assign(nc, Complex{});
    const std::size_t begin = samples * p / kPartitions;
    const std::size_t end = samples * (p + 1) / kPartitions;
    GridField c(ctx.G), a(ctx.G), fphi(ctx.G), fpsi(ctx.G);
    for (std::size_t i = begin; i < end; ++i) {
      const SpectralField u = sample_u(spec, seed, i) + th;
      grid.synthesize(u, c, N);
      grid.synthesize(riesz(u, s), a, N);
      for (std::size_t x = 0; x < c.values.size(); ++x) {
        const double cx = c.values[x], ax = a.values[x];
        fphi.values[x] = model.wick * 3.0 * (ax * ax - ctx.sigma_N) * cx +
                         model.quartic * cx * cx * cx + model.quadratic * cx;
        fpsi.values[x] = model.wick * 3.0 * ax * cx * cx;
      }
      const SpectralField g = l2_gradient(grid, fphi, fpsi, N, s, model.wick != 0.0);
      for (std::size_t k = 0; k < nc; ++k) {
        const Complex z = g.coeffs()[k];
        part.sum[k] += z;
        part.sumsq[k] += Complex(z.real() * z.real(), z.imag() * z.imag());
      }
    }
  });
  std::vector<Complex> sum(nc), sumsq(nc);
  for (const auto& p : parts)
    for (std::size_t k = 0; k < nc; ++k) {
      sum[k] += p.sum[k];
      sumsq[k] += p.sumsq[k];
    }
  const double n = static_cast<double>(samples);
  ShiftGradient out{SpectralField(N), SpectralField(N)};
  for (std::size_t k = 0; k < nc; ++k) {
    const Complex mean = sum[k] / n;
    const double vr = std::max(0.0, (sumsq[k].real() - n * mean.real() * mean.real()) / (n - 1.0));
    const double vi = std::max(0.0, (sumsq[k].imag() - n * mean.imag() * mean.imag()) / (n - 1.0));
    out.mean.coeffs()[k] = mean;
    out.std_error.coeffs()[k] = Complex(std::sqrt(vr / n), std::sqrt(vi / n));
  }
  out.mean += cm_gradient(th, s);
  if (theta.M() != N) {
    out.mean = out.mean.resized(theta.M());
    out.std_error = out.std_error.resized(theta.M());
  }
  return out;
}

ShiftResult minimize_shift(double s, int N, std::size_t samples, std::uint64_t seed, int iters,
                           const InteractionModel& model, int workers) {
  if (iters < 1) throw BadOrder("minimize_shift", "iters must be >= 1");
  const ShiftProblem problem(s, N, samples, seed, model, workers);
  SpectralField theta(N);
  double W = problem.objective(theta);
  ShiftResult out;
  out.jensen = W;
  out.history.push_back(W);
  int rises = 0;
  constexpr double kArmijo = 1e-4;
  for (int it = 0; it < iters; ++it) {
    const SpectralField g = problem.gradient(theta);
    // Precondition by the Cameron-Martin covariance w_n^2.
    SpectralField d(N);
    double slope = 0.0;
    for_each_mode(N, [&](int a, int b, int c, std::size_t i) {
      d.coeffs()[i] = -g.coeffs()[i] / inv_weight_sq(norm_sq(a, b, c), s);
      slope += (g.coeffs()[i] * std::conj(d.coeffs()[i])).real();
    });
    out.grad_norm = std::sqrt(-slope);
    if (!(slope < -1e-14 * (1.0 + std::abs(W)))) break;
    double alpha = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt, alpha *= 0.5) {
      SpectralField trial = theta;
      trial += alpha * d;
      const double Wt = problem.objective(trial);
      if (std::isfinite(Wt) && Wt <= W + kArmijo * alpha * slope) {
        rises = Wt > W ? rises + 1 : 0;
        if (rises >= 10) throw Diverged("minimize_shift", "objective rose on 10 consecutive steps");
        theta = std::move(trial);
        W = Wt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    ++out.iterations;
    out.history.push_back(W);
  }
  out.bound = W;
  out.best = ShiftField::make(theta, s);
  out.bound_stats = shift_objective(theta, s, N, samples, seed, model, workers);
  return out;
}

}  // namespace wrlb
