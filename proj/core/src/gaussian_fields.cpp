// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrlb/gaussian_fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wrlb/errors.hpp"
#include "wrlb/fourier_grid.hpp"
#include "wrlb/random.hpp"
#include "wrlb/spectral_ops.hpp"

namespace wrlb {
namespace {

constexpr std::uint64_t kStreamU = 0;
constexpr std::uint64_t kStreamV = 1;

void fill_gaussian(SpectralField& f, const MeasureSpec& spec, const CounterRng& rng, bool is_u) {
  const int M = spec.M;
  const long b2 = spec.band < 0 ? -1 : static_cast<long>(spec.band) * spec.band;
  const int m = spec.band < 0 ? M : std::min(M, spec.band);
  for (int n1 = 0; n1 <= m; ++n1)
    for (int n2 = -m; n2 <= m; ++n2)
      for (int n3 = -m; n3 <= m; ++n3) {
        const int k = norm_sq(n1, n2, n3);
        if (b2 >= 0 && k > b2) continue;
        if (k != 0 && !is_canonical(n1, n2, n3)) continue;
        const double w = is_u ? spec.u_weight(k) : spec.v_weight(k);
        const auto [z1, z2] = rng.normal_pair(mode_key(n1, n2, n3));
        if (k == 0) {
          f(0, 0, 0) = w * z1;
        } else {
          constexpr double h = 1.0 / std::numbers::sqrt2;
          const Complex g(z1 * h, z2 * h);
          f(n1, n2, n3) = w * g;
          f(-n1, -n2, -n3) = w * std::conj(g);
        }
      }
}

void require_dealiased(const char* op, const RenormContext& ctx) {
  if (ctx.G < 4 * ctx.N + 1)
    throw GridTooSmall(op, "dealiasing requires G >= 4N+1 (G = " + std::to_string(ctx.G) +
                               ", N = " + std::to_string(ctx.N) + ")");
}

}  // namespace

double MeasureSpec::u_weight(int n_sq) const {
  const double k = static_cast<double>(n_sq);
  if (kind == MeasureKind::Mu) return std::pow(1.0 + k, -0.5 * (s + 1.0));
  return bessel_inverse_weight(n_sq, s);
}

double MeasureSpec::v_weight(int n_sq) const {
  const double k = static_cast<double>(n_sq);
  if (kind == MeasureKind::Mu) return std::pow(1.0 + k, -0.5 * s);
  return 1.0 / std::sqrt(1.0 + std::pow(k, s));
}

PhasePoint sample(const MeasureSpec& spec, std::uint64_t seed, std::uint64_t index) {
  PhasePoint p(spec.M);
  fill_gaussian(p.u, spec, CounterRng(seed, index, kStreamU), true);
  fill_gaussian(p.v, spec, CounterRng(seed, index, kStreamV), false);
  return p;
}

SpectralField sample_u(const MeasureSpec& spec, std::uint64_t seed, std::uint64_t index) {
  SpectralField u(spec.M);
  fill_gaussian(u, spec, CounterRng(seed, index, kStreamU), true);
  return u;
}

double sigma_n(double s, int N) {
  if (N < 1) return 0.0;
  const long nmax = static_cast<long>(N) * N;
  std::vector<long> shell(static_cast<std::size_t>(nmax + 1), 0);
  for (int n1 = -N; n1 <= N; ++n1)
    for (int n2 = -N; n2 <= N; ++n2)
      for (int n3 = -N; n3 <= N; ++n3) {
        const long k = norm_sq(n1, n2, n3);
        if (k >= 1 && k <= nmax) ++shell[static_cast<std::size_t>(k)];
      }
  double acc = 0.0;
  for (long k = 1; k <= nmax; ++k) {
    if (shell[static_cast<std::size_t>(k)] == 0) continue;
    const double kk = static_cast<double>(k);
    // |n|^{2s} / (|n|^2 + |n|^{2s+2}) = 1 / (k^{1-s} + k)
    acc += static_cast<double>(shell[static_cast<std::size_t>(k)]) / (std::pow(kk, 1.0 - s) + kk);
  }
  return acc;
}

RenormContext RenormContext::make(double s, int N, int G) {
  if (N < 0) throw BadOrder("RenormContext", "negative truncation");
  RenormContext ctx;
  ctx.s = s;
  ctx.N = N;
  ctx.G = G > 0 ? G : dealias_grid_size(N, 4);
  if (ctx.G < 4 * N + 1)
    throw GridTooSmall("RenormContext", "dealiasing requires G >= 4N+1 (G = " +
                                            std::to_string(ctx.G) + ", N = " + std::to_string(N) + ")");
  if (ctx.G % 2 == 0) throw GridTooSmall("RenormContext", "grid size must be odd");
  ctx.sigma_N = sigma_n(s, N);
  return ctx;
}

SpectralField wick_square(const SpectralField& u, const RenormContext& ctx) {
  require_dealiased("wick_square", ctx);
  const FourierGrid grid(ctx.G);
  GridField a = grid.synthesize(riesz(u, ctx.s), ctx.N);
  for (double& x : a.values) x = x * x - ctx.sigma_N;
  return grid.analyze(a, 2 * ctx.N, 2 * ctx.N);
}

SpectralField mixed_product(const SpectralField& v, const SpectralField& u,
                            const MultiIndex& kappa, const MultiIndex& alpha,
                            const RenormContext& ctx) {
  const int s = static_cast<int>(std::lround(ctx.s));
  if (std::abs(ctx.s - s) > 0.0)
    throw BadOrder("mixed_product", "regularity must be an integer for multi-index products");
  if (kappa.order() != s - 1)
    throw BadOrder("mixed_product", "|kappa| = " + std::to_string(kappa.order()) +
                                        " but s - 1 = " + std::to_string(s - 1));
  if (alpha.order() > s)
    throw BadOrder("mixed_product", "|alpha| = " + std::to_string(alpha.order()) + " exceeds s");
  require_dealiased("mixed_product", ctx);
  const FourierGrid grid(ctx.G);
  GridField a = grid.synthesize(partial_derivative(v, kappa), ctx.N);
  const GridField b = grid.synthesize(partial_derivative(u, alpha), ctx.N);
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] *= b.values[i];
  return grid.analyze(a, 2 * ctx.N, 2 * ctx.N);
}

DecayAccumulator::DecayAccumulator(int M) : M_(M) {
  const int kmax = static_cast<int>(std::lround(std::sqrt(3.0) * M));
  modes_.assign(static_cast<std::size_t>(kmax + 1), 0);
  sum_.assign(modes_.size(), 0.0);
  sumsq_.assign(modes_.size(), 0.0);
  for_each_mode(M, [&](int n1, int n2, int n3, std::size_t) {
    ++modes_[static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(norm_sq(n1, n2, n3)))))];
  });
}

void DecayAccumulator::add(const SpectralField& f) {
  if (f.M() != M_) throw BadShape("spectral_decay_fit", "sample mode radius differs from accumulator");
  std::vector<double> shell(modes_.size(), 0.0);
  const auto& c = f.coeffs();
  for_each_mode(M_, [&](int n1, int n2, int n3, std::size_t i) {
    shell[static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(norm_sq(n1, n2, n3)))))] +=
        std::norm(c[i]);
  });
  for (std::size_t k = 0; k < shell.size(); ++k) {
    if (modes_[k] == 0) continue;
    const double avg = shell[k] / static_cast<double>(modes_[k]);
    sum_[k] += avg;
    sumsq_[k] += avg * avg;
  }
  ++count_;
}

void DecayAccumulator::merge(const DecayAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0 && other.M_ != M_) {
    *this = other;
    return;
  }
  if (other.M_ != M_) throw BadShape("spectral_decay_fit", "cannot merge accumulators of different size");
  for (std::size_t k = 0; k < sum_.size(); ++k) {
    sum_[k] += other.sum_[k];
    sumsq_[k] += other.sumsq_[k];
  }
  count_ += other.count_;
}

std::vector<ShellPoint> DecayAccumulator::shells() const {
  std::vector<ShellPoint> out;
  const double n = static_cast<double>(count_);
  for (std::size_t k = 0; k < sum_.size(); ++k) {
    if (modes_[k] == 0) continue;
    ShellPoint p;
    p.k = static_cast<int>(k);
    p.modes = modes_[k];
    p.mean_sq = count_ ? sum_[k] / n : 0.0;
    if (count_ > 1) {
      const double var = std::max(0.0, (sumsq_[k] - n * p.mean_sq * p.mean_sq) / (n - 1.0));
      p.std_error = std::sqrt(var / n);
    }
    out.push_back(p);
  }
  return out;
}

DecayFit DecayAccumulator::fit(const std::vector<int>& shells, std::size_t min_samples) const {
  if (count_ < min_samples)
    throw InsufficientSamples("spectral_decay_fit", "have " + std::to_string(count_) +
                                                        " samples, need " + std::to_string(min_samples));
  if (shells.size() < 2) throw BadShape("spectral_decay_fit", "need at least two shells");
  const auto [lo, hi] = std::minmax_element(shells.begin(), shells.end());
  if (*lo < 1 || *hi < 4 * *lo)
    throw BadShape("spectral_decay_fit", "shell list must span a factor of 4 in |n|");
  const auto all = this->shells();
  DecayFit out;
  std::vector<double> xs, ys;
  for (int k : shells) {
    auto it = std::find_if(all.begin(), all.end(), [k](const ShellPoint& p) { return p.k == k; });
    if (it == all.end() || it->mean_sq <= 0.0)
      throw BadShape("spectral_decay_fit", "shell " + std::to_string(k) + " is empty");
    out.shells.push_back(*it);
    xs.push_back(0.5 * std::log1p(static_cast<double>(k) * k));
    ys.push_back(std::log(it->mean_sq));
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  if (xs.size() > 2) {
    double ssr = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - out.intercept - out.slope * xs[i];
      ssr += r * r;
    }
    out.slope_stderr = std::sqrt(ssr / (m - 2.0) / sxx);
  }
  return out;
}

DecayFit spectral_decay_fit(const std::vector<SpectralField>& samples,
                            const std::vector<int>& shells, std::size_t min_samples) {
  if (samples.empty())
    throw InsufficientSamples("spectral_decay_fit", "no samples");
  DecayAccumulator acc(samples.front().M());
  for (const auto& f : samples) acc.add(f);
  return acc.fit(shells, min_samples);
}

double kakutani_partial_sum(double s, int N) {
  const MeasureSpec mu = MeasureSpec::mu(s, N);
  const MeasureSpec nu = MeasureSpec::nu(s, N);
  const long nmax = static_cast<long>(N) * N;
  double acc = 0.0;
  for (int n1 = -N; n1 <= N; ++n1)
    for (int n2 = -N; n2 <= N; ++n2)
      for (int n3 = -N; n3 <= N; ++n3) {
        const int k = norm_sq(n1, n2, n3);
        if (k > nmax) continue;
        const double ru = mu.u_weight(k) / nu.u_weight(k);
        const double rv = mu.v_weight(k) / nu.v_weight(k);
        acc += (ru * ru - 1.0) * (ru * ru - 1.0) + (rv * rv - 1.0) * (rv * rv - 1.0);
      }
  return acc;
}

}  // namespace wrlb
