// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrlb/nlw_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "wrlb/besov_norms.hpp"
#include "wrlb/errors.hpp"
#include "wrlb/fourier_grid.hpp"
#include "wrlb/spectral_ops.hpp"

namespace wrlb {
namespace {

// Exact free flow over a fixed time h, tabulated per mode.
class Propagator {
 public:
  Propagator(int M, double h) : M_(M) {
    const std::size_t S = static_cast<std::size_t>(2 * M + 1);
    cos_.resize(S * S * S);
    sin_over_w_.resize(cos_.size());
    w_sin_.resize(cos_.size());
    std::vector<double> c(static_cast<std::size_t>(3 * M * M + 1)), so(c.size()), ws(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double w = std::sqrt(static_cast<double>(k));
      c[k] = std::cos(w * h);
      so[k] = k == 0 ? h : std::sin(w * h) / w;
      ws[k] = w * std::sin(w * h);
    }
    for_each_mode(M, [&](int n1, int n2, int n3, std::size_t i) {
      const auto k = static_cast<std::size_t>(norm_sq(n1, n2, n3));
      cos_[i] = c[k];
      sin_over_w_[i] = so[k];
      w_sin_[i] = ws[k];
    });
  }

  void apply(PhasePoint& p) const {
    auto& u = p.u.coeffs();
    auto& v = p.v.coeffs();
    for (std::size_t i = 0; i < u.size(); ++i) {
      const Complex u0 = u[i];
      const Complex v0 = v[i];
      u[i] = cos_[i] * u0 + sin_over_w_[i] * v0;
      v[i] = -w_sin_[i] * u0 + cos_[i] * v0;
    }
  }

  int M() const noexcept { return M_; }

 private:
  int M_;
  std::vector<double> cos_, sin_over_w_, w_sin_;
};

struct Composition {
  std::vector<double> drift;  // linear sub-steps, one more than kicks
  std::vector<double> kick;
};

Composition composition(Scheme scheme) {
  if (scheme == Scheme::Yoshida4) {
    const double cbrt2 = std::cbrt(2.0);
    const double w1 = 1.0 / (2.0 - cbrt2);
    const double w0 = -cbrt2 / (2.0 - cbrt2);
    return {{0.5 * w1, 0.5 * (w1 + w0), 0.5 * (w0 + w1), 0.5 * w1}, {w1, w0, w1}};
  }
  if (scheme == Scheme::Optimal2) {
    // drift a, kick 1/2, drift 1-2a, kick 1/2, drift a; a minimizes the
    // leading error coefficients (McLachlan's two-stage method), a ~ 0.19318
    const double c = std::cbrt(2.0 * std::sqrt(326.0) + 36.0);
    const double a = 0.5 - c / 12.0 + 1.0 / (6.0 * c);
    return {{a, 1.0 - 2.0 * a, a}, {0.5, 0.5}};
  }
  return {{0.5, 0.5}, {1.0}};
}

void check_grid(const char* op, int N, int G) {
  if (G < 4 * N + 1)
    throw GridTooSmall(op, "dealiasing requires G >= 4N+1 (G = " + std::to_string(G) +
                               ", N = " + std::to_string(N) + ")");
}

void validate(const char* op, const FlowParams& params, const RenormContext& ctx) {
  if (!(params.dt > 0.0) || !std::isfinite(params.dt))
    throw BadOrder(op, "step size must be positive");
  if (params.N < 0) throw BadOrder(op, "truncation must be non-negative");
  check_grid(op, params.N, ctx.G);
}

// v <- v - tau * pi_N((pi_N u)^3)
void kick(PhasePoint& p, double tau, int N, const FourierGrid& grid, GridField& scratch) {
  if (tau == 0.0) return;
  grid.synthesize(p.u, scratch, N);
  for (double& x : scratch.values) x = x * x * x;
  const int m = std::min(N, p.M());
  const SpectralField c = grid.analyze(scratch, m, N);
  for (int n1 = -m; n1 <= m; ++n1)
    for (int n2 = -m; n2 <= m; ++n2)
      for (int n3 = -m; n3 <= m; ++n3) p.v(n1, n2, n3) -= tau * c(n1, n2, n3);
}

class Integrator {
 public:
  Integrator(int M, double h, const FlowParams& params, const RenormContext& ctx)
      : M_(M), h_(h), params_(params), grid_(ctx.G), comp_(composition(params.scheme)) {}

  // Advance by one step, leaving the trailing drift pending.
  void advance(PhasePoint& p) {
    drift(p, pending_ + comp_.drift.front());
    for (std::size_t j = 0; j < comp_.kick.size(); ++j) {
      if (!params_.linear_only) kick(p, comp_.kick[j] * h_, params_.N, grid_, scratch_);
      if (j + 1 < comp_.kick.size()) drift(p, comp_.drift[j + 1]);
    }
    pending_ = comp_.drift.back();
  }

  void flush(PhasePoint& p) {
    drift(p, pending_);
    pending_ = 0.0;
  }

 private:
  void drift(PhasePoint& p, double coeff) {
    if (coeff == 0.0) return;
    auto it = cache_.find(coeff);
    if (it == cache_.end()) it = cache_.emplace(coeff, Propagator(M_, coeff * h_)).first;
    it->second.apply(p);
  }

  int M_;
  double h_;
  FlowParams params_;
  FourierGrid grid_;
  Composition comp_;
  GridField scratch_;
  double pending_ = 0.0;
  std::map<double, Propagator> cache_;
};

}  // namespace

PhasePoint linear_propagator(const PhasePoint& p, double t) {
  PhasePoint out = p;
  Propagator(p.M(), t).apply(out);
  return out;
}

PhasePoint step(const PhasePoint& p, const FlowParams& params, const RenormContext& ctx) {
  validate("step", params, ctx);
  PhasePoint out = p;
  Integrator it(p.M(), params.dt, params, ctx);
  it.advance(out);
  it.flush(out);
  return out;
}

PhasePoint evolve(const PhasePoint& p, const FlowParams& params, const RenormContext& ctx,
                  const FlowObserver& observer, int every) {
  validate("evolve", params, ctx);
  if (!std::isfinite(params.t)) throw BadOrder("evolve", "target time must be finite");
  PhasePoint out = p;
  const double T = std::abs(params.t);
  const bool reversed = params.t < 0.0;
  if (reversed) out.v *= -1.0;
  const long steps = T == 0.0 ? 0 : static_cast<long>(std::ceil(T / params.dt - 1e-9));
  const double h = steps ? T / static_cast<double>(steps) : 0.0;
  Integrator it(p.M(), h, params, ctx);
  const double sign = reversed ? -1.0 : 1.0;
  if (observer) observer(0.0, p);
  for (long k = 1; k <= steps; ++k) {
    it.advance(out);
    if (observer && every > 0 && (k % every == 0 || k == steps)) {
      it.flush(out);
      if (reversed) {
        PhasePoint view = out;
        view.v *= -1.0;
        observer(sign * h * static_cast<double>(k), view);
      } else {
        observer(h * static_cast<double>(k), out);
      }
    }
  }
  it.flush(out);
  if (reversed) out.v *= -1.0;
  return out;
}

double energy(const PhasePoint& p, int N, const RenormContext& ctx) {
  check_grid("energy", N, ctx.G);
  double quad = 0.0;
  const auto& u = p.u.coeffs();
  const auto& v = p.v.coeffs();
  for_each_mode(p.M(), [&](int n1, int n2, int n3, std::size_t i) {
    quad += norm_sq(n1, n2, n3) * std::norm(u[i]);
  });
  for (const auto& z : v) quad += std::norm(z);
  const FourierGrid grid(ctx.G);
  const GridField g = grid.synthesize(p.u, N);
  double q = 0.0;
  for (double x : g.values) q += x * x * x * x;
  q /= static_cast<double>(g.values.size());
  return 0.5 * quad + 0.25 * q;
}

double approximation_gap(const PhasePoint& p, double t, int N_small, int N_large, double dt,
                         double sigma, int samples, Scheme scheme) {
  if (N_small > N_large) throw BadOrder("approximation_gap", "N_small must not exceed N_large");
  if (N_large > p.M()) throw BadOrder("approximation_gap", "N_large exceeds the state mode radius");
  if (samples < 1) samples = 1;
  const RenormContext ctx = RenormContext::make(4.0, N_large);
  FlowParams small{N_small, dt, scheme, t / samples, false};
  FlowParams large{N_large, dt, scheme, t / samples, false};
  PhasePoint a = p, b = p;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    a = evolve(a, small, ctx);
    b = evolve(b, large, ctx);
    const PhasePoint d(a.u - b.u, a.v - b.v);
    worst = std::max(worst, sobolev_pair_norm(d, sigma));
  }
  return worst;
}

}  // namespace wrlb
