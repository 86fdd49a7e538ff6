// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrlb/spectral_ops.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "wrlb/errors.hpp"

namespace wrlb {

SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<Complex(int, int, int)>& w) {
  SpectralField out(f.M());
  auto& oc = out.coeffs();
  const auto& fc = f.coeffs();
  for_each_mode(f.M(), [&](int n1, int n2, int n3, std::size_t i) {
    if (fc[i] != Complex{}) oc[i] = fc[i] * w(n1, n2, n3);
  });
  return out;
}

SpectralField project(const SpectralField& f, int N) {
  SpectralField out = f;
  if (static_cast<long>(N) * N >= 3L * f.M() * f.M()) return out;
  const long n2max = static_cast<long>(N) * N;
  auto& c = out.coeffs();
  for_each_mode(f.M(), [&](int n1, int n2, int n3, std::size_t i) {
    if (norm_sq(n1, n2, n3) > n2max) c[i] = Complex{};
  });
  return out;
}

namespace {

// |n|^s tabulated by |n|^2 so pow() runs once per shell.
std::vector<double> shell_powers(int M, double s) {
  std::vector<double> t(static_cast<std::size_t>(3 * M * M + 1), 0.0);
  for (std::size_t k = 1; k < t.size(); ++k) t[k] = std::pow(static_cast<double>(k), 0.5 * s);
  return t;
}

}  // namespace

SpectralField riesz(const SpectralField& f, double s) {
  const auto w = shell_powers(f.M(), s);
  SpectralField out(f.M());
  auto& oc = out.coeffs();
  const auto& fc = f.coeffs();
  for_each_mode(f.M(), [&](int n1, int n2, int n3, std::size_t i) {
    oc[i] = fc[i] * w[static_cast<std::size_t>(norm_sq(n1, n2, n3))];
  });
  return out;
}

double bessel_inverse_weight(int n_sq, double s) {
  if (n_sq == 0) return 1.0;
  const double k = static_cast<double>(n_sq);
  return 1.0 / std::sqrt(k + std::pow(k, s + 1.0));
}

SpectralField bessel_inverse(const SpectralField& f, double s) {
  std::vector<double> w(static_cast<std::size_t>(3 * f.M() * f.M() + 1));
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = bessel_inverse_weight(static_cast<int>(k), s);
  SpectralField out(f.M());
  auto& oc = out.coeffs();
  const auto& fc = f.coeffs();
  for_each_mode(f.M(), [&](int n1, int n2, int n3, std::size_t i) {
    oc[i] = fc[i] * w[static_cast<std::size_t>(norm_sq(n1, n2, n3))];
  });
  return out;
}

SpectralField bessel_forward(const SpectralField& f, double s) {
  std::vector<double> w(static_cast<std::size_t>(3 * f.M() * f.M() + 1));
  for (std::size_t k = 0; k < w.size(); ++k)
    w[k] = 1.0 / bessel_inverse_weight(static_cast<int>(k), s);
  SpectralField out(f.M());
  auto& oc = out.coeffs();
  const auto& fc = f.coeffs();
  for_each_mode(f.M(), [&](int n1, int n2, int n3, std::size_t i) {
    oc[i] = fc[i] * w[static_cast<std::size_t>(norm_sq(n1, n2, n3))];
  });
  return out;
}

SpectralField partial_derivative(const SpectralField& f, const MultiIndex& alpha) {
  if (alpha.a1 < 0 || alpha.a2 < 0 || alpha.a3 < 0)
    throw BadOrder("partial_derivative", "negative multi-index component");
  static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex phase = kIPow[alpha.order() % 4];
  auto ipow = [](int n, int a) {
    double r = 1.0;
    for (int k = 0; k < a; ++k) r *= n;
    return r;
  };
  SpectralField out(f.M());
  auto& oc = out.coeffs();
  const auto& fc = f.coeffs();
  for_each_mode(f.M(), [&](int n1, int n2, int n3, std::size_t i) {
    const double m = ipow(n1, alpha.a1) * ipow(n2, alpha.a2) * ipow(n3, alpha.a3);
    oc[i] = fc[i] * phase * m;
  });
  return out;
}

SpectralField cubic_truncated(const SpectralField& u, int N, const FourierGrid& grid) {
  if (grid.size() < 4 * N + 1)
    throw GridTooSmall("cubic_truncated", "dealiasing requires G >= 4N+1 (G = " +
                                              std::to_string(grid.size()) +
                                              ", N = " + std::to_string(N) + ")");
  GridField g = grid.synthesize(u, N);
  for (double& x : g.values) x = x * x * x;
  return grid.analyze(g, u.M(), N);
}

SpectralField cubic_truncated(const SpectralField& u, const RenormContext& ctx) {
  if (ctx.G < 4 * ctx.N + 1)
    throw GridTooSmall("cubic_truncated", "dealiasing requires G >= 4N+1 (G = " +
                                              std::to_string(ctx.G) +
                                              ", N = " + std::to_string(ctx.N) + ")");
  return cubic_truncated(u, ctx.N, FourierGrid(ctx.G));
}

SpectralField multiply(const SpectralField& f, const SpectralField& g) {
  const int Mo = f.M() + g.M();
  const FourierGrid grid(smooth_grid_size(2 * Mo + 1));
  GridField a = grid.synthesize(f);
  const GridField b = grid.synthesize(g);
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] *= b.values[i];
  return grid.analyze(a, Mo);
}

}  // namespace wrlb
