// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

// Smooth dyadic partition of unity. The step is the normalized primitive of
// the exp(-1/(1-t^2)) mollifier mapped onto [3/4, 4/3]; block weights are
// differences of dilated steps, so they telescope to exactly 1.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "wrlb/spectral_ops.hpp"

namespace wrlb {
namespace {

constexpr double kInner = 0.75;
constexpr double kOuter = 4.0 / 3.0;

double mollifier(double t) {
  const double d = 1.0 - t * t;
  return d <= 0.0 ? 0.0 : std::exp(-1.0 / d);
}

double integrate(double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(mollifier, a, b, 15, 1e-15);
}

double mollifier_mass() {
  static const double z = integrate(-1.0, 1.0);
  return z;
}

// Fraction of the mollifier mass on [-1, t]; integrates over the shorter side.
double primitive(double t) {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  if (t <= 0.0) return integrate(-1.0, t) / mollifier_mass();
  return 1.0 - integrate(t, 1.0) / mollifier_mass();
}

double step_uncached(double r) {
  if (r <= kInner) return 1.0;
  if (r >= kOuter) return 0.0;
  const double t = 2.0 * (r - kInner) / (kOuter - kInner) - 1.0;
  return 1.0 - primitive(t);
}

}  // namespace

double lp_step(double r) {
  if (r <= kInner) return 1.0;
  if (r >= kOuter) return 0.0;
  static std::mutex mu;
  static std::unordered_map<std::uint64_t, double> memo;
  std::uint64_t key;
  std::memcpy(&key, &r, sizeof key);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const double v = step_uncached(r);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, v);
  return v;
}

double lp_weight(int j, double r) {
  if (j < 0) return 0.0;
  if (j == 0) return lp_step(r);
  return lp_step(std::ldexp(r, -j)) - lp_step(std::ldexp(r, -(j - 1)));
}

int lp_last_block(int M) {
  const double rmax = std::sqrt(3.0) * M;
  int j = 0;
  // Block j is supported in 3/8 * 2^j < r < 4/3 * 2^j.
  while (0.375 * std::ldexp(1.0, j + 1) < rmax) ++j;
  return j;
}

SpectralField littlewood_paley(const SpectralField& f, int j) {
  const int M = f.M();
  std::vector<double> w(static_cast<std::size_t>(3 * M * M + 1));
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = lp_weight(j, std::sqrt(static_cast<double>(k)));
  SpectralField out(M);
  auto& oc = out.coeffs();
  const auto& fc = f.coeffs();
  for_each_mode(M, [&](int n1, int n2, int n3, std::size_t i) {
    oc[i] = fc[i] * w[static_cast<std::size_t>(norm_sq(n1, n2, n3))];
  });
  return out;
}

}  // namespace wrlb
