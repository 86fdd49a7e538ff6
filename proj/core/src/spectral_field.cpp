// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrlb/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wrlb {

std::vector<MultiIndex> multi_indices_of_order(int order) {
  std::vector<MultiIndex> out;
  if (order < 0) return out;
  for (int a1 = order; a1 >= 0; --a1)
    for (int a2 = order - a1; a2 >= 0; --a2) out.push_back({a1, a2, order - a1 - a2});
  return out;
}

SpectralField::SpectralField(int M) : M_(M) {
  if (M < 0) throw std::invalid_argument("SpectralField: negative mode radius");
  const std::size_t S = static_cast<std::size_t>(2 * M + 1);
  c_.assign(S * S * S, Complex{});
}

SpectralField SpectralField::constant(int M, double c) {
  SpectralField f(M);
  f(0, 0, 0) = c;
  return f;
}

SpectralField SpectralField::cosine(int M, int n1, int n2, int n3, double amplitude) {
  SpectralField f(M);
  if (n1 == 0 && n2 == 0 && n3 == 0) {
    f(0, 0, 0) = amplitude;
    return f;
  }
  if (!f.contains(n1, n2, n3)) throw std::out_of_range("SpectralField::cosine: mode outside cube");
  f(n1, n2, n3) += 0.5 * amplitude;
  f(-n1, -n2, -n3) += 0.5 * amplitude;
  return f;
}

SpectralField SpectralField::sine(int M, int n1, int n2, int n3, double amplitude) {
  SpectralField f(M);
  if (n1 == 0 && n2 == 0 && n3 == 0) return f;
  if (!f.contains(n1, n2, n3)) throw std::out_of_range("SpectralField::sine: mode outside cube");
  // sin t = (e^{it} - e^{-it}) / 2i
  f(n1, n2, n3) += Complex(0.0, -0.5 * amplitude);
  f(-n1, -n2, -n3) += Complex(0.0, 0.5 * amplitude);
  return f;
}

SpectralField SpectralField::resized(int M) const {
  SpectralField out(M);
  const int m = std::min(M, M_);
  for (int n1 = -m; n1 <= m; ++n1)
    for (int n2 = -m; n2 <= m; ++n2)
      for (int n3 = -m; n3 <= m; ++n3) out(n1, n2, n3) = (*this)(n1, n2, n3);
  return out;
}

double SpectralField::hermitian_defect() const {
  if (empty()) return 0.0;
  double worst = std::abs((*this)(0, 0, 0).imag());
  for_each_mode(M_, [&](int n1, int n2, int n3, std::size_t i) {
    worst = std::max(worst, std::abs(c_[i] - std::conj((*this)(-n1, -n2, -n3))));
  });
  return worst;
}

void SpectralField::symmetrize() {
  if (empty()) return;
  for_each_mode(M_, [&](int n1, int n2, int n3, std::size_t i) {
    if (is_canonical(n1, n2, n3)) (*this)(-n1, -n2, -n3) = std::conj(c_[i]);
  });
  Complex& z = (*this)(0, 0, 0);
  z = Complex(z.real(), 0.0);
}

double SpectralField::evaluate(double x1, double x2, double x3) const {
  double acc = 0.0;
  for_each_mode(M_, [&](int n1, int n2, int n3, std::size_t i) {
    if (c_[i] == Complex{}) return;
    const double ph = n1 * x1 + n2 * x2 + n3 * x3;
    acc += c_[i].real() * std::cos(ph) - c_[i].imag() * std::sin(ph);
  });
  return acc;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (o.M_ > M_) *this = resized(o.M_);
  if (o.M_ == M_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  } else {
    for_each_mode(o.M_, [&](int n1, int n2, int n3, std::size_t i) { (*this)(n1, n2, n3) += o.c_[i]; });
  }
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (o.M_ > M_) *this = resized(o.M_);
  if (o.M_ == M_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  } else {
    for_each_mode(o.M_, [&](int n1, int n2, int n3, std::size_t i) { (*this)(n1, n2, n3) -= o.c_[i]; });
  }
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& z : c_) z *= a;
  return *this;
}

double l2_norm_sq(const SpectralField& f) {
  double acc = 0.0;
  for (const auto& z : f.coeffs()) acc += std::norm(z);
  return acc;
}

double l2_dot(const SpectralField& f, const SpectralField& g) {
  const int m = std::min(f.M(), g.M());
  double acc = 0.0;
  for (int n1 = -m; n1 <= m; ++n1)
    for (int n2 = -m; n2 <= m; ++n2)
      for (int n3 = -m; n3 <= m; ++n3) {
        // integral of f g = sum_n f(n) g(-n) = sum_n f(n) conj(g(n)) for real g
        acc += (f(n1, n2, n3) * std::conj(g(n1, n2, n3))).real();
      }
  return acc;
}

double max_abs_diff(const SpectralField& f, const SpectralField& g) {
  const int m = std::max(f.M(), g.M());
  double worst = 0.0;
  for_each_mode(m, [&](int n1, int n2, int n3, std::size_t) {
    worst = std::max(worst, std::abs(f.get(n1, n2, n3) - g.get(n1, n2, n3)));
  });
  return worst;
}

}  // namespace wrlb
