// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace wrlb {

using Complex = std::complex<double>;

/// Exponents of a mixed partial derivative d^a1/dx1 d^a2/dx2 d^a3/dx3.
struct MultiIndex {
  int a1 = 0;
  int a2 = 0;
  int a3 = 0;

  int order() const noexcept { return a1 + a2 + a3; }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// All multi-indices of exactly the given order, in lexicographic order.
std::vector<MultiIndex> multi_indices_of_order(int order);

/// Squared Euclidean length of a lattice vector.
inline int norm_sq(int n1, int n2, int n3) noexcept { return n1 * n1 + n2 * n2 + n3 * n3; }

/// Real field on the unit-mass 3-torus, stored as the Fourier coefficients
/// u(x) = sum_n c(n) exp(i n.x) on the cube {-M..M}^3.
///
/// Coefficients are stored densely with lexicographic index
/// ((n1+M)*S + (n2+M))*S + (n3+M), S = 2M+1. Hermitian symmetry is a
/// contract of every producer, not enforced on write.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(int M);

  static SpectralField zero(int M) { return SpectralField(M); }
  static SpectralField constant(int M, double c);
  /// amplitude * cos(n.x)
  static SpectralField cosine(int M, int n1, int n2, int n3, double amplitude = 1.0);
  /// amplitude * sin(n.x)
  static SpectralField sine(int M, int n1, int n2, int n3, double amplitude = 1.0);

  int M() const noexcept { return M_; }
  int side() const noexcept { return 2 * M_ + 1; }
  std::size_t size() const noexcept { return c_.size(); }
  bool empty() const noexcept { return c_.empty(); }

  std::size_t index(int n1, int n2, int n3) const noexcept {
    const int S = side();
    return static_cast<std::size_t>(((n1 + M_) * S + (n2 + M_)) * S + (n3 + M_));
  }
  bool contains(int n1, int n2, int n3) const noexcept {
    return n1 >= -M_ && n1 <= M_ && n2 >= -M_ && n2 <= M_ && n3 >= -M_ && n3 <= M_;
  }

  Complex& operator()(int n1, int n2, int n3) noexcept { return c_[index(n1, n2, n3)]; }
  const Complex& operator()(int n1, int n2, int n3) const noexcept {
    return c_[index(n1, n2, n3)];
  }
  /// Coefficient at n, or zero outside the stored cube.
  Complex get(int n1, int n2, int n3) const noexcept {
    return contains(n1, n2, n3) ? c_[index(n1, n2, n3)] : Complex{};
  }

  std::vector<Complex>& coeffs() noexcept { return c_; }
  const std::vector<Complex>& coeffs() const noexcept { return c_; }

  /// Mean of the field, i.e. the real part of the n = 0 coefficient.
  double mean() const noexcept { return empty() ? 0.0 : c_[index(0, 0, 0)].real(); }

  /// Copy onto a cube of radius M, truncating or zero padding.
  SpectralField resized(int M) const;

  /// Largest |c(n) - conj(c(-n))| over the cube, together with |Im c(0)|.
  double hermitian_defect() const;
  /// Overwrite c(-n) with conj(c(n)) for the canonical half and zero Im c(0).
  void symmetrize();

  /// Value of the field at the point x.
  double evaluate(double x1, double x2, double x3) const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double a, SpectralField f) { return f *= a; }
  friend SpectralField operator-(SpectralField f) { return f *= -1.0; }

 private:
  int M_ = 0;
  std::vector<Complex> c_;
};

/// Squared L2 norm under the unit-mass measure: sum_n |c(n)|^2.
double l2_norm_sq(const SpectralField& f);
/// L2 pairing of two real fields, integral of f g.
double l2_dot(const SpectralField& f, const SpectralField& g);
/// Largest coefficient-wise modulus of f - g over the union of both cubes.
double max_abs_diff(const SpectralField& f, const SpectralField& g);

/// True for the lattice points that carry independent data under Hermitian
/// symmetry: n1 > 0, or n1 = 0 and n2 > 0, or n1 = n2 = 0 and n3 > 0.
inline bool is_canonical(int n1, int n2, int n3) noexcept {
  return n1 > 0 || (n1 == 0 && (n2 > 0 || (n2 == 0 && n3 > 0)));
}

/// Calls fn(n1, n2, n3, index) for every mode of the cube of radius M.
template <class Fn>
void for_each_mode(int M, Fn&& fn) {
  std::size_t idx = 0;
  for (int n1 = -M; n1 <= M; ++n1)
    for (int n2 = -M; n2 <= M; ++n2)
      for (int n3 = -M; n3 <= M; ++n3, ++idx) fn(n1, n2, n3, idx);
}

}  // namespace wrlb
