// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "wrlb/fourier_grid.hpp"
#include "wrlb/renorm_context.hpp"
#include "wrlb/spectral_field.hpp"

namespace wrlb {

/// Multiply coefficient n by w(n1, n2, n3).
SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<Complex(int, int, int)>& w);

/// Frequency projector: zero every coefficient with |n| > N.
SpectralField project(const SpectralField& f, int N);

/// D^s: multiply by |n|^s, annihilating the zero mode.
SpectralField riesz(const SpectralField& f, double s);

/// Per-mode weight of the inverse wave-Bessel potential: 1 at n = 0,
/// (|n|^2 + |n|^{2s+2})^{-1/2} otherwise.
double bessel_inverse_weight(int n_sq, double s);
SpectralField bessel_inverse(const SpectralField& f, double s);
/// Inverse of bessel_inverse.
SpectralField bessel_forward(const SpectralField& f, double s);

/// d^alpha: multiply by (i n1)^a1 (i n2)^a2 (i n3)^a3.
SpectralField partial_derivative(const SpectralField& f, const MultiIndex& alpha);

/// Smooth step equal to 1 on [0, 3/4] and 0 on [4/3, inf).
double lp_step(double r);
/// chi_j(r): chi_0 = step(r), chi_j = step(r / 2^j) - step(r / 2^{j-1}).
double lp_weight(int j, double r);
/// Index of the last block that can touch a mode of the cube of radius M.
int lp_last_block(int M);
SpectralField littlewood_paley(const SpectralField& f, int j);

/// pi_N((pi_N u)^3) computed on the ctx grid. Output has the mode radius of u.
SpectralField cubic_truncated(const SpectralField& u, const RenormContext& ctx);
/// Same with an explicit cut and grid.
SpectralField cubic_truncated(const SpectralField& u, int N, const FourierGrid& grid);

/// Pointwise product of two fields, exact on a grid with G >= 2(M_f + M_g) + 1.
/// The result lives on the cube of radius M_f + M_g.
SpectralField multiply(const SpectralField& f, const SpectralField& g);

}  // namespace wrlb
