// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

// Slow, obviously-correct reference implementations. Nothing here shares
// code with the library beyond the SpectralField container.

#pragma once

#include <cstdint>
#include <vector>

#include "wrlb/spectral_field.hpp"

namespace wrlb::oracle {

/// Grid values by the explicit double sum over modes and grid points.
std::vector<double> direct_synthesis(const SpectralField& f, int G);

/// Coefficients on the cube of radius M by the explicit average over the grid.
SpectralField direct_analysis(const std::vector<double>& values, int G, int M);

/// Exact product on the cube of radius f.M + g.M by direct convolution.
SpectralField convolution(const SpectralField& f, const SpectralField& g);

/// sigma_N by summing 1/(k^{1-s} + k) over lattice points in a plain triple loop.
double lattice_sigma(double s, int N);

/// Solution of a'' = -c a - q a^3 with a(0) = a0, a'(0) = b0 (Dormand-Prince,
/// tight tolerance). Returns {a(t), a'(t)}.
std::pair<double, double> duffing(double c, double q, double a0, double b0, double t);

/// a'' = -a^3, a(0) = A, a'(0) = 0: closed form A cn(A t, 1/sqrt 2).
double cubic_oscillator(double A, double t);

/// Random real field with unit-order coefficients on the cube of radius M.
SpectralField random_field(int M, std::uint64_t seed, double decay = 0.0);

}  // namespace wrlb::oracle
