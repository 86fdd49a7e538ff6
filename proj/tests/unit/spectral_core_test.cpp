// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wrlb/errors.hpp"
#include "wrlb/fourier_grid.hpp"
#include "wrlb/snapshot.hpp"
#include "wrlb/spectral_ops.hpp"

namespace wrlb {
namespace {

TEST(SpectralField, IndexingIsLexicographic) {
  SpectralField f(2);
  EXPECT_EQ(f.side(), 5);
  EXPECT_EQ(f.index(-2, -2, -2), 0u);
  EXPECT_EQ(f.index(-2, -2, -1), 1u);
  EXPECT_EQ(f.index(-2, -1, -2), 5u);
  EXPECT_EQ(f.index(2, 2, 2), 124u);
  EXPECT_FALSE(f.contains(3, 0, 0));
  EXPECT_EQ(f.get(3, 0, 0), Complex{});
}

TEST(SpectralField, CanonicalHalfCoversEachPairOnce) {
  int count = 0;
  for_each_mode(3, [&](int a, int b, int c, std::size_t) {
    if (a == 0 && b == 0 && c == 0) return;
    EXPECT_NE(is_canonical(a, b, c), is_canonical(-a, -b, -c));
    count += is_canonical(a, b, c);
  });
  EXPECT_EQ(count, (7 * 7 * 7 - 1) / 2);
}

TEST(SpectralField, MultiIndicesOfOrderTwo) {
  const auto idx = multi_indices_of_order(2);
  ASSERT_EQ(idx.size(), 6u);
  EXPECT_EQ(idx.front(), (MultiIndex{2, 0, 0}));
  EXPECT_EQ(idx.back(), (MultiIndex{0, 0, 2}));
  for (const auto& a : idx) EXPECT_EQ(a.order(), 2);
  EXPECT_EQ(multi_indices_of_order(4).size(), 15u);
}

TEST(SpectralField, CosineEvaluatesPointwise) {
  const SpectralField f = SpectralField::cosine(2, 1, 0, 2, 3.0);
  EXPECT_NEAR(f.evaluate(0.3, 1.0, 0.7), 3.0 * std::cos(0.3 + 1.4), 1e-14);
  EXPECT_EQ(f.hermitian_defect(), 0.0);
}

TEST(SpectralField, ArithmeticResizesToTheLargerCube) {
  SpectralField a = SpectralField::constant(1, 2.0);
  const SpectralField b = SpectralField::cosine(3, 3, 0, 0, 1.0);
  a += b;
  EXPECT_EQ(a.M(), 3);
  EXPECT_EQ(a(0, 0, 0), Complex(2.0, 0.0));
  EXPECT_EQ(a(3, 0, 0), Complex(0.5, 0.0));
}

TEST(FourierGrid, SmoothSizes) {
  EXPECT_EQ(dealias_grid_size(2), 9);
  EXPECT_EQ(dealias_grid_size(4), 21);
  EXPECT_EQ(dealias_grid_size(8), 35);
  EXPECT_EQ(dealias_grid_size(16), 75);
  EXPECT_EQ(dealias_grid_size(32), 135);
  for (int g = 1; g < 400; ++g) {
    const int n = smooth_grid_size(g);
    EXPECT_GE(n, g);
    EXPECT_EQ(n % 2, 1);
  }
}

TEST(FourierGrid, SynthesisMatchesDirectSum) {
  const SpectralField f = oracle::random_field(2, 11);
  const FourierGrid grid(7);
  const GridField g = grid.synthesize(f);
  const auto ref = oracle::direct_synthesis(f, 7);
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(g.values[i], ref[i], 1e-12);
}

TEST(FourierGrid, AnalysisMatchesDirectAverage) {
  std::vector<double> vals(9 * 9 * 9);
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::sin(0.37 * i) + 0.1 * (i % 5);
  GridField g(9);
  std::copy(vals.begin(), vals.end(), g.values.begin());
  const SpectralField got = FourierGrid(9).analyze(g, 4);
  const SpectralField ref = oracle::direct_analysis(vals, 9, 4);
  EXPECT_LT(max_abs_diff(got, ref), 1e-13);
}

TEST(FourierGrid, RoundTripIsExactToRoundoff) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SpectralField f = oracle::random_field(5, seed, 1.0);
    const FourierGrid grid(15);
    const SpectralField back = grid.analyze(grid.synthesize(f), 5);
    EXPECT_LT(max_abs_diff(back, f), 1e-12 * std::sqrt(l2_norm_sq(f)));
  }
}

TEST(FourierGrid, ParsevalHolds) {
  const SpectralField f = oracle::random_field(3, 4);
  const GridField g = FourierGrid(9).synthesize(f);
  double acc = 0.0;
  for (double x : g.values) acc += x * x;
  EXPECT_NEAR(acc / g.size(), l2_norm_sq(f), 1e-12 * l2_norm_sq(f));
}

TEST(FourierGrid, RejectsAliasingGrids) {
  EXPECT_THROW(FourierGrid(8), Error);
  EXPECT_THROW(FourierGrid(5).synthesize(SpectralField(3)), GridTooSmall);
  EXPECT_NO_THROW(FourierGrid(5).synthesize(SpectralField(3), 2));
}

TEST(SpectralOps, MultiplyMatchesConvolution) {
  const SpectralField f = oracle::random_field(2, 21);
  const SpectralField g = oracle::random_field(3, 22);
  EXPECT_LT(max_abs_diff(multiply(f, g), oracle::convolution(f, g)), 1e-12);
}

TEST(SpectralOps, CubicMatchesTruncatedTripleConvolution) {
  const int N = 2;
  const SpectralField u = oracle::random_field(N, 31);
  const RenormContext ctx = RenormContext::make(4.0, N);
  const SpectralField uN = project(u, N);
  const SpectralField ref = project(oracle::convolution(oracle::convolution(uN, uN), uN), N);
  const SpectralField got = cubic_truncated(u, ctx);
  for_each_mode(N, [&](int a, int b, int c, std::size_t) {
    EXPECT_NEAR(std::abs(got.get(a, b, c) - ref.get(a, b, c)), 0.0, 1e-12);
  });
}

TEST(SpectralOps, CubicNeedsDealiasedGrid) {
  const SpectralField u = oracle::random_field(4, 3);
  EXPECT_THROW(cubic_truncated(u, 4, FourierGrid(15)), GridTooSmall);
  EXPECT_THROW(RenormContext::make(4.0, 4, 15), GridTooSmall);
  try {
    cubic_truncated(u, 4, FourierGrid(15));
  } catch (const GridTooSmall& e) {
    EXPECT_NE(std::string(e.what()).find("dealiasing requires G >= 4N+1"), std::string::npos);
  }
}

TEST(SpectralOps, ProjectionIsIdempotentAndSharp) {
  const SpectralField f = oracle::random_field(4, 8);
  const SpectralField p = project(f, 3);
  EXPECT_EQ(max_abs_diff(project(p, 3), p), 0.0);
  EXPECT_EQ(p(3, 0, 0), f(3, 0, 0));
  EXPECT_EQ(p(2, 2, 1), f(2, 2, 1));  // |n|^2 = 9
  EXPECT_EQ(p(2, 2, 2), Complex{});
}

TEST(SpectralOps, MultipliersActDiagonally) {
  const SpectralField f = SpectralField::cosine(3, 1, 2, 2, 1.0);  // |n| = 3
  EXPECT_NEAR(riesz(f, 2.0)(1, 2, 2).real(), 0.5 * 9.0, 1e-12);
  EXPECT_NEAR(bessel_forward(bessel_inverse(f, 4.0), 4.0)(1, 2, 2).real(), 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(bessel_inverse_weight(0, 4.0), 1.0);
  EXPECT_DOUBLE_EQ(bessel_inverse_weight(4, 1.0), 1.0 / std::sqrt(4.0 + 16.0));
}

TEST(SpectralOps, DerivativeOfSine) {
  // d/dx1 sin(2 x1) = 2 cos(2 x1)
  const SpectralField f = SpectralField::sine(2, 2, 0, 0, 1.0);
  const SpectralField d = partial_derivative(f, {1, 0, 0});
  EXPECT_NEAR(d.evaluate(0.4, 0.0, 0.0), 2.0 * std::cos(0.8), 1e-13);
  EXPECT_THROW(partial_derivative(f, {-1, 0, 0}), BadOrder);
}

TEST(LittlewoodPaley, StepFunctionShape) {
  EXPECT_DOUBLE_EQ(lp_step(0.0), 1.0);
  EXPECT_DOUBLE_EQ(lp_step(0.75), 1.0);
  EXPECT_DOUBLE_EQ(lp_step(4.0 / 3.0), 0.0);
  double prev = 1.0;
  for (double r = 0.75; r <= 1.34; r += 0.01) {
    const double v = lp_step(r);
    EXPECT_LE(v, prev + 1e-15);
    prev = v;
  }
}

TEST(LittlewoodPaley, BlocksSumToIdentity) {
  for (int M : {1, 3, 6}) {
    const SpectralField f = oracle::random_field(M, 100 + M);
    SpectralField acc(M);
    for (int j = 0; j <= lp_last_block(M); ++j) acc += littlewood_paley(f, j);
    EXPECT_LT(max_abs_diff(acc, f), 1e-13) << "M=" << M;
  }
}

TEST(LittlewoodPaley, PartitionOfUnityPointwise) {
  for (double r = 0.0; r < 60.0; r += 0.173) {
    double acc = 0.0;
    for (int j = 0; j <= 8; ++j) acc += lp_weight(j, r);
    EXPECT_NEAR(acc, 1.0, 1e-14) << "r=" << r;
  }
}

TEST(Snapshot, RoundTrip) {
  const SpectralField f = oracle::random_field(3, 5);
  std::stringstream ss;
  write_snapshot(ss, f, 4.0);
  const Snapshot back = read_snapshot(ss);
  EXPECT_EQ(back.s, 4.0);
  EXPECT_EQ(max_abs_diff(back.field, f), 0.0);
}

TEST(Snapshot, RejectsCorruptInput) {
  std::stringstream bad("WRLX0000");
  EXPECT_THROW(read_snapshot(bad), FormatError);
  const SpectralField f = oracle::random_field(2, 5);
  std::stringstream ss;
  write_snapshot(ss, f, 4.0);
  std::string bytes = ss.str();
  bytes.resize(bytes.size() - 8);
  std::stringstream cut(bytes);
  EXPECT_THROW(read_snapshot(cut), FormatError);
}

}  // namespace
}  // namespace wrlb
