// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "wrlb/fourier_grid.hpp"
#include "wrlb/phase_point.hpp"
#include "wrlb/spectral_field.hpp"

namespace wrlb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// B^s_{p,q}; p or q = kInf selects the max norm / sup over blocks.
struct BesovParams {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
};

/// Grid used to evaluate L^p norms of fields on the cube of radius M.
int norm_grid_size(int M);

/// L^p norm under the unit-mass measure by grid quadrature (p = kInf: max).
double lp_norm(const GridField& g, double p);
/// L^p norm of f; p = 2 is exact by Parseval, other p use norm_grid_size().
double lp_norm(const SpectralField& f, double p);

/// || { 2^{sj} ||P_j f||_{L^p} }_j ||_{l^q} over every block that meets the cube.
double besov_norm(const SpectralField& f, const BesovParams& params);
/// The block sequence 2^{sj} ||P_j f||_{L^p}, j = 0..lp_last_block(M).
/// G > 0 overrides the quadrature grid for p != 2 (needs G >= 2M+1).
std::vector<double> besov_blocks(const SpectralField& f, double s, double p, int G = 0);

/// (sum <n>^{2 sigma} |c(n)|^2)^{1/2}
double sobolev_norm(const SpectralField& f, double sigma);
/// (||u||^2_{H^sigma} + ||v||^2_{H^{sigma-1}})^{1/2}
double sobolev_pair_norm(const PhasePoint& p, double sigma);

/// Instances of the classical Besov estimates, each with fixed exponents.
enum class Inequality {
  Interpolation,   // ||u||_{H^1} vs ||u||_{H^2}^{1/2} ||u||_{L^2}^{1/2}
  Embedding,       // ||u||_{B^{1/2}_{2,inf}} vs ||u||_{B^1_{4,1}}
  BesovEmbedding,  // ||u||_{B^0_{inf,2}} vs ||u||_{B^{3/2}_{2,2}}
  Algebra,         // ||uv||_{C^{1/2}} vs ||u||_{C^{1/2}} ||v||_{C^{1/2}}
  Duality,         // |int uv| vs ||u||_{B^{1/2}_{2,2}} ||v||_{B^{-1/2}_{2,2}}
  Leibniz,         // ||uv||_{B^1_{2,2}} vs ||u||_{B^1_{4,2}}||v||_{L^4} + ||u||_{L^4}||v||_{B^1_{4,2}}
  NegativeProduct, // ||uv||_{C^{-1/2}} vs ||u||_{C^{-1/2}} ||v||_{C^1}
};

inline constexpr Inequality kAllInequalities[] = {
    Inequality::Interpolation, Inequality::Embedding, Inequality::BesovEmbedding,
    Inequality::Algebra,       Inequality::Duality,   Inequality::Leibniz,
    Inequality::NegativeProduct};

/// Short stable name ("interp", "embed", "emb_b", "alge", "dual", "prod", "prod2").
std::string inequality_name(Inequality kind);
/// Inverse of inequality_name; throws BadShape for an unknown name.
Inequality inequality_from_name(const std::string& name);
/// Number of fields the inequality takes.
int inequality_arity(Inequality kind);

/// LHS / RHS of the named inequality. Throws BadShape for a wrong number of
/// fields, mismatched mode radii, or a vanishing right-hand side.
double estimate_ratio(Inequality kind, std::span<const SpectralField> fields);

/// Real random field on the cube of radius M for inequality audits: Gaussian
/// coefficients with decay <n>^{-beta} and a random band, beta and the overall
/// scale drawn per field. Deterministic in (seed, index).
SpectralField random_test_field(int M, std::uint64_t seed, std::uint64_t index);

}  // namespace wrlb
