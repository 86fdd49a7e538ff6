// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace wrlb {

/// Truncation data shared by every renormalized computation.
struct RenormContext {
  double s = 4.0;       // regularity index
  int N = 8;            // frequency cut |n| <= N
  int G = 0;            // physical grid size, odd, >= 4N+1
  double sigma_N = 0.0; // exact lattice sum, see sigma_n()

  /// Context with the exact sigma_N; G <= 0 picks the smallest smooth odd
  /// grid >= 4N+1. Throws GridTooSmall for an explicit G < 4N+1.
  static RenormContext make(double s, int N, int G = 0);

  /// Same context with a different cut (sigma_N recomputed, grid resized).
  RenormContext with_cut(int N_new) const { return make(s, N_new); }
};

}  // namespace wrlb
