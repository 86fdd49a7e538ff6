// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "wrlb/spectral_field.hpp"

namespace wrlb {

/// State (u, du/dt) of the wave system. Both fields share one mode radius.
struct PhasePoint {
  SpectralField u;
  SpectralField v;

  PhasePoint() = default;
  explicit PhasePoint(int M) : u(M), v(M) {}
  PhasePoint(SpectralField u_, SpectralField v_) : u(std::move(u_)), v(std::move(v_)) {}

  int M() const noexcept { return u.M(); }
};

}  // namespace wrlb
