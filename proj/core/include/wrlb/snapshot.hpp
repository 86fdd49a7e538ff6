// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "wrlb/spectral_field.hpp"

namespace wrlb {

/// Binary snapshot: "WRLB", u32 version, u32 M, f64 s, then (2M+1)^3
/// complex f64 coefficients, all little-endian, lexicographic n-order.
struct Snapshot {
  SpectralField field;
  double s = 0.0;
};

inline constexpr unsigned kSnapshotVersion = 1;

void write_snapshot(std::ostream& os, const SpectralField& f, double s);
void write_snapshot(const std::string& path, const SpectralField& f, double s);
/// Throws FormatError on a bad magic, unknown version or truncated payload.
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::string& path);

}  // namespace wrlb
