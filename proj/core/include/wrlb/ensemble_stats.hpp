// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <limits>

namespace wrlb {

/// Streaming mean / variance accumulator (Welford, with Chan's pairwise merge).
struct EnsembleStats {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from the mean
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void add(double x);
  void merge(const EnsembleStats& other);

  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double stddev() const;
  double std_error() const;
  /// Normal-approximation 95% half-width, 1.96 standard errors.
  double ci95() const { return 1.96 * std_error(); }
};

}  // namespace wrlb
