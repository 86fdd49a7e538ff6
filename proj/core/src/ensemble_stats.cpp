// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrlb/ensemble_stats.hpp"

#include <algorithm>
#include <cmath>

namespace wrlb {

void EnsembleStats::add(double x) {
  ++count;
  const double d = x - mean;
  mean += d / static_cast<double>(count);
  m2 += d * (x - mean);
  min = std::min(min, x);
  max = std::max(max, x);
}

void EnsembleStats::merge(const EnsembleStats& o) {
  if (o.count == 0) return;
  if (count == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(o.count);
  const double n = na + nb;
  const double d = o.mean - mean;
  mean = (na * mean + nb * o.mean) / n;
  m2 += o.m2 + d * d * na * nb / n;
  count += o.count;
  min = std::min(min, o.min);
  max = std::max(max, o.max);
}

double EnsembleStats::stddev() const { return std::sqrt(variance()); }

double EnsembleStats::std_error() const {
  return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
}

}  // namespace wrlb
