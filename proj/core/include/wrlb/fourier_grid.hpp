// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdlib>
#include <new>
#include <vector>

#include "wrlb/spectral_field.hpp"

namespace wrlb {

/// 64-byte aligned allocator so transform buffers share one SIMD alignment.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::size_t kAlign = 64;

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    const std::size_t bytes = ((n * sizeof(T) + kAlign - 1) / kAlign) * kAlign;
    void* p = std::aligned_alloc(kAlign, bytes == 0 ? kAlign : bytes);
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { std::free(p); }

  template <class U>
  friend bool operator==(const AlignedAllocator&, const AlignedAllocator<U>&) noexcept {
    return true;
  }
};

using RealBuffer = std::vector<double, AlignedAllocator<double>>;

/// Samples of a real field on the uniform G^3 grid x_j = 2 pi j / G,
/// row-major in (j1, j2, j3).
struct GridField {
  int G = 0;
  RealBuffer values;

  GridField() = default;
  explicit GridField(int g) : G(g), values(static_cast<std::size_t>(g) * g * g, 0.0) {}

  std::size_t size() const noexcept { return values.size(); }
  double mean() const;
};

/// Smallest odd integer >= lower whose prime factors are all in {3, 5, 7}.
/// FFTW planning effort. Estimate picks plans by heuristics and is
/// reproducible across runs; the timed planners are faster but may choose
/// different algorithms (and so different rounding) from run to run.
/// The initial value comes from WRLB_FFT_PLANNER (estimate, measure, patient).
enum class PlannerEffort { Estimate, Measure, Patient };
void set_planner_effort(PlannerEffort effort);
PlannerEffort planner_effort();

int smooth_grid_size(int lower);
/// Grid used for products of degree `degree` of fields band-limited to N.
int dealias_grid_size(int N, int degree = 4);

/// Transform workspace for one grid size. Instances are cheap handles: FFTW
/// plans are shared process-wide and scratch buffers are per thread, so a
/// FourierGrid may be used concurrently from several workers.
class FourierGrid {
 public:
  explicit FourierGrid(int G);

  int size() const noexcept { return G_; }

  /// Grid values of the modes of f with |n| <= band (band < 0 keeps all).
  /// Requires G >= 2 m + 1 where m is the largest retained axis index.
  void synthesize(const SpectralField& f, GridField& out, int band = -1) const;
  GridField synthesize(const SpectralField& f, int band = -1) const;

  /// Fourier coefficients of grid data on the cube of radius M, keeping
  /// |n| <= band (band < 0 keeps the whole cube). Requires G >= 2 M + 1.
  SpectralField analyze(const GridField& g, int M, int band = -1) const;

 private:
  int G_;
};

}  // namespace wrlb
