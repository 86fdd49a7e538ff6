// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrlb/fourier_grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

#include "wrlb/errors.hpp"

namespace wrlb {
namespace {

// A band-limited spectrum occupies |n_i| <= m of the G^3 grid. The 3-D
// transforms run axis by axis and skip the 1-D lines that only carry zeros:
// the first complex axis touches (2m+1)(m+1) lines, the second G(m+1), and
// only the real axis runs over all G^2 lines.
struct Plans {
  fftw_plan b_first_lo = nullptr;  // axis 0, n2 in [0, m]
  fftw_plan b_first_hi = nullptr;  // axis 0, n2 in [-m, -1], applied at an offset
  fftw_plan b_second = nullptr;    // axis 1, every n1
  fftw_plan b_real = nullptr;      // c2r along axis 2
  fftw_plan f_real = nullptr;      // r2c along axis 2
  fftw_plan f_second = nullptr;
  fftw_plan f_first_lo = nullptr;
  fftw_plan f_first_hi = nullptr;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

std::size_t half_size(int G) {
  return static_cast<std::size_t>(G) * G * (G / 2 + 1);
}

fftw_plan axis_plan(int G, int stride, int count_a, int stride_a, int count_b, int sign,
                    fftw_complex* buf, unsigned flags) {
  fftw_iodim dim{G, stride, stride};
  fftw_iodim loops[2] = {{count_a, stride_a, stride_a}, {count_b, 1, 1}};
  return fftw_plan_guru_dft(1, &dim, 2, loops, buf, buf, sign, flags);
}

std::atomic<int>& effort_slot() {
  static std::atomic<int> slot = [] {
    const char* env = std::getenv("WRLB_FFT_PLANNER");
    const std::string v = env ? env : "";
    if (v == "patient") return static_cast<int>(PlannerEffort::Patient);
    if (v == "measure") return static_cast<int>(PlannerEffort::Measure);
    return static_cast<int>(PlannerEffort::Estimate);
  }();
  return slot;
}

unsigned fftw_flags(PlannerEffort e, int G) {
  switch (e) {
    // exhaustive search stops paying for itself on the larger grids
    case PlannerEffort::Patient: return G <= 45 ? FFTW_PATIENT : FFTW_MEASURE;
    case PlannerEffort::Measure: return FFTW_MEASURE;
    default: return FFTW_ESTIMATE;
  }
}

// Plans live for the whole process; FFTW planning is not thread safe so
// creation happens under one lock. Execution via the new-array interface is.
const Plans& plans_for(int G, int m) {
  static std::map<std::tuple<int, int, int>, Plans> cache;
  const PlannerEffort effort = planner_effort();
  const auto key = std::make_tuple(G, m, static_cast<int>(effort));
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const int H = G / 2 + 1;
  const std::size_t n_real = static_cast<std::size_t>(G) * G * G;
  double* r = fftw_alloc_real(n_real);
  fftw_complex* c = fftw_alloc_complex(half_size(G));
  const unsigned flags = fftw_flags(effort, G);
  // the hi plans run at an offset into the buffer, so no alignment assumptions
  const unsigned offset_flags = flags | FFTW_UNALIGNED;
  Plans p;
  p.b_first_lo = axis_plan(G, G * H, m + 1, H, m + 1, FFTW_BACKWARD, c, flags);
  p.f_first_lo = axis_plan(G, G * H, m + 1, H, m + 1, FFTW_FORWARD, c, flags);
  if (m > 0) {
    p.b_first_hi = axis_plan(G, G * H, m, H, m + 1, FFTW_BACKWARD, c, offset_flags);
    p.f_first_hi = axis_plan(G, G * H, m, H, m + 1, FFTW_FORWARD, c, offset_flags);
  }
  p.b_second = axis_plan(G, H, G, G * H, m + 1, FFTW_BACKWARD, c, flags);
  p.f_second = axis_plan(G, H, G, G * H, m + 1, FFTW_FORWARD, c, flags);
  fftw_iodim line{G, 1, 1};
  fftw_iodim c2r_loop{G * G, H, G};
  fftw_iodim r2c_loop{G * G, G, H};
  p.b_real = fftw_plan_guru_dft_c2r(1, &line, 1, &c2r_loop, c, r, flags);
  p.f_real = fftw_plan_guru_dft_r2c(1, &line, 1, &r2c_loop, r, c, flags | FFTW_PRESERVE_INPUT);
  fftw_free(r);
  fftw_free(c);
  if (!p.b_first_lo || !p.b_second || !p.b_real || !p.f_real || !p.f_second || !p.f_first_lo ||
      (m > 0 && (!p.b_first_hi || !p.f_first_hi)))
    throw Error("FourierGrid", "FFTW could not create a plan");
  return cache.emplace(key, p).first->second;
}

struct Scratch {
  fftw_complex* data = nullptr;
  std::size_t n = 0;
  ~Scratch() { fftw_free(data); }
};

fftw_complex* scratch_for(int G) {
  thread_local std::map<int, std::unique_ptr<Scratch>> pool;
  auto& slot = pool[G];
  if (!slot) {
    slot = std::make_unique<Scratch>();
    slot->n = half_size(G);
    slot->data = fftw_alloc_complex(slot->n);
  }
  return slot->data;
}

int wrap(int n, int G) { return n >= 0 ? n : n + G; }

void require_grid(const char* op, int G, int m) {
  if (G < 2 * m + 1)
    throw GridTooSmall(op, "grid size " + std::to_string(G) + " cannot resolve axis index " +
                               std::to_string(m) + " (needs G >= " + std::to_string(2 * m + 1) + ")");
}

}  // namespace

void set_planner_effort(PlannerEffort effort) {
  effort_slot().store(static_cast<int>(effort));
}

PlannerEffort planner_effort() { return static_cast<PlannerEffort>(effort_slot().load()); }

double GridField::mean() const {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

int smooth_grid_size(int lower) {
  int g = std::max(lower, 1);
  if (g % 2 == 0) ++g;
  for (;; g += 2) {
    int r = g;
    for (int p : {3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return g;
  }
}

int dealias_grid_size(int N, int degree) { return smooth_grid_size(degree * N + 1); }

FourierGrid::FourierGrid(int G) : G_(G) {
  if (G < 1 || G % 2 == 0) throw GridTooSmall("FourierGrid", "grid size must be odd and positive");
}

void FourierGrid::synthesize(const SpectralField& f, GridField& out, int band) const {
  const int m = band < 0 ? f.M() : std::min(f.M(), band);
  require_grid("synthesize", G_, m);
  const int G = G_;
  const int H = G / 2 + 1;
  const Plans& plans = plans_for(G, m);
  fftw_complex* buf = scratch_for(G);
  std::memset(buf, 0, sizeof(fftw_complex) * half_size(G));
  const long b2 = band < 0 ? -1 : static_cast<long>(band) * band;
  for (int n1 = -m; n1 <= m; ++n1)
    for (int n2 = -m; n2 <= m; ++n2)
      for (int n3 = 0; n3 <= m; ++n3) {
        if (b2 >= 0 && norm_sq(n1, n2, n3) > b2) continue;
        const Complex z = f(n1, n2, n3);
        const std::size_t k = (static_cast<std::size_t>(wrap(n1, G)) * G + wrap(n2, G)) * H + n3;
        buf[k][0] = z.real();
        buf[k][1] = z.imag();
      }
  if (out.G != G) out = GridField(G);
  fftw_execute_dft(plans.b_first_lo, buf, buf);
  if (m > 0) {
    fftw_complex* hi = buf + static_cast<std::size_t>(G - m) * H;
    fftw_execute_dft(plans.b_first_hi, hi, hi);
  }
  fftw_execute_dft(plans.b_second, buf, buf);
  fftw_execute_dft_c2r(plans.b_real, buf, out.values.data());
}

GridField FourierGrid::synthesize(const SpectralField& f, int band) const {
  GridField out(G_);
  synthesize(f, out, band);
  return out;
}

SpectralField FourierGrid::analyze(const GridField& g, int M, int band) const {
  if (g.G != G_) throw GridTooSmall("analyze", "grid data does not match the workspace size");
  const int m = band < 0 ? M : std::min(M, band);
  require_grid("analyze", G_, m);
  const int G = G_;
  const int H = G / 2 + 1;
  const Plans& plans = plans_for(G, m);
  fftw_complex* buf = scratch_for(G);
  // planned with FFTW_PRESERVE_INPUT, so the cast is safe
  fftw_execute_dft_r2c(plans.f_real, const_cast<double*>(g.values.data()), buf);
  fftw_execute_dft(plans.f_second, buf, buf);
  fftw_execute_dft(plans.f_first_lo, buf, buf);
  if (m > 0) {
    fftw_complex* hi = buf + static_cast<std::size_t>(G - m) * H;
    fftw_execute_dft(plans.f_first_hi, hi, hi);
  }
  const double scale = 1.0 / (static_cast<double>(G) * G * G);
  const long b2 = band < 0 ? -1 : static_cast<long>(band) * band;
  SpectralField out(M);
  for (int n1 = -m; n1 <= m; ++n1)
    for (int n2 = -m; n2 <= m; ++n2)
      for (int n3 = -m; n3 <= m; ++n3) {
        if (b2 >= 0 && norm_sq(n1, n2, n3) > b2) continue;
        Complex z;
        if (n3 >= 0) {
          const std::size_t k = (static_cast<std::size_t>(wrap(n1, G)) * G + wrap(n2, G)) * H + n3;
          z = Complex(buf[k][0], buf[k][1]);
        } else {
          const std::size_t k =
              (static_cast<std::size_t>(wrap(-n1, G)) * G + wrap(-n2, G)) * H + (-n3);
          z = Complex(buf[k][0], -buf[k][1]);
        }
        out(n1, n2, n3) = z * scale;
      }
  // The zero mode of real data is real; drop rounding noise.
  out(0, 0, 0) = Complex(out(0, 0, 0).real(), 0.0);
  return out;
}

}  // namespace wrlb
