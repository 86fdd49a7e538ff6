// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace wrlb {

/// SplitMix64 finalizer (Steele, Lea and Flood). A bijection on 64 bits with
/// full avalanche, used here as a keyed hash rather than a sequential stream.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based generator: every draw is a pure function of its key, so
/// results never depend on how work is split across threads.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0,
                       std::uint64_t c = 0) noexcept
      : key_(splitmix64(splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b) ^ c)) {}

  /// 64 random bits for counter i.
  constexpr std::uint64_t bits(std::uint64_t i) const noexcept {
    return splitmix64(key_ ^ splitmix64(i + 0x632be59bd9b4e019ULL));
  }

  /// Uniform on (0, 1), never exactly 0 or 1.
  double uniform(std::uint64_t i) const noexcept {
    return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Two independent standard normals from counters 2i and 2i+1 (Box-Muller).
  std::pair<double, double> normal_pair(std::uint64_t i) const noexcept {
    const double r = std::sqrt(-2.0 * std::log(uniform(2 * i)));
    const double t = 2.0 * std::numbers::pi * uniform(2 * i + 1);
    return {r * std::cos(t), r * std::sin(t)};
  }

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

/// Key of a lattice mode that does not depend on the cube it is stored in.
constexpr std::uint64_t mode_key(int n1, int n2, int n3) noexcept {
  constexpr std::uint64_t off = 1u << 20;
  return ((static_cast<std::uint64_t>(n1 + off) << 42) |
          (static_cast<std::uint64_t>(n2 + off) << 21) | static_cast<std::uint64_t>(n3 + off));
}

}  // namespace wrlb
