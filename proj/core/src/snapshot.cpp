// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrlb/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "wrlb/errors.hpp"

namespace wrlb {
namespace {

template <class T>
void put_le(std::ostream& os, T value) {
  std::array<unsigned char, sizeof(T)> b;
  std::memcpy(b.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
  os.write(reinterpret_cast<const char*>(b.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> b;
  if (!is.read(reinterpret_cast<char*>(b.data()), sizeof(T)))
    throw FormatError("read_snapshot", "truncated snapshot");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
  T value;
  std::memcpy(&value, b.data(), sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(std::ostream& os, const SpectralField& f, double s) {
  os.write("WRLB", 4);
  put_le<std::uint32_t>(os, kSnapshotVersion);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.M()));
  put_le<double>(os, s);
  for (const Complex& z : f.coeffs()) {
    put_le<double>(os, z.real());
    put_le<double>(os, z.imag());
  }
  if (!os) throw FormatError("write_snapshot", "stream write failed");
}

void write_snapshot(const std::string& path, const SpectralField& f, double s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("write_snapshot", "cannot open " + path);
  write_snapshot(os, f, s);
}

Snapshot read_snapshot(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "WRLB", 4) != 0)
    throw FormatError("read_snapshot", "bad magic");
  const auto version = get_le<std::uint32_t>(is);
  if (version != kSnapshotVersion)
    throw FormatError("read_snapshot", "unsupported version " + std::to_string(version));
  const auto M = get_le<std::uint32_t>(is);
  if (M > 1024) throw FormatError("read_snapshot", "mode radius out of range");
  Snapshot out;
  out.s = get_le<double>(is);
  out.field = SpectralField(static_cast<int>(M));
  for (Complex& z : out.field.coeffs()) {
    const double re = get_le<double>(is);
    const double im = get_le<double>(is);
    z = Complex(re, im);
  }
  return out;
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("read_snapshot", "cannot open " + path);
  return read_snapshot(is);
}

}  // namespace wrlb
