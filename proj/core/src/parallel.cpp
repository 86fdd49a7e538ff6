// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrlb/parallel.hpp"

#include <cstdlib>
#include <string>

namespace wrlb {

int default_worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("WRLB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) return std::min(cap, hw);
    } catch (...) {
      // unparsable values are ignored
    }
  }
  return hw;
}

}  // namespace wrlb
