// Copyright 2026 The wrlb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wrlb {

/// Base class for every error raised by the library. `operation()` names the
/// module operation that failed so front ends can report it verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string operation, const std::string& what)
      : std::runtime_error(operation + ": " + what), operation_(std::move(operation)) {}

  const std::string& operation() const noexcept { return operation_; }

 private:
  std::string operation_;
};

/// The physical grid cannot represent a product without aliasing.
class GridTooSmall : public Error {
 public:
  using Error::Error;
};

/// A multi-index (or regularity) has the wrong order for the operation.
class BadOrder : public Error {
 public:
  using Error::Error;
};

/// Operands do not have the shape the named inequality needs.
class BadShape : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

/// Importance-sampling event with too small an acceptance rate.
class DegenerateSet : public Error {
 public:
  using Error::Error;
};

class Diverged : public Error {
 public:
  using Error::Error;
};

/// Malformed snapshot, fixture or config file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace wrlb
