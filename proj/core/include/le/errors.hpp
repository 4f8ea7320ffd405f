// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace le {

/// The exact convolution would exceed its atom budget. Mapped to exit
/// code 3 by the CLI; everything derived from std::invalid_argument is
/// a validation failure and maps to exit code 2.
class OracleInfeasibleError : public std::runtime_error {
 public:
  explicit OracleInfeasibleError(const std::string& what)
      : std::runtime_error(what) {}
};

/// A high-precision decimal string ran out of certified digits before
/// the requested continued-fraction depth.
class PrecisionExhaustedError : public std::runtime_error {
 public:
  PrecisionExhaustedError(const std::string& what, int failing_depth)
      : std::runtime_error(what), depth(failing_depth) {}
  int depth;
};

}  // namespace le
