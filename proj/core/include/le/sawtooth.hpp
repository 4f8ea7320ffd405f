// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace le {

/// Sawtooth psi(x) = floor(x) - x + 1/2. Period 1, |psi| <= 1/2, jumps
/// of +1 at integers (right-continuous value +1/2). Floor semantics are
/// round-toward-minus-infinity, never truncation.
inline double psi(double x) { return std::floor(x) - x + 0.5; }

/// Atom-inclusion tolerance shared by every surface that evaluates a
/// lattice CDF at a standardized point x: the exact CDF includes atoms
/// within 1e-9 standardized units below x, Monte Carlo counts draws the
/// same way, and expansion lattice terms take their post-jump value on
/// the same window. Keeps all estimates of P(T <= x) on the same side
/// of a jump when x lands on an atom up to rounding.
inline constexpr double kAtomInclusionTol = 1e-9;

}  // namespace le
