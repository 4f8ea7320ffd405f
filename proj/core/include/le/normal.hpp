// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace le {

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal distribution function.
double normal_cdf(double x);

/// Inverse standard normal CDF (Acklam's rational approximation plus
/// one Halley refinement). Accurate to well below 1e-9.
double normal_quantile(double p);

/// sin(pi * x) with exact argument reduction: returns exactly 0 when x
/// is an integer-valued double. Rational ratios representable in double
/// therefore produce hard zeros rather than ~1e-16 noise.
double sin_pi_times(double x);

}  // namespace le
