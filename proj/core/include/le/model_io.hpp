// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "le/bootstrap.hpp"
#include "le/continued_fraction.hpp"
#include "le/edgeworth.hpp"
#include "le/mean_sum_model.hpp"
#include "le/simulate.hpp"

namespace le {

/// Model description file:
///   {"populations":[{"kind":"bernoulli","p":0.4,"n":20},
///                   {"kind":"lattice","offset":0,"span":1,
///                    "pmf":{"0":0.25,"1":0.5,"2":0.25},"n":15}]}
/// success_prob flips the Bernoulli convention to P(X=1)=p.
MeanSumModel parse_model_json(const std::string& text,
                              bool success_prob = false);

/// Experiment config mirroring ExperimentConfig field names; see README
/// for the schema.
ExperimentConfig parse_experiment_config(const std::string& text,
                                         bool success_prob = false);
CoverageConfig parse_coverage_config(const std::string& text,
                                     bool success_prob = false);

/// Round-trip-safe real formatting: 17 significant digits, '.' decimal
/// separator.
std::string format_real(double v);

// CSV writers with stable headers (regression-tested byte-for-byte).
void write_sim_table_csv(std::ostream& os, const SimTable& table);
void write_coverage_csv(std::ostream& os, std::span<const CoverageRow> rows);
void write_plan_csv(std::ostream& os, const ConvergentPlan& plan);
void write_breakdown_csv(std::ostream& os,
                         std::span<const ExpansionBreakdown> rows);

}  // namespace le
