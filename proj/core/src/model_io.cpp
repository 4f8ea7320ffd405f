// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0

#include "le/model_io.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace le {

namespace {

using nlohmann::json;

LatticeLaw parse_law(const json& j, bool success_prob) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "bernoulli") {
    return bernoulli(j.at("p").get<double>(), success_prob);
  }
  if (kind == "lattice") {
    std::vector<std::pair<std::int64_t, double>> pmf;
    for (const auto& [key, value] : j.at("pmf").items()) {
      std::size_t pos = 0;
      const std::int64_t index = std::stoll(key, &pos);
      if (pos != key.size()) {
        throw std::invalid_argument("model: non-integer pmf key '" + key +
                                    "'");
      }
      pmf.emplace_back(index, value.get<double>());
    }
    return make_lattice_law(j.at("offset").get<double>(),
                            j.at("span").get<double>(), pmf);
  }
  throw std::invalid_argument("model: unknown population kind '" + kind + "'");
}

std::vector<std::pair<LatticeLaw, std::int64_t>> parse_populations(
    const json& j, bool success_prob) {
  std::vector<std::pair<LatticeLaw, std::int64_t>> out;
  for (const auto& pop : j.at("populations")) {
    out.emplace_back(parse_law(pop, success_prob),
                     pop.at("n").get<std::int64_t>());
  }
  return out;
}

std::vector<LatticeLaw> parse_law_templates(const json& j, bool success_prob) {
  std::vector<LatticeLaw> out;
  for (const auto& pop : j.at("populations")) {
    out.push_back(parse_law(pop, success_prob));
  }
  return out;
}

IrrationalSpec parse_rho0(const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    return IrrationalSpec::named(name);
  }
  if (j.is_number()) return IrrationalSpec::from_double(j.get<double>());
  if (j.is_object()) {
    std::optional<double> claimed;
    if (j.contains("claimed_type")) claimed = j.at("claimed_type").get<double>();
    return IrrationalSpec::custom(j.at("decimal").get<std::string>(), claimed);
  }
  throw std::invalid_argument("config: rho0 must be a name, number or object");
}

N1Range parse_n1_range(const json& j) {
  N1Range r;
  r.start = j.at("start").get<std::int64_t>();
  r.end = j.at("end").get<std::int64_t>();
  r.step = j.value("step", std::int64_t{1});
  return r;
}

N2Rule parse_n2_rule(const json& j) {
  N2Rule rule;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "nearest-int") {
    rule.kind = N2RuleKind::nearest_int;
  } else if (kind == "convergent") {
    rule.kind = N2RuleKind::convergent;
  } else if (kind == "offset-power") {
    rule.kind = N2RuleKind::offset_power;
    rule.kappa = j.at("kappa").get<double>();
  } else {
    throw std::invalid_argument("config: unknown n2 rule '" + kind + "'");
  }
  return rule;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

MeanSumModel parse_model_json(const std::string& text, bool success_prob) {
  try {
    return MeanSumModel(parse_populations(parse_text(text), success_prob));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model JSON: ") + e.what());
  }
}

ExperimentConfig parse_experiment_config(const std::string& text,
                                         bool success_prob) {
  try {
    const json j = parse_text(text);
    ExperimentConfig config;
    config.laws = parse_law_templates(j.at("model"), success_prob);
    if (j.contains("rho0")) config.rho0 = parse_rho0(j.at("rho0"));
    config.n1_range = parse_n1_range(j.at("n1"));
    config.n2_rule = parse_n2_rule(j.at("n2_rule"));
    if (j.contains("alphas")) {
      config.alphas = j.at("alphas").get<std::vector<double>>();
    }
    if (j.contains("reps")) config.reps = j.at("reps").get<std::int64_t>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    config.method = method_from_name(j.value("method", std::string("oracle")));
    if (j.contains("blocking")) {
      const auto& b = j.at("blocking");
      config.blocking.alpha = b.value("alpha", config.blocking.alpha);
      config.blocking.r0 = b.value("r0", config.blocking.r0);
      config.blocking.tail_eps = b.value("tail_eps", config.blocking.tail_eps);
    }
    if (j.contains("oracle_budget")) {
      config.oracle_budget = j.at("oracle_budget").get<std::int64_t>();
    }
    return config;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("experiment config: ") + e.what());
  }
}

CoverageConfig parse_coverage_config(const std::string& text,
                                     bool success_prob) {
  try {
    const json j = parse_text(text);
    CoverageConfig config;
    config.laws = parse_law_templates(j.at("model"), success_prob);
    if (j.contains("rho0")) config.rho0 = parse_rho0(j.at("rho0"));
    config.n1_range = parse_n1_range(j.at("n1"));
    config.n2_rule = parse_n2_rule(j.at("n2_rule"));
    if (j.contains("alphas")) {
      config.alphas = j.at("alphas").get<std::vector<double>>();
    } else if (j.contains("alpha")) {
      config.alphas = {j.at("alpha").get<double>()};
    }
    config.conventions.clear();
    if (j.contains("convention")) {
      const auto& c = j.at("convention");
      if (c.is_array()) {
        for (const auto& name : c) {
          config.conventions.push_back(
              convention_from_name(name.get<std::string>()));
        }
      } else {
        config.conventions.push_back(
            convention_from_name(c.get<std::string>()));
      }
    } else {
      config.conventions = {CoverageConvention::literal};
    }
    if (j.contains("reps")) config.reps = j.at("reps").get<std::int64_t>();
    if (j.contains("B")) config.B = j.at("B").get<std::int64_t>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    config.parametric = j.value("parametric", false);
    return config;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("coverage config: ") + e.what());
  }
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sim_table_csv(std::ostream& os, const SimTable& table) {
  os << "n1,n2,x,alpha,estimate,stderr,method,seed\n";
  for (const auto& row : table.rows) {
    os << row.n1 << ',' << row.n2 << ',' << format_real(row.x) << ','
       << format_real(row.alpha) << ',' << format_real(row.estimate) << ','
       << format_real(row.std_error) << ',' << row.method << ',' << row.seed
       << '\n';
  }
}

void write_coverage_csv(std::ostream& os, std::span<const CoverageRow> rows) {
  os << "n1,n2,alpha,convention,coverage,stderr,reps,B,seed\n";
  for (const auto& row : rows) {
    os << row.n1 << ',' << row.n2 << ',' << format_real(row.alpha) << ','
       << convention_name(row.convention) << ',' << format_real(row.coverage)
       << ',' << format_real(row.std_error) << ',' << row.reps << ',' << row.B
       << ',' << row.seed << '\n';
  }
}

void write_plan_csv(std::ostream& os, const ConvergentPlan& plan) {
  os << "n1,n2,abs_error,bound_q2\n";
  for (const auto& entry : plan.entries) {
    os << entry.n1 << ',' << entry.n2 << ',' << format_real(entry.abs_error)
       << ',' << format_real(entry.bound) << '\n';
  }
}

void write_breakdown_csv(std::ostream& os,
                         std::span<const ExpansionBreakdown> rows) {
  os << "x,normal,skew,lattice,total,variant\n";
  for (const auto& row : rows) {
    os << format_real(row.x) << ',' << format_real(row.normal) << ','
       << format_real(row.skew) << ',' << format_real(row.lattice) << ','
       << format_real(row.total) << ',' << variant_name(row.variant) << '\n';
  }
}

}  // namespace le
