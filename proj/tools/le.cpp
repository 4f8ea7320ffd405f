// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0
//
// le: lattice-edgeworth command line. Exact, Edgeworth, Monte Carlo and
// bootstrap estimates for sums of independent sample means of
// lattice-valued random variables, plus the continued-fraction tooling
// for choosing sample sizes. Every subcommand is pure given its inputs
// and --seed: re-running writes byte-identical files.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "le/continued_fraction.hpp"
#include "le/discrepancy.hpp"
#include "le/edgeworth.hpp"
#include "le/errors.hpp"
#include "le/model_io.hpp"
#include "le/normal.hpp"
#include "le/oracle.hpp"
#include "le/simulate.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output: " + out_path);
  out << content;
}

std::vector<double> parse_grid(const std::string& grid) {
  const auto first = grid.find(':');
  const auto second = grid.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw std::invalid_argument("x-grid must be start:end:step");
  }
  const double a = std::stod(grid.substr(0, first));
  const double b = std::stod(grid.substr(first + 1, second - first - 1));
  const double step = std::stod(grid.substr(second + 1));
  if (!(step > 0.0) || b < a) {
    throw std::invalid_argument("x-grid must have step > 0 and end >= start");
  }
  std::vector<double> xs;
  const auto count =
      static_cast<std::int64_t>(std::floor((b - a) / step + 1e-9)) + 1;
  for (std::int64_t i = 0; i < count; ++i) {
    xs.push_back(a + static_cast<double>(i) * step);
  }
  return xs;
}

le::IrrationalSpec parse_rho0_flag(const std::string& text) {
  for (const char* name :
       {"sqrt2", "sqrt3", "sqrt5", "e", "pi_over_2", "golden"}) {
    if (text == name) return le::IrrationalSpec::named(name);
  }
  return le::IrrationalSpec::custom(text);
}

struct EvalOptions {
  std::string model_path, grid, variant = "two-sample-direct", out;
  double alpha = 0.4;
  int r0 = 8;
  double tail_eps = 1e-14;
  bool success_prob = false;
};

int run_eval(const EvalOptions& opt) {
  const auto model =
      le::parse_model_json(read_file(opt.model_path), opt.success_prob);
  const auto variant = le::variant_from_name(opt.variant);
  le::BlockingConfig cfg;
  cfg.alpha = opt.alpha;
  cfg.r0 = opt.r0;
  cfg.tail_eps = opt.tail_eps;
  le::validate(cfg);
  std::vector<le::ExpansionBreakdown> rows;
  for (double x : parse_grid(opt.grid)) {
    rows.push_back(le::full_expansion(model, x, variant, cfg));
  }
  std::ostringstream csv;
  le::write_breakdown_csv(csv, rows);
  write_output(opt.out, csv.str());
  return 0;
}

struct OracleOptions {
  std::string model_path, grid, out;
  std::vector<double> xs;
  bool success_prob = false;
};

int run_oracle(const OracleOptions& opt) {
  const auto model =
      le::parse_model_json(read_file(opt.model_path), opt.success_prob);
  std::vector<double> xs = opt.xs;
  if (!opt.grid.empty()) {
    const auto grid = parse_grid(opt.grid);
    xs.insert(xs.end(), grid.begin(), grid.end());
  }
  if (xs.empty()) {
    throw std::invalid_argument("oracle: provide --x or --x-grid");
  }
  const auto values = le::exact_cdf_standardized_grid(model, xs);
  std::ostringstream csv;
  csv << "x,p\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    csv << le::format_real(xs[i]) << ',' << le::format_real(values[i])
        << '\n';
  }
  write_output(opt.out, csv.str());
  return 0;
}

struct PlanOptions {
  std::string rho0, mode = "convergent", out;
  std::int64_t n_max = 100;
};

int run_plan(const PlanOptions& opt) {
  const auto spec = parse_rho0_flag(opt.rho0);
  le::PlanMode mode;
  if (opt.mode == "convergent") {
    mode = le::PlanMode::convergent;
  } else if (opt.mode == "nearest-int") {
    mode = le::PlanMode::nearest_int;
  } else {
    throw std::invalid_argument("plan: mode must be convergent|nearest-int");
  }
  const auto plan = le::plan_sample_sizes(spec, opt.n_max, mode);
  std::ostringstream csv;
  le::write_plan_csv(csv, plan);
  write_output(opt.out, csv.str());
  return 0;
}

struct DiagnoseOptions {
  double e1 = 1.0, e2 = 1.0;
  std::int64_t n1 = 0, n2 = 0, L = 10;
  std::string out;
};

int run_diagnose(const DiagnoseOptions& opt) {
  if (opt.n1 < 1 || opt.n2 < 1) {
    throw std::invalid_argument("diagnose: n1 and n2 must be >= 1");
  }
  const double rho = opt.e2 * static_cast<double>(opt.n1) /
                     (opt.e1 * static_cast<double>(opt.n2));
  const auto diag = le::sin_condition_profile(rho, opt.n1 + opt.n2, opt.L);
  std::ostringstream csv;
  csv << "l,sqrt_n_abs_sin\n";
  for (const auto& point : diag.sin_profile) {
    csv << point.ell << ',' << le::format_real(point.value) << '\n';
  }
  write_output(opt.out, csv.str());
  std::cerr << "rho = " << le::format_real(diag.rho) << " ~ "
            << diag.nearest_rational.p << "/" << diag.nearest_rational.q
            << " (epsilon = " << le::format_real(diag.epsilon) << ")\n"
            << "min sqrt(n)|sin(l rho pi)| over l <= " << opt.L << ": "
            << le::format_real(diag.min_value)
            << "  [condition-fails: " << (diag.condition_fails ? "yes" : "no")
            << "]\n";
  return 0;
}

struct SimulateOptions {
  std::string config_path, out;
  std::optional<std::uint64_t> seed;
  bool success_prob = false;
  bool parametric = false;
};

int run_pvals(const SimulateOptions& opt) {
  auto config =
      le::parse_experiment_config(read_file(opt.config_path),
                                  opt.success_prob);
  if (opt.seed) config.seed = *opt.seed;
  const auto table = le::run_pvals_grid(config);
  std::ostringstream csv;
  le::write_sim_table_csv(csv, table);
  write_output(opt.out, csv.str());
  return 0;
}

int run_coverage(const SimulateOptions& opt) {
  auto config =
      le::parse_coverage_config(read_file(opt.config_path), opt.success_prob);
  if (opt.seed) config.seed = *opt.seed;
  if (opt.parametric) config.parametric = true;
  const auto rows = le::run_coverage(config);
  std::ostringstream csv;
  le::write_coverage_csv(csv, rows);
  write_output(opt.out, csv.str());
  return 0;
}

struct ChiOptions {
  std::int64_t n = 0;
  double tau = 0.0;
  std::string poly, out;
};

int run_chi(const ChiOptions& opt) {
  std::vector<double> coeffs{1.0};
  if (!opt.poly.empty()) {
    coeffs.clear();
    std::stringstream ss(opt.poly);
    std::string item;
    while (std::getline(ss, item, ',')) coeffs.push_back(std::stod(item));
    if (coeffs.empty()) throw std::invalid_argument("chi: empty --poly");
  }
  const auto grid = le::chi_default_grid(opt.n, opt.tau);
  const double chi = le::chi_discrepancy(opt.n, coeffs, opt.tau, grid);
  std::ostringstream csv;
  csv << "N,tau,chi\n"
      << opt.n << ',' << le::format_real(opt.tau) << ','
      << le::format_real(chi) << '\n';
  write_output(opt.out, csv.str());
  return 0;
}

struct TypesumOptions {
  std::string rho0, out;
  std::int64_t m = 1;
};

int run_typesum(const TypesumOptions& opt) {
  const auto spec = parse_rho0_flag(opt.rho0);
  const double value = le::type_sum(spec, opt.m);
  std::ostringstream csv;
  csv << "rho0,m,type_sum\n"
      << opt.rho0 << ',' << opt.m << ',' << le::format_real(value) << '\n';
  write_output(opt.out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lattice-edgeworth: distributions of sums of independent means of "
      "lattice-valued random variables"};
  app.require_subcommand(1);

  EvalOptions eval_opt;
  auto* eval = app.add_subcommand(
      "eval", "Edgeworth expansion breakdown over an x grid (CSV)");
  eval->add_option("--model", eval_opt.model_path, "model JSON file")
      ->required();
  eval->add_option("--x-grid", eval_opt.grid, "x grid start:end:step")
      ->required();
  eval->add_option("--variant", eval_opt.variant,
                   "smooth|one-sample|two-sample-direct|two-sample-blocked");
  eval->add_option("--alpha", eval_opt.alpha, "blocking exponent in [0, 1/2)");
  eval->add_option("--r0", eval_opt.r0, "blocked Taylor order");
  eval->add_option("--tail-eps", eval_opt.tail_eps,
                   "Gaussian truncation threshold");
  eval->add_option("--out", eval_opt.out, "output CSV path (default stdout)");
  eval->add_flag("--success-prob", eval_opt.success_prob,
                 "bernoulli p is P(X=1) instead of P(X=0)");

  OracleOptions oracle_opt;
  auto* oracle = app.add_subcommand(
      "oracle", "exact standardized CDF of S by direct convolution (CSV)");
  oracle->add_option("--model", oracle_opt.model_path, "model JSON file")
      ->required();
  oracle->add_option("--x", oracle_opt.xs, "evaluation points (repeatable)");
  oracle->add_option("--x-grid", oracle_opt.grid, "x grid start:end:step");
  oracle->add_option("--out", oracle_opt.out, "output CSV path");
  oracle->add_flag("--success-prob", oracle_opt.success_prob,
                   "bernoulli p is P(X=1) instead of P(X=0)");

  PlanOptions plan_opt;
  auto* plan = app.add_subcommand(
      "plan", "sample-size pairs approximating a target ratio (CSV)");
  plan->add_option("--rho0", plan_opt.rho0,
                   "named constant (sqrt2, sqrt3, sqrt5, e, pi_over_2, "
                   "golden) or a decimal string")
      ->required();
  plan->add_option("--n-max", plan_opt.n_max, "largest sample size")
      ->required();
  plan->add_option("--mode", plan_opt.mode, "convergent|nearest-int");
  plan->add_option("--out", plan_opt.out, "output CSV path");

  DiagnoseOptions diag_opt;
  auto* diagnose = app.add_subcommand(
      "diagnose", "oscillation-condition diagnostics for a ratio");
  diagnose->add_option("--e1", diag_opt.e1, "span of population 1")
      ->required();
  diagnose->add_option("--e2", diag_opt.e2, "span of population 2")
      ->required();
  diagnose->add_option("--n1", diag_opt.n1, "sample size 1")->required();
  diagnose->add_option("--n2", diag_opt.n2, "sample size 2")->required();
  diagnose->add_option("--L", diag_opt.L, "profile depth (default 10)");
  diagnose->add_option("--out", diag_opt.out, "output CSV path");

  SimulateOptions pvals_opt, coverage_opt;
  auto* simulate = app.add_subcommand("simulate", "experiment grids");
  simulate->require_subcommand(1);
  auto* pvals = simulate->add_subcommand(
      "pvals", "P(x) against n1 for the configured method (CSV)");
  pvals->add_option("--config", pvals_opt.config_path, "experiment JSON")
      ->required();
  pvals->add_option("--out", pvals_opt.out, "output CSV path");
  pvals->add_option("--seed", pvals_opt.seed, "seed override");
  pvals->add_flag("--success-prob", pvals_opt.success_prob,
                  "bernoulli p is P(X=1) instead of P(X=0)");
  auto* coverage = simulate->add_subcommand(
      "coverage", "percentile-bootstrap coverage against n1 (CSV)");
  coverage->add_option("--config", coverage_opt.config_path, "coverage JSON")
      ->required();
  coverage->add_option("--out", coverage_opt.out, "output CSV path");
  coverage->add_option("--seed", coverage_opt.seed, "seed override");
  coverage->add_flag("--success-prob", coverage_opt.success_prob,
                     "bernoulli p is P(X=1) instead of P(X=0)");
  coverage->add_flag(
      "--parametric", coverage_opt.parametric,
      "fit-and-resample for two-point laws (coincides with resampling "
      "the observations)");

  ChiOptions chi_opt;
  auto* chi = app.add_subcommand(
      "chi", "weighted sawtooth discrepancy sum over its breakpoint grid");
  chi->add_option("--n", chi_opt.n, "number of terms N")->required();
  chi->add_option("--tau", chi_opt.tau, "shift tau")->required();
  chi->add_option("--poly", chi_opt.poly,
                  "polynomial weights c0,c1,... (default 1)");
  chi->add_option("--out", chi_opt.out, "output CSV path");

  TypesumOptions typesum_opt;
  auto* typesum = app.add_subcommand(
      "typesum", "sum of 1/(l <l rho0>) up to m (irrationality diagnostics)");
  typesum->add_option("--rho0", typesum_opt.rho0, "named constant or decimal")
      ->required();
  typesum->add_option("--m", typesum_opt.m, "number of terms")->required();
  typesum->add_option("--out", typesum_opt.out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "le: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*eval) return run_eval(eval_opt);
    if (*oracle) return run_oracle(oracle_opt);
    if (*plan) return run_plan(plan_opt);
    if (*diagnose) return run_diagnose(diag_opt);
    if (*pvals) return run_pvals(pvals_opt);
    if (*coverage) return run_coverage(coverage_opt);
    if (*chi) return run_chi(chi_opt);
    if (*typesum) return run_typesum(typesum_opt);
  } catch (const le::OracleInfeasibleError& e) {
    std::cerr << "le: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "le: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
