// Copyright 2026 The lattice-edgeworth Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the `le` executable: exit codes, stable CSV
// headers, byte-identical reruns.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("le_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(LE_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = work_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

const char* kTwoBernoulliModel = R"({
  "populations": [
    {"kind": "bernoulli", "p": 0.4, "n": 20},
    {"kind": "bernoulli", "p": 0.6, "n": 28}
  ]
})";

}  // namespace

TEST_CASE("help and exit codes") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("plan --help").exit_code == 0);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("plan --rho0 sqrt2").exit_code == 2);  // missing --n-max
  CHECK(run_cli("plan --rho0 sqrt2 --n-max 100 --frob 1").exit_code == 2);
  const auto bad_json = write_file("bad.json", "{nope");
  const auto r = run_cli("oracle --model " + bad_json.string() + " --x 0");
  CHECK(r.exit_code == 2);
  CHECK(!r.err.empty());
  CHECK(lines_of(r.err).size() == 1);  // one-line diagnostic
}

TEST_CASE("plan emits the certified convergent pairs") {
  const auto r = run_cli("plan --rho0 sqrt2 --n-max 100 --mode convergent");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "n1,n2,abs_error,bound_q2");
  const std::vector<std::string> pairs{"3,2", "7,5", "17,12", "41,29",
                                       "99,70"};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(lines[i + 1].rfind(pairs[i] + ",", 0) == 0);
    const auto fields = fields_of(lines[i + 1]);
    REQUIRE(fields.size() == 4);
    CHECK(std::stod(fields[2]) <= std::stod(fields[3]));
  }

  SUBCASE("a short custom decimal exhausts its certified digits") {
    const auto r2 =
        run_cli("plan --rho0 1.41 --n-max 10000 --mode convergent");
    CHECK(r2.exit_code == 2);
    CHECK(!r2.err.empty());
  }

  SUBCASE("nearest-int mode") {
    const auto ni =
        run_cli("plan --rho0 golden --n-max 10 --mode nearest-int");
    REQUIRE(ni.exit_code == 0);
    const auto rows = lines_of(ni.out);
    CHECK(rows.back().rfind("10,16,", 0) == 0);
  }
}

TEST_CASE("eval single smooth point of a symmetric model") {
  const auto model = write_file("balanced.json", R"({
    "populations": [
      {"kind": "bernoulli", "p": 0.4, "n": 25},
      {"kind": "bernoulli", "p": 0.6, "n": 25}
    ]
  })");
  const auto r = run_cli("eval --model " + model.string() +
                         " --x-grid 1.6449:1.6449:1 --variant smooth");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "x,normal,skew,lattice,total,variant");
  const auto fields = fields_of(lines[1]);
  REQUIRE(fields.size() == 6);
  // beta = 0: total == Phi(x), lattice == 0
  CHECK(std::stod(fields[1]) == doctest::Approx(std::stod(fields[4])));
  CHECK(std::stod(fields[3]) == 0.0);
  CHECK(fields[5] == "smooth");
}

TEST_CASE("oracle CDF values and infeasibility exit code") {
  const auto model = write_file("model.json", kTwoBernoulliModel);
  const auto r =
      run_cli("oracle --model " + model.string() + " --x 100 --x -100");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "x,p");
  CHECK(std::stod(fields_of(lines[1])[1]) == doctest::Approx(1.0));
  CHECK(std::stod(fields_of(lines[2])[1]) == doctest::Approx(0.0));

  const auto huge = write_file("huge.json", R"({
    "populations": [
      {"kind": "bernoulli", "p": 0.5, "n": 20000000},
      {"kind": "bernoulli", "p": 0.5, "n": 3}
    ]
  })");
  const auto infeasible =
      run_cli("oracle --model " + huge.string() + " --x 0");
  CHECK(infeasible.exit_code == 3);
  CHECK(!infeasible.err.empty());
}

TEST_CASE("diagnose prints the profile CSV and a human summary") {
  const auto r = run_cli("diagnose --e1 1 --e2 1 --n1 10 --n2 10");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 11);  // header + L=10 rows
  CHECK(lines[0] == "l,sqrt_n_abs_sin");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(std::stod(fields_of(lines[i])[1]) == 0.0);  // rho = 1
  }
  CHECK(r.err.find("condition-fails: yes") != std::string::npos);

  const auto damped = run_cli("diagnose --e1 1 --e2 1 --n1 99 --n2 70 --L 5");
  CHECK(damped.err.find("condition-fails: no") != std::string::npos);
}

TEST_CASE("chi and typesum") {
  const auto chi = run_cli("chi --n 10 --tau 1");
  REQUIRE(chi.exit_code == 0);
  const auto chi_lines = lines_of(chi.out);
  REQUIRE(chi_lines.size() == 2);
  CHECK(chi_lines[0] == "N,tau,chi");
  CHECK(std::stod(fields_of(chi_lines[1])[2]) == 5.0);

  const auto poly = run_cli("chi --n 10 --tau 1 --poly 0,1");
  CHECK(std::stod(fields_of(lines_of(poly.out)[1])[2]) ==
        doctest::Approx(2.75));

  const auto ts = run_cli("typesum --rho0 golden --m 1");
  REQUIRE(ts.exit_code == 0);
  const auto ts_lines = lines_of(ts.out);
  CHECK(ts_lines[0] == "rho0,m,type_sum");
  CHECK(std::stod(fields_of(ts_lines[1])[2]) ==
        doctest::Approx(2.618033988749895));
}

TEST_CASE("simulate pvals: byte-identical reruns, seed discipline") {
  const auto config = write_file("mc.json", R"({
    "model": {
      "populations": [
        {"kind": "bernoulli", "p": 0.4},
        {"kind": "bernoulli", "p": 0.6}
      ]
    },
    "rho0": "sqrt2",
    "n1": {"start": 10, "end": 14, "step": 2},
    "n2_rule": {"kind": "nearest-int"},
    "alphas": [0.95],
    "reps": 2000,
    "method": "mc",
    "seed": 99
  })");
  const fs::path out1 = work_dir() / "mc1.csv";
  const fs::path out2 = work_dir() / "mc2.csv";
  CHECK(run_cli("simulate pvals --config " + config.string() + " --out " +
                out1.string())
            .exit_code == 0);
  CHECK(run_cli("simulate pvals --config " + config.string() + " --out " +
                out2.string())
            .exit_code == 0);
  const auto bytes1 = slurp(out1);
  CHECK(!bytes1.empty());
  CHECK(bytes1 == slurp(out2));
  CHECK(lines_of(bytes1)[0] == "n1,n2,x,alpha,estimate,stderr,method,seed");

  SUBCASE("missing seed is a validation error") {
    const auto no_seed = write_file("noseed.json", R"({
      "model": {
        "populations": [
          {"kind": "bernoulli", "p": 0.4},
          {"kind": "bernoulli", "p": 0.6}
        ]
      },
      "rho0": 1,
      "n1": {"start": 10, "end": 12, "step": 1},
      "n2_rule": {"kind": "nearest-int"},
      "method": "mc",
      "reps": 10
    })");
    CHECK(run_cli("simulate pvals --config " + no_seed.string()).exit_code ==
          2);
    // --seed on the command line fills it in
    CHECK(run_cli("simulate pvals --config " + no_seed.string() +
                  " --seed 5")
              .exit_code == 0);
  }
}

TEST_CASE("simulate coverage CSV") {
  const auto config = write_file("cov.json", R"({
    "model": {
      "populations": [
        {"kind": "bernoulli", "p": 0.4},
        {"kind": "bernoulli", "p": 0.6}
      ]
    },
    "rho0": "sqrt2",
    "n1": {"start": 12, "end": 12, "step": 1},
    "n2_rule": {"kind": "nearest-int"},
    "alphas": [0.9],
    "convention": ["literal", "complement"],
    "reps": 100,
    "B": 49,
    "seed": 7
  })");
  const auto r = run_cli("simulate coverage --config " + config.string());
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "n1,n2,alpha,convention,coverage,stderr,reps,B,seed");
  CHECK(fields_of(lines[1])[3] == "literal");
  CHECK(fields_of(lines[2])[3] == "complement");
  for (std::size_t i = 1; i <= 2; ++i) {
    const double cov = std::stod(fields_of(lines[i])[4]);
    CHECK(cov >= 0.0);
    CHECK(cov <= 1.0);
  }
}

TEST_CASE("success-prob flag flips the bernoulli convention") {
  const auto model = write_file("flip.json", R"({
    "populations": [
      {"kind": "bernoulli", "p": 0.4, "n": 3},
      {"kind": "bernoulli", "p": 0.4, "n": 2}
    ]
  })");
  // Literal: both means 0.6; flipped: both 0.4. Skewness flips sign, so
  // the exact CDF at a generic point differs.
  const auto literal =
      run_cli("oracle --model " + model.string() + " --x -0.1");
  const auto flipped = run_cli("oracle --model " + model.string() +
                               " --x -0.1 --success-prob");
  REQUIRE(literal.exit_code == 0);
  REQUIRE(flipped.exit_code == 0);
  const double p_lit = std::stod(fields_of(lines_of(literal.out)[1])[1]);
  const double p_flip = std::stod(fields_of(lines_of(flipped.out)[1])[1]);
  CHECK(p_lit != p_flip);
}
