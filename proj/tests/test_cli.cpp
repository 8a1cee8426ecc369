#include <catch2/catch.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef BRAKET_CLI_PATH
#define BRAKET_CLI_PATH "braket"
#endif
#ifndef BRAKET_MODELS_DIR
#define BRAKET_MODELS_DIR "models"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_raw(const std::string &command, const std::string &outfile) {
  const int status = std::system((command + " > " + outfile + " 2>&1").c_str());
  RunResult result;
#ifdef _WIN32
  result.exit_code = status;
#else
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
  std::ifstream in(outfile);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

RunResult run_cli(const std::string &args, const std::string &outfile) {
  return run_raw(std::string(BRAKET_CLI_PATH) + " " + args, outfile);
}

std::string two_qubit_path() { return std::string(BRAKET_MODELS_DIR) + "/two_qubit.json"; }

} // namespace

TEST_CASE("check passes on the bundled two-qubit model") {
  const RunResult run = run_cli("check --config " + two_qubit_path() + " --format json",
                                "cli_check.json");
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("\"status\":\"pass\"") != std::string::npos);
  CHECK(run.output.find("\"status\":\"fail\"") == std::string::npos);
  // one JSON object per line, fixed leading key
  std::istringstream lines(run.output);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    REQUIRE(line.rfind("{\"name\":", 0) == 0);
    REQUIRE(line.back() == '}');
    ++count;
  }
  CHECK(count >= 20);
}

TEST_CASE("check output is byte-identical across runs with the same seed") {
  const RunResult first = run_cli("check --config " + two_qubit_path() + " --format json",
                                  "cli_det_a.json");
  const RunResult second = run_cli("check --config " + two_qubit_path() + " --format json",
                                   "cli_det_b.json");
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK_FALSE(first.output.empty());
}

#ifndef _WIN32
TEST_CASE("a different seed changes residuals but stays deterministic") {
  const std::string cmd =
      std::string(BRAKET_CLI_PATH) + " check --config " + two_qubit_path() + " --format json";
  const RunResult base = run_cli("check --config " + two_qubit_path() + " --format json",
                                 "cli_seed_base.json");
  const RunResult seeded_a = run_raw("BRAKET_RHS_SEED=7 " + cmd, "cli_seed_a.json");
  const RunResult seeded_b = run_raw("BRAKET_RHS_SEED=7 " + cmd, "cli_seed_b.json");
  CHECK(seeded_a.exit_code == 0);
  CHECK(seeded_a.output == seeded_b.output);
  CHECK(base.output != seeded_a.output);
}
#endif

TEST_CASE("an unachievable tolerance makes checks fail with exit 1") {
  const RunResult run = run_cli("check --config " + two_qubit_path() + " --tol 1e-30",
                                "cli_tol.json");
  CHECK(run.exit_code == 1);
  CHECK(run.output.find("\"status\":\"fail\"") != std::string::npos);
}

TEST_CASE("suite selection narrows the report stream") {
  const RunResult run = run_cli("check --config " + two_qubit_path() +
                                    " --suite permutation --format json",
                                "cli_suite.json");
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("permutation.") != std::string::npos);
  CHECK(run.output.find("spectral.") == std::string::npos);
}

TEST_CASE("config errors exit with 2") {
  {
    std::ofstream bad("cli_bad_config.json");
    bad << R"({"dim": 2, "factors": 2,
               "observables": {"M": [[[0,0],[1,0]],[[0,0],[0,0]]]}})";
  }
  const RunResult bad = run_cli("check --config cli_bad_config.json", "cli_bad.out");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("'M'") != std::string::npos);

  const RunResult missing = run_cli("check --config does_not_exist.json", "cli_missing.out");
  CHECK(missing.exit_code == 2);

  {
    std::ofstream bad("cli_bad_json.json");
    bad << "{ not json";
  }
  CHECK(run_cli("check --config cli_bad_json.json", "cli_badjson.out").exit_code == 2);
}

TEST_CASE("negative-control model passes its requested suites") {
  const RunResult run = run_cli("check --config " + std::string(BRAKET_MODELS_DIR) +
                                    "/unequal_pair.json --format json",
                                "cli_unequal.json");
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("symmetrization.negative_control") != std::string::npos);
  CHECK(run.output.find("symmetrization.rejection") != std::string::npos);
}

TEST_CASE("spectral emits the decomposition in deterministic order") {
  const RunResult run = run_cli("spectral --config " + two_qubit_path() + " --format json",
                                "cli_spectral.json");
  CHECK(run.exit_code == 0);
  std::istringstream lines(run.output);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].find("\"lambda_sum\":-2") != std::string::npos);
  CHECK(rows[1].find("\"lambda_sum\":0") != std::string::npos);
  CHECK(rows[2].find("\"lambda_sum\":0") != std::string::npos);
  CHECK(rows[3].find("\"lambda_sum\":2") != std::string::npos);
  CHECK(rows[0].find("\"mult\":[0,0]") != std::string::npos);

  const RunResult again = run_cli("spectral --config " + two_qubit_path() + " --format json",
                                  "cli_spectral_b.json");
  CHECK(run.output == again.output);

  // degenerate three-level model carries multiplicity labels
  const RunResult degenerate = run_cli("spectral --config " + std::string(BRAKET_MODELS_DIR) +
                                           "/three_level_pair.json --format json",
                                       "cli_spectral_c.json");
  CHECK(degenerate.exit_code == 0);
  CHECK(degenerate.output.find("\"mult\":[1,1]") != std::string::npos);
}

TEST_CASE("eval prints values and exits 2 on bad expressions") {
  const RunResult one = run_cli("eval --config " + two_qubit_path() + " --expr \"<a|a>\"",
                                "cli_eval1.out");
  CHECK(one.exit_code == 0);
  CHECK(one.output.find("1+0i") != std::string::npos);

  const RunResult zero = run_cli(
      "eval --config " + two_qubit_path() + " --expr \"P_asym (|a> (x) |a>)\"", "cli_eval2.out");
  CHECK(zero.exit_code == 0);
  CHECK(zero.output.find("zero functional") != std::string::npos);

  const RunResult dual = run_cli("eval --config " + two_qubit_path() +
                                     " --expr \"(<l1| (x) <l2|) (A (|p> (x) |q>))\"",
                                 "cli_eval3.out");
  CHECK(dual.exit_code == 0);
  CHECK(dual.output.find("0+0i") != std::string::npos);

  const RunResult unterminated =
      run_cli("eval --config " + two_qubit_path() + " --expr \"|a\"", "cli_eval4.out");
  CHECK(unterminated.exit_code == 2);
  CHECK(unterminated.output.find("offset 0") != std::string::npos);

  const RunResult unbound =
      run_cli("eval --config " + two_qubit_path() + " --expr \"|zz>\"", "cli_eval5.out");
  CHECK(unbound.exit_code == 2);
}

TEST_CASE("demo runs the embedded model and can emit it") {
  const RunResult demo = run_cli("demo --format json", "cli_demo.out");
  CHECK(demo.exit_code == 0);
  CHECK(demo.output.find("\"status\":\"fail\"") == std::string::npos);

  const RunResult emitted = run_cli("demo --emit-config", "cli_demo_config.json");
  CHECK(emitted.exit_code == 0);
  // the emitted config matches the bundled two_qubit model byte for byte
  std::ifstream bundled(two_qubit_path());
  std::ostringstream buffer;
  buffer << bundled.rdbuf();
  CHECK(emitted.output == buffer.str());

  // and it loads as a valid config
  const RunResult reuse = run_cli("check --config cli_demo_config.json", "cli_demo_check.out");
  CHECK(reuse.exit_code == 0);
}

TEST_CASE("unknown flags and missing subcommands exit with 2") {
  CHECK(run_cli("check", "cli_usage1.out").exit_code == 2);
  CHECK(run_cli("bogus", "cli_usage2.out").exit_code == 2);
}
