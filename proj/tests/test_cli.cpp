#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

// Drives the installed binary end to end through a shell; the binary path
// arrives via the BELLSIM_CLI environment variable set by CTest.

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout (stderr folded in when requested)
};

std::string cli_path() {
  const char* path = std::getenv("BELLSIM_CLI");
  REQUIRE_MESSAGE(path != nullptr, "BELLSIM_CLI must point at the binary");
  return path;
}

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string command = "'" + cli_path() + "' " + args;
  command += merge_stderr ? " 2>&1" : " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer;
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) fields.push_back(cell);
    rows.push_back(std::move(fields));
  }
  return rows;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("bellsim_test_" + name);
}

}  // namespace

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("sweep --help").exit_code == 0);
}

TEST_CASE("usage errors exit with code 2 and name the flag") {
  auto unknown = run_cli("sweep --no-such-flag 3", true);
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.output.find("--no-such-flag") != std::string::npos);

  auto missing = run_cli("", true);
  CHECK(missing.exit_code == 2);

  auto bad_value = run_cli("sweep --points 1", true);
  CHECK(bad_value.exit_code == 2);
  CHECK(bad_value.output.find("--points") != std::string::npos);
}

TEST_CASE("numerical domain failures exit with code 1") {
  auto result = run_cli("threshold --family phi --r 1.5", true);
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("error:") != std::string::npos);
}

TEST_CASE("sweep CSV crosses 2 at the known Phi threshold") {
  auto result = run_cli(
      "sweep --family phi --alpha 0.70710678 --r 1.0 --points 201 "
      "--evaluator restricted");
  REQUIRE(result.exit_code == 0);
  auto rows = parse_csv(result.output);
  REQUIRE(rows.size() == 202);
  CHECK(rows[0] == std::vector<std::string>{"x", "restricted_max",
                                            "violation_restricted",
                                            "p_excited"});
  double crossing = -1.0;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double prev = std::stod(rows[i - 1][1]);
    const double curr = std::stod(rows[i][1]);
    if (prev <= 2.0 && curr > 2.0) crossing = std::stod(rows[i][0]);
  }
  // Half a grid step at 201 points is 0.0025.
  CHECK(crossing == doctest::Approx(0.8).epsilon(0.004));

  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(std::stod(rows[i][1]) <= 2.0 * std::sqrt(2.0) + 1e-9);
}

TEST_CASE("threshold prints the Psi cubic root, rounding to 0.77") {
  auto result =
      run_cli("threshold --family psi --r 1.0 --alpha 0.70710678");
  REQUIRE(result.exit_code == 0);
  const json parsed = json::parse(result.output);
  REQUIRE(parsed["exists"].get<bool>());
  CHECK(std::abs(parsed["x_star"].get<double>() - 0.7665884174654594) < 1e-8);
}

TEST_CASE("critical-purity reports 1/sqrt(2)") {
  auto result = run_cli("critical-purity --family phi --alpha 0.70710678");
  REQUIRE(result.exit_code == 0);
  const json parsed = json::parse(result.output);
  REQUIRE(parsed["exists"].get<bool>());
  CHECK(std::abs(parsed["r_star"].get<double>() - 0.7071067811865476) < 1e-7);
}

TEST_CASE("identical config and seed give byte-identical files") {
  const auto path_a = temp_file("sweep_a.csv");
  const auto path_b = temp_file("sweep_b.csv");
  const std::string args =
      "sweep --family psi --r 0.9 --alpha 0.6 --points 101 --out ";
  REQUIRE(run_cli(args + path_a.string()).exit_code == 0);
  REQUIRE(run_cli(args + path_b.string()).exit_code == 0);

  std::ifstream a(path_a, std::ios::binary), b(path_b, std::ios::binary);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(!sa.str().empty());
  fs::remove(path_a);
  fs::remove(path_b);

  auto first = run_cli("oracle-check --n 3 --seed 11 --grid-density 6 "
                       "--restarts 4");
  auto second = run_cli("oracle-check --n 3 --seed 11 --grid-density 6 "
                        "--restarts 4");
  CHECK(first.output == second.output);
}

TEST_CASE("oracle-check reports discrepancies within tolerance") {
  auto result =
      run_cli("oracle-check --n 8 --seed 7 --grid-density 8 --restarts 8");
  REQUIRE(result.exit_code == 0);
  const json parsed = json::parse(result.output);
  CHECK(parsed["within_tolerance"].get<bool>());
  CHECK(parsed["max_abs_brute_minus_horodecki"].get<double>() <= 1e-4);
  CHECK(parsed["max_restricted_minus_horodecki"].get<double>() <= 1e-9);
}

TEST_CASE("evolve CSV keeps the trapping violation alive") {
  auto result = run_cli(
      "evolve --family phi --r 1.0 --alpha 0.70710678 --model trapping "
      "--w 0.95 --t0 0 --t1 50 --samples 26 --evaluator restricted");
  REQUIRE(result.exit_code == 0);
  auto rows = parse_csv(result.output);
  REQUIRE(rows.size() == 27);
  CHECK(rows[0][0] == "t");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][2] == "1");  // violation_restricted
  }
}

TEST_CASE("ewl emits a valid state report") {
  auto result = run_cli("ewl --family psi --r 0.9 --alpha 0.70710678");
  REQUIRE(result.exit_code == 0);
  const json parsed = json::parse(result.output);
  CHECK(parsed["validation"]["ok"].get<bool>());
  CHECK(parsed["state"]["basis"] == "11,10,01,00");
  CHECK(parsed["x_view"]["m14"].get<double>() == doctest::Approx(0.45));
}

TEST_CASE("config file provides defaults and flags override") {
  const auto config = temp_file("threshold.cfg");
  {
    std::ofstream out(config);
    out << "family=psi\n"
        << "r=1.0\n"
        << "alpha=0.70710678\n";
  }
  auto from_config =
      run_cli("threshold --config " + config.string());
  REQUIRE(from_config.exit_code == 0);
  CHECK(std::abs(json::parse(from_config.output)["x_star"].get<double>() -
                 0.7665884174654594) < 1e-8);

  auto overridden =
      run_cli("threshold --config " + config.string() + " --family phi");
  REQUIRE(overridden.exit_code == 0);
  CHECK(std::abs(json::parse(overridden.output)["x_star"].get<double>() -
                 0.8) < 1e-8);
  fs::remove(config);
}
