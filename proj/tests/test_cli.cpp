#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the CLI with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
  const std::string command =
      std::string(PREDSHARE_CLI_PATH) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.output.append(buffer, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return text;
}

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("predshare-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("version flag") {
  const auto result = run_cli("--version");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("predshare 0.1.0") != std::string::npos);
}

TEST_CASE("no subcommand prints help and succeeds") {
  const auto result = run_cli("");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("classify") != std::string::npos);
  CHECK(result.output.find("verify") != std::string::npos);
}

TEST_CASE("classify emits a machine-readable classification") {
  const auto result = run_cli("classify --alpha 0.7 --beta 0.6");
  REQUIRE(result.exit_code == 0);
  const auto parsed = json::parse(result.output);
  CHECK(parsed["uniquely_irpo"] == "no-sharing");
  CHECK(parsed["contracts"].size() == 4);
}

TEST_CASE("classify validates parameter ranges") {
  const auto result = run_cli("classify --alpha 0.4 --beta 0.6");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("1/2 <= beta <= alpha <= 1") != std::string::npos);
}

TEST_CASE("classify rejects an unknown model name") {
  const auto result = run_cli("classify --model bogus");
  CHECK(result.exit_code == 2);
}

TEST_CASE("theta weights must match the support") {
  const auto result =
      run_cli("classify --alpha 0.7 --beta 0.6 --theta 0 --theta 0.3 "
              "--theta-weight 1.0");
  CHECK(result.exit_code == 2);
}

TEST_CASE("two-hypotheses classify matches the frozen witness") {
  const auto result = run_cli(
      "classify --model twohyp --pi-i 0.7 --kappa 0.055 --lambda 0.0155 "
      "--mu 0.29");
  REQUIRE(result.exit_code == 0);
  const auto parsed = json::parse(result.output);
  const auto& irpo = parsed["irpo"];
  REQUIRE(irpo.size() == 1);
  CHECK(irpo[0] == "no-sharing");
  const auto& ns_eq = parsed["contracts"]["no-sharing"]["equilibria"];
  REQUIRE(ns_eq.size() >= 1);
  CHECK(ns_eq[0]["exante"][0].get<double>() ==
        doctest::Approx(0.505873375).epsilon(1e-12));
  CHECK(ns_eq[0]["interim"]["firm1"]["H1"].get<double>() ==
        doctest::Approx(0.52017625).epsilon(1e-12));
}

TEST_CASE("verify subcommand filters and reports") {
  const auto result = run_cli("verify --only corr-joint-roundtrip");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("[PASS] corr-joint-roundtrip") !=
        std::string::npos);

  const auto unknown = run_cli("verify --only no-such-check");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("verify reports the documented red checks honestly") {
  const auto result = run_cli("verify --only one-sample-witness");
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("[FAIL] one-sample-witness") != std::string::npos);
}

TEST_CASE("fault injection is caught") {
  const auto result =
      run_cli("verify --inject-fault --only known-corr-closed-form");
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("[FAIL] known-corr-closed-form") !=
        std::string::npos);
}

TEST_CASE("sweep output is deterministic and complete") {
  const auto result =
      run_cli("sweep --seed 7 --c1-max 0.2 --c1-step 0.1 --format csv");
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.rfind("# seed=7\n", 0) == 0);
  // Three costs, four contracts, two firms, plus comment and header lines.
  CHECK(std::count(result.output.begin(), result.output.end(), '\n') ==
        2 + 3 * 4 * 2);
  const auto again =
      run_cli("sweep --seed 7 --c1-max 0.2 --c1-step 0.1 --format csv");
  CHECK(again.output == result.output);
}

TEST_CASE("sweep json format parses") {
  const auto result =
      run_cli("sweep --seed 7 --c1-max 0.1 --c1-step 0.1 --format json");
  REQUIRE(result.exit_code == 0);
  const auto parsed = json::parse(result.output);
  CHECK(parsed["seed"] == 7);
  CHECK(parsed["rows"].size() == 2 * 4 * 2);
}

TEST_CASE("output paths honor the output directory variable") {
  TempDir dir;
  const std::string env = "PREDSHARE_OUTPUT_DIR=" + dir.path.string() + " ";
  const std::string command =
      env + std::string(PREDSHARE_CLI_PATH) +
      " sweep --seed 7 --c1-max 0.1 --c1-step 0.1 --format csv --out rows.csv"
      " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[256];
  while (fread(buffer, 1, sizeof buffer, pipe) > 0) {
  }
  const int status = pclose(pipe);
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  const auto written = slurp(dir.path / "rows.csv");
  CHECK(written.rfind("# seed=7\n", 0) == 0);
}

TEST_CASE("unwritable output path exits with the io code") {
  const auto result = run_cli(
      "sweep --seed 7 --c1-max 0.1 --c1-step 0.1 "
      "--out /nonexistent-dir/rows.csv");
  CHECK(result.exit_code == 3);
}

TEST_CASE("worlds subcommand validates a small family quickly") {
  const auto result =
      run_cli("worlds --alpha 0.7 --beta 0.6 --samples 200000 --seed 3");
  REQUIRE(result.exit_code == 0);
  const auto parsed = json::parse(result.output);
  CHECK(parsed["n_samples"] == 200000);
  CHECK(parsed["joint_ok"] == true);
}

TEST_CASE("simulate runs a tiny battery deterministically") {
  const std::string args =
      "simulate --seed 5 --seeds 1 --epsilon 0.5 --epsilon 0.4";
  const auto result = run_cli(args);
  REQUIRE(result.exit_code == 0);
  const auto parsed = json::parse(result.output);
  CHECK(parsed["cells"].size() == 2);
  const auto again = run_cli(args);
  CHECK(again.output == result.output);
}
