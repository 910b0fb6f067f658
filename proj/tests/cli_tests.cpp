// End-to-end tests that drive the installed CLI binary.
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

namespace {

namespace fs = std::filesystem;

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CommandResult run_cli(const std::string& args) {
  const std::string command = std::string(PTOSC_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buffer{};
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "ptosc_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("spectrum at g=0 prints the oscillator ladder") {
  const auto result = run_cli("spectrum --dim 1 --cutoff 3 --g 0");
  CHECK(result.exit_code == 0);
  const auto lines = lines_of(result.output);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "g,index,re_lambda,im_lambda");
  CHECK(lines[1] == "0,0,1,0");
  CHECK(lines[2] == "0,1,3,0");
  CHECK(lines[3] == "0,2,5,0");
  CHECK(lines[4] == "0,3,7,0");
}

TEST_CASE("singular at g=0 pairs moduli with signed Q eigenvalues") {
  const auto result = run_cli("singular --dim 1 --cutoff 3 --g 0");
  CHECK(result.exit_code == 0);
  const auto lines = lines_of(result.output);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "g,index,mu,signed,parity");
  CHECK(lines[1] == "0,0,1,1,1");
  CHECK(lines[2] == "0,1,3,-3,-1");
  CHECK(lines[3] == "0,2,5,5,1");
  CHECK(lines[4] == "0,3,7,-7,-1");
}

TEST_CASE("subcommands without a level accept any dimension") {
  const auto result =
      run_cli("singular --dim 2 --cutoff 6 --potential x1^2*x2 --g 0.1");
  CHECK(result.exit_code == 0);
  CHECK(lines_of(result.output).size() == 1 + 28);  // C(8,2) states
}

TEST_CASE("malformed potential exits with code 2 and a position") {
  const auto result = run_cli("spectrum --dim 1 --potential x1^");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("position") != std::string::npos);
}

TEST_CASE("unattainable series cutoff is a configuration error") {
  const auto result = run_cli("perturb --dim 1 --cutoff 10 --order 16");
  CHECK(result.exit_code == 2);
}

TEST_CASE("repeated runs are byte-identical") {
  const auto dir = temp_dir();
  const fs::path a = dir / "sweep_a.csv", b = dir / "sweep_b.csv";
  const std::string args =
      "sweep --dim 1 --cutoff 16 --potential x1^3 --g-grid 0:0.4:5 --k-max 4";
  CHECK(run_cli(args + " --output " + a.string()).exit_code == 0);
  CHECK(run_cli(args + " --output " + b.string()).exit_code == 0);
  const std::string first = slurp(a);
  CHECK(first == slurp(b));
  CHECK(first.find("g,branch,mu,signed") == 0);
  CHECK(lines_of(first).size() == 1 + 5 * 4);
}

TEST_CASE("json output parses with stable keys") {
  const auto result =
      run_cli("singular --dim 1 --cutoff 4 --g 0.2 --format json");
  CHECK(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 5);
  CHECK(doc[0].contains("mu"));
  CHECK(doc[0].contains("signed"));
}

TEST_CASE("borel emits a result object with poles and deviation") {
  const auto result = run_cli(
      "borel --dim 1 --potential x1^3 --level 0 --order 12 --g 0.02 "
      "--nodes 48 --compare-direct");
  CHECK(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  CHECK(doc["q"] == 0.5);
  CHECK(doc.contains("poles"));
  CHECK(doc["relative_deviation"].get<double>() < 1e-3);
}

TEST_CASE("perturb csv carries stability and a growth-fit line") {
  const auto result =
      run_cli("perturb --dim 1 --potential x1^3 --level 0 --order 10");
  CHECK(result.exit_code == 0);
  const auto lines = lines_of(result.output);
  CHECK(lines[0] == "s,mu_s,stability_estimate");
  CHECK(lines.size() == 1 + 11 + 1);
  CHECK(lines.back().rfind("# growth_fit", 0) == 0);
}

TEST_CASE("verify passes and honors format") {
  const auto result = run_cli(
      "verify --dim 1 --cutoff 14 --potential x1^3 --g 0.2 --trials 5 --window 4");
  CHECK(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  REQUIRE(doc.is_array());
  CHECK(doc.size() == 5);
  for (const auto& report : doc) CHECK(report["passed"].get<bool>());

  const auto csv = run_cli(
      "verify --dim 1 --cutoff 12 --potential x1^3 --g 0.1 --trials 3 --window 3 "
      "--format csv");
  CHECK(csv.exit_code == 0);
  CHECK(lines_of(csv.output)[0] ==
        "check,dim,cutoff,potential,g,measured_discrepancy,tolerance,passed");
}

TEST_CASE("matrix dump is self-describing") {
  const auto dir = temp_dir();
  const fs::path dump = dir / "h.dump";
  const auto result = run_cli("spectrum --dim 1 --cutoff 2 --g 0.1 --dump-matrix " +
                              dump.string());
  CHECK(result.exit_code == 0);
  const auto lines = lines_of(slurp(dump));
  REQUIRE(lines.size() == 7 + 3);
  CHECK(lines[0] == "ptosc-matrix v1");
  CHECK(lines[1] == "dim 1");
  CHECK(lines[2] == "cutoff 2");
  CHECK(lines[3] == "size 3");
  CHECK(lines[4] == "ordering principal-lex-v1");
  CHECK(lines[5] == "potential x1^3");
  // each matrix row has size pairs of re/im fields
  std::stringstream row(lines[7]);
  int fields = 0;
  double value;
  while (row >> value) ++fields;
  CHECK(fields == 6);
}

TEST_CASE("config file values apply under flags") {
  const auto dir = temp_dir();
  const fs::path config = dir / "run.cfg";
  {
    std::ofstream out(config);
    out << "# sample config\n";
    out << "dim = 1\n";
    out << "cutoff = 3\n";
    out << "potential = x1^3\n";
    out << "g = 0\n";
  }
  const auto from_config = run_cli("spectrum --config " + config.string());
  CHECK(from_config.exit_code == 0);
  CHECK(lines_of(from_config.output).size() == 5);

  // A flag overrides the file.
  const auto overridden =
      run_cli("spectrum --config " + config.string() + " --cutoff 5");
  CHECK(overridden.exit_code == 0);
  CHECK(lines_of(overridden.output).size() == 7);

  const auto bad_key = run_cli("spectrum --config /nonexistent.cfg");
  CHECK(bad_key.exit_code == 2);
}

TEST_CASE("aggregated config errors arrive in one message") {
  const auto result = run_cli("spectrum --dim 0 --cutoff -3 --potential x1^2");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("--dim") != std::string::npos);
  CHECK(result.output.find("--cutoff") != std::string::npos);
  CHECK(result.output.find("--potential") != std::string::npos);
}
