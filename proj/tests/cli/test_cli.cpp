#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with the given argument string; stderr is discarded.
Run run(const std::string& args) {
  const std::string cmd = std::string(COMPNORM_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("help lists the grammar for every subcommand") {
  for (const char* sub : {"validate", "counting", "integral", "carleson", "identity-check", "analyze", "catalog"}) {
    const Run r = run(std::string(sub) + " --help");
    INFO(sub);
    CHECK(r.code == 0);
    CHECK(r.out.find("halfplane") != std::string::npos);
    CHECK(r.out.find("blaschke") != std::string::npos);
  }
}

TEST_CASE("input errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("analyze").code == 2);
  CHECK(run("analyze --map 'mobius(0.5'").code == 2);
  CHECK(run("analyze --map 'mobius(3)'").code == 2);
  CHECK(run("counting --map identity --radii ''").code == 2);
  CHECK(run("counting --map identity --radii '0.5,x'").code == 2);
  CHECK(run("counting --map identity --radii '0.9,0.5'").code == 2);
  CHECK(run("analyze --map identity --kmax 20").code == 2);
  CHECK(run("analyze --map identity --format xml").code == 2);
  CHECK(run("validate --map 'poly(0, 2)'").code == 2);
  CHECK(run("carleson --map identity --atoms 256 --windows 0.5,0.01").code == 2);
}

TEST_CASE("validate and catalog succeed") {
  const Run v = run("validate --map 'scale(0.5, identity)'");
  CHECK(v.code == 0);
  CHECK(nlohmann::json::parse(v.out)["accepted"] == true);
  const Run c = run("catalog --format csv");
  CHECK(c.code == 0);
  CHECK(c.out.find("monomial(2)") != std::string::npos);
}

TEST_CASE("io failure exits with 4") {
  CHECK(run("catalog --out /nonexistent-dir/catalog.json").code == 4);
}

TEST_CASE("flagged numeric result exits with 3") {
  const Run r = run("integral --map halfplane --radii 0.999999 --angles 64 --abs-tol 1e-15 --rel-tol 1e-14");
  CHECK(r.code == 3);
  CHECK(r.out.find("NoConvergence") != std::string::npos);
}

TEST_CASE("analyze verdicts") {
  const Run m = run("analyze --map 'monomial(2)' --kmax 6");
  REQUIRE(m.code == 0);
  const auto j = nlohmann::json::parse(m.out);
  CHECK(j["verdict"] == "NonCompactConsistent");
  CHECK(std::abs(j["essnorm_sq_estimate"].get<double>() - 1.0) < 1e-6);
  CHECK(j["runtime_seconds"] == 0);
  const Run s = run("analyze --map 'scale(0.5, identity)' --kmax 8");
  REQUIRE(s.code == 0);
  CHECK(nlohmann::json::parse(s.out)["verdict"] == "CompactConsistent");
}

TEST_CASE("identity check on the half-plane map") {
  const Run r = run("identity-check --map halfplane --radius 0.999");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["gap"].get<double>() <= 2e-2);
  CHECK(std::abs(j["counting"].get<double>() - 2.0) < 2e-2);
  CHECK(std::abs(j["integral"].get<double>() - 2.0) < 2e-2);
}

TEST_CASE("repeat runs are byte identical and files match stdout") {
  const std::string args = "analyze --map 'compose(monomial(2), mobius(0.3+0.1i))' --kmax 5";
  const Run a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto path = std::filesystem::temp_directory_path() / "compnorm_cli_report.json";
  REQUIRE(run(args + " --out " + path.string()).code == 0);
  CHECK(slurp(path) == a.out);
  std::filesystem::remove(path);
  const Run csv = run(args + " --format csv");
  CHECK(csv.out.rfind("radius,counting,integral,gap\n", 0) == 0);
}

TEST_CASE("carleson subcommand") {
  const Run r = run("carleson --map identity --atoms 4096 --windows 0.5,0.1,0.05 --radii 0.9,0.99");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& v : j["carleson"]["ratio"]) CHECK(std::abs(v.get<double>() - 1 / M_PI) < 0.02 / M_PI);
}
