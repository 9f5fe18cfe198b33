// End-to-end tests for the command-line tool.  The binary path arrives via
// the BNCERT_CLI environment variable set by CTest.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bncert/rules.hpp"

namespace {

using json = nlohmann::ordered_json;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path() {
  const char* path = std::getenv("BNCERT_CLI");
  REQUIRE_MESSAGE(path != nullptr, "BNCERT_CLI is not set");
  return path;
}

RunResult run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("rho query") {
  RunResult r = run("rho 11 7 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "rho(11, 7, 5) = 1\n");

  RunResult j = run("rho 11 7 5 --json");
  CHECK(j.exit_code == 0);
  json parsed = json::parse(j.out);
  CHECK(parsed.at("value") == "1");
}

TEST_CASE("bounds worked example in JSON") {
  RunResult r = run("bounds 6 4 3 --json");
  CHECK(r.exit_code == 0);
  json parsed = json::parse(r.out);
  CHECK(parsed.at("bounds").at("naive_points") == "12");
  CHECK(parsed.at("bounds").at("main_guarantee") == "9");
  CHECK(parsed.at("bounds").at("hyperplane_naive") == "6");
  CHECK(parsed.at("bounds").at("main_1s_guarantee") == "5");
}

TEST_CASE("good writes a self-verifying certificate") {
  std::string path = "cli_test_cert.json";
  RunResult r = run("good 85 65 5 3 --certificate " + path);
  CHECK(r.exit_code == 0);
  std::string text = slurp(path);
  REQUIRE_FALSE(text.empty());
  bncert::Certificate cert = bncert::certificate_from_json(text);
  CHECK(bncert::verify_certificate(cert).ok);
  CHECK(bncert::certificate_to_json(cert) == text);
  std::remove(path.c_str());
}

TEST_CASE("good and excellent exit codes follow the claim") {
  CHECK(run("good 11 7 5 11").exit_code == 0);
  CHECK(run("excellent 9 4 5 9").exit_code == 0);
  CHECK(run("excellent 11 7 5 11").exit_code == 1);  // rejected, not an error
}

TEST_CASE("domain errors exit 2") {
  CHECK(run("good 5 2 3 1").exit_code == 2);    // r < 5
  CHECK(run("good 10 0 5 11").exit_code == 2);  // n > d
  CHECK(run("good 7 50 5 0").exit_code == 2);   // rho < 0
  CHECK(run("good 1 2").exit_code == 2);        // missing arguments
  CHECK(run("frobnicate 1 2 3").exit_code == 2);
}

TEST_CASE("derive applies manual rules") {
  CHECK(run("derive glue 16 4 5 5 6 0 3 10 4 2 1").exit_code == 0);
  CHECK(run("derive exc-good 10 4 5 2 2").exit_code == 0);
  CHECK(run("derive exc-good 10 4 5 2 5").exit_code == 1);  // b > g rejected
  CHECK(run("derive glue 16 4 5 5 1 2 3").exit_code == 2);  // wrong arity
  CHECK(run("derive chain-reduce 85 65 5 3").exit_code == 0);
}

TEST_CASE("audits report violations through the exit code") {
  RunResult appendix = run("audit appendix --r-max 6 --json");
  CHECK(appendix.exit_code == 0);
  json parsed = json::parse(appendix.out);
  CHECK(parsed.at("violations").empty());

  CHECK(run("audit t-choice --r-max 6 --d-max 100").exit_code == 0);
  CHECK(run("audit needformain --r-max 5 --d-max 50").exit_code == 0);
  // A range that cannot contain the known excluded-case tuple must fail.
  CHECK(run("audit needformain --r-max 5 --d-max 10").exit_code == 1);
}

TEST_CASE("identical invocations produce byte-identical output") {
  const char* cmds[] = {
      "good 85 65 5 3 --json",
      "bounds 20 30 5 --json",
      "audit appendix --r-max 7 --json",
      "audit t-choice --r-max 6 --d-max 80 --json",
  };
  for (const char* cmd : cmds) {
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
  }
  // Parallel and serial sweeps agree byte for byte.
  RunResult serial = run("audit appendix --r-max 8 --jobs 1 --json");
  RunResult parallel = run("audit appendix --r-max 8 --jobs 8 --json");
  CHECK(serial.out == parallel.out);
}

TEST_CASE("oracle guarantee") {
  RunResult r = run("oracle guarantee 6 4 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "guarantee(6, 4, 3) = 5\n");
  RunResult none = run("oracle guarantee 5 50 5 --json");
  CHECK(none.exit_code == 1);
  CHECK(json::parse(none.out).at("value").is_null());
}
