#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#ifndef EDS_CLI_PATH
#define EDS_CLI_PATH "./eds"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(EDS_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("seq emits the worked terms") {
  auto r = run("seq --curve \"[0,0,0,0,26]\" --x -1 --y 5 --n 1..3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("B=1 ") != std::string::npos);
  CHECK(r.out.find("B=10 ") != std::string::npos);
  CHECK(r.out.find("B=309 ") != std::string::npos);
}

TEST_CASE("seq json output is deterministic and complete") {
  std::string args = "--format json seq --curve \"[0,0,0,0,26]\" --x -1 --y 5 --n 1..5";
  auto a = run(args);
  auto b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);  // byte-identical
  CHECK(a.out.find("\"terms\"") != std::string::npos);
  CHECK(a.out.find("\"digits_B\"") != std::string::npos);
}

TEST_CASE("seq accepts x-only input") {
  auto r = run("seq --curve \"[1,0,1,-36,-70]\" --x -5 --n 1..5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("quadratic") != std::string::npos);
  CHECK(r.out.find("5:") != std::string::npos);
}

TEST_CASE("csv output") {
  auto r = run("--format csv seq --curve \"[0,0,0,0,26]\" --x -1 --n 1..3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("n,A,B,digits_B,class") != std::string::npos);
  CHECK(r.out.find("3,1089919,309,3,") != std::string::npos);
}

TEST_CASE("invalid input exits 2 with a machine-parsable error") {
  auto r = run("seq --curve \"[0,0,0,0,26]\" --x -1 --y 4 --n 1..3");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("error: code=point_not_on_curve") != std::string::npos);

  auto r2 = run("seq --curve \"[0,0,0,0]\" --x -1 --n 1..3");
  CHECK(r2.exit_code == 2);
  CHECK(r2.out.find("error: code=") != std::string::npos);

  auto r3 = run("height --curve \"[0,0,0,0,0]\" --x 1");
  CHECK(r3.exit_code == 2);
  CHECK(r3.out.find("error: code=singular_curve") != std::string::npos);
}

TEST_CASE("classify subcommand") {
  auto r = run("classify --value 1024");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("prime_power(2^10)") != std::string::npos);
  auto r2 = run("classify --curve \"[0,0,0,0,26]\" --x -1 --n 3");
  CHECK(r2.exit_code == 0);
  CHECK(r2.out.find("composite_length(2,complete)") != std::string::npos);
}

TEST_CASE("height subcommand") {
  auto r = run("height --curve \"[0,0,0,0,26]\" --x -1 --diagnostics 8");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("canonical height") != std::string::npos);
}

TEST_CASE("isogeny subcommand constructs and checks the dual") {
  auto r = run("isogeny --curve \"[0,-1,0,-4,-2]\" --m 2 --preimage 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[0,-1,0,-9,9]") != std::string::npos);
  // the rational preimages of x(Q) = 3 on the isogenous curve
  CHECK(r.out.find("x = 5") != std::string::npos);
  CHECK(r.out.find("x = 9") != std::string::npos);
}

TEST_CASE("magnify subcommand") {
  auto r = run("--depth 2 magnify --curve \"[0,-1,0,-4,-2]\" --x 3 --m 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("certified level: 2") != std::string::npos);
  CHECK(r.out.find("x^4 - 16*x^3 - 24*x^2 - 16*x - 8") != std::string::npos);
}

TEST_CASE("verify table 3 reports the known erratum row and nothing else") {
  // row [1,0,0,4,16] is irreproducible as printed (see the verifier detail);
  // its two preimage facts fail, everything else passes
  auto r = run("verify --table 3");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("58 pass, 2 fail, 0 undetermined") != std::string::npos);
  CHECK(r.out.find("rational_preimage_isogeny :: pass") != std::string::npos);
  size_t first_fail = r.out.find(":: FAIL");
  CHECK(first_fail != std::string::npos);
  CHECK(r.out.find("[1,0,0,4,16]") < first_fail);
}

TEST_CASE("verify honors the depth limit with undetermined rows") {
  auto r = run("--depth 1 verify --table ex");
  CHECK(r.exit_code == 0);  // undetermined is not failure
  CHECK(r.out.find("undetermined") != std::string::npos);
}

TEST_CASE("parallel json verification is byte-identical") {
  std::string args = "verify --table ex --format json --parallelism 4";
  auto a = run(args);
  auto b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("global options may follow the subcommand") {
  auto r = run("verify --table 1 --depth 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("undetermined") != std::string::npos);  // depth-limited rows
}
