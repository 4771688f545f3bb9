#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "brannan/cli.hpp"

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = brannan::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("coeffs prints the coefficient sum") {
  const RunResult r = run({"coeffs", "--alpha", "0.5", "--beta", "1", "--m", "3",
                           "--theta", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1.4375 + 0i") != std::string::npos);
}

TEST_CASE("margin at theta = 0 exits 0 with zero margin") {
  const RunResult r = run({"margin", "--alpha", "0.7", "--m", "5", "--theta", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("margin=0 ") != std::string::npos);
}

TEST_CASE("constants reports the negative entry and exits 1") {
  const RunResult r = run({"constants", "--n", "27"});
  CHECK(r.code == 1);
  CHECK(r.out.find("const_lemma5_quartic_slack") != std::string::npos);
  CHECK(r.out.find("margin=-0.0277777777777777") != std::string::npos);
}

TEST_CASE("byte-identical output for identical argv") {
  const std::vector<std::string> argv{"scan",          "--check", "brannan",
                                      "--n-list",      "3,9",     "--alpha-range",
                                      "0.1",           "0.9",     "0.2",
                                      "--theta-range", "0",       "3.14159",
                                      "0.19634",       "--format", "json"};
  const RunResult a = run(argv);
  const RunResult b = run(argv);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("scan respects --threads without changing output") {
  const std::vector<std::string> base{"scan",     "--check",      "brannan", "--n-list",
                                      "3,5",      "--alpha-range", "0.1",    "0.9",
                                      "0.4",      "--theta-range", "0",      "3.1",
                                      "0.31",     "--format",      "json"};
  std::vector<std::string> one = base;
  one.insert(one.end(), {"--threads", "1"});
  std::vector<std::string> eight = base;
  eight.insert(eight.end(), {"--threads", "8"});
  const RunResult r1 = run(one);
  const RunResult r8 = run(eight);
  CHECK(r1.code == 0);
  CHECK(r1.out == r8.out);
}

TEST_CASE("degrees flag") {
  const RunResult deg =
      run({"margin", "--alpha", "0.5", "--m", "3", "--theta", "180", "--degrees"});
  const RunResult rad = run({"margin", "--alpha", "0.5", "--m", "3", "--theta",
                             "3.1415926535897931"});
  CHECK(deg.code == 0);
  // same cell payload modulo the angle text itself
  CHECK(deg.out.substr(deg.out.find("lhs=")) == rad.out.substr(rad.out.find("lhs=")));
}

TEST_CASE("help exits 0 and lists defaults") {
  const RunResult top = run({"--help"});
  CHECK(top.code == 0);
  CHECK(top.out.find("scan") != std::string::npos);

  const RunResult sub = run({"scan", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("--abs-tol") != std::string::npos);
  CHECK(sub.out.find("1e-10") != std::string::npos);
  CHECK(sub.out.find("--rel-tol") != std::string::npos);
  CHECK(sub.out.find("1e-09") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"margin", "--alpha", "0.7"}).code == 2);       // missing --m
  CHECK(run({"margin", "--bogus", "1"}).code == 2);         // unknown flag
  CHECK(run({"scan", "--check", "nope", "--n-list", "3", "--alpha", "0.5", "--theta",
             "0"})
            .code == 2);                                    // unknown check
  CHECK(run({"margin", "--alpha", "0.7", "--m", "4", "--theta", "0"}).code == 2);
}

TEST_CASE("scan writes files atomically") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "brannan_cli_scan.csv").string();
  const RunResult r = run({"scan", "--check", "brannan", "--n-list", "3", "--alpha",
                           "0.5", "--theta", "0", "--format", "csv", "--out", path});
  CHECK(r.code == 0);
  REQUIRE(std::filesystem::exists(path));
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "check,n,alpha,angle_or_x,lhs,rhs,margin,error_estimate");
  std::filesystem::remove(path);
}

TEST_CASE("phi subcommand agreement row") {
  const RunResult r = run({"phi", "--alpha", "0.3", "--m", "9", "--theta", "1.0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("phi_series") != std::string::npos);
  CHECK(r.out.find("phi_quadrature") != std::string::npos);
  CHECK(r.out.find("phi_agreement") != std::string::npos);
}

TEST_CASE("conjecture subcommand rejects out-of-range alpha via exit 2") {
  CHECK(run({"conjecture", "--alpha", "0.4", "--n", "27", "--x", "0.5"}).code == 2);
}

TEST_CASE("BRANNAN_THREADS is the fallback for --threads") {
  const std::vector<std::string> argv{"scan",    "--check", "brannan", "--n-list", "3",
                                      "--alpha", "0.5",     "--theta", "0",
                                      "--format", "json"};
  const RunResult plain = run(argv);
  setenv("BRANNAN_THREADS", "2", 1);
  const RunResult with_env = run(argv);
  unsetenv("BRANNAN_THREADS");
  CHECK(plain.code == 0);
  CHECK(with_env.code == 0);
  CHECK(plain.out == with_env.out);
}
