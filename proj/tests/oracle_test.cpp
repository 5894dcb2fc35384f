#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>

#include "drr/error.hpp"
#include "drr/oracle/oracle.hpp"
#include "support.hpp"

using namespace drr;
using namespace drr::oracle;

namespace {

CheckResult check_with(std::vector<std::string> command, double timeout = 5.0,
                       const std::string& program = "int main() { return 0; }\n") {
  OracleConfig config;
  config.command = std::move(command);
  config.timeout_seconds = timeout;
  return ExternalChecker(config).check(program);
}

}  // namespace

TEST_CASE("exit codes decide") {
  auto ok = check_with({"sh", "-c", "exit 0"});
  CHECK(ok.accept);
  CHECK(ok.exit_code == 0);
  auto bad = check_with({"sh", "-c", "exit 1"});
  CHECK_FALSE(bad.accept);
  CHECK(bad.exit_code == 1);
  CHECK_FALSE(bad.timed_out);
}

TEST_CASE("timeouts reject") {
  auto start = std::chrono::steady_clock::now();
  auto slow = check_with({"sh", "-c", "sleep 5"}, 0.2);
  double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK_FALSE(slow.accept);
  CHECK(slow.timed_out);
  CHECK(took < 3.0);
}

TEST_CASE("the candidate is visible by name and through DRR_CANDIDATE") {
  const std::string program = "int x;\n";
  CHECK(check_with({"sh", "-c", "test \"$(cat candidate.mc)\" = 'int x;'"}, 5, program).accept);
  CHECK(check_with({"sh", "-c", "test \"$(cat \"$DRR_CANDIDATE\")\" = 'int x;'"}, 5, program).accept);
  CHECK(check_with({"sh", "-c", "case \"$DRR_CANDIDATE\" in /*) exit 0;; esac; exit 1"}).accept);

  OracleConfig config;
  config.command = {"sh", "-c", "test -f other.c"};
  config.candidate_name = "other.c";
  CHECK(ExternalChecker(config).check(program).accept);
}

TEST_CASE("every query gets a fresh directory") {
  // Leaves a marker behind; a second query must not see it.
  std::vector<std::string> cmd{"sh", "-c", "test ! -e marker && touch marker"};
  CHECK(check_with(cmd).accept);
  CHECK(check_with(cmd).accept);
}

TEST_CASE("infrastructure failures raise") {
  CHECK_THROWS_AS(check_with({"/nonexistent/oracle"}), OracleError);
  CHECK_THROWS_AS(ExternalChecker{OracleConfig{}}, OracleError);
  OracleConfig zero;
  zero.command = {"true"};
  zero.timeout_seconds = 0;
  CHECK_THROWS_AS(ExternalChecker{zero}, OracleError);
}

TEST_CASE("caching and counting") {
  int calls = 0;
  Oracle oracle(std::make_unique<FunctionChecker>([&](const std::string& p) {
    ++calls;
    return p.size() % 2 == 0;
  }));
  CHECK(oracle.query("ab").accept);
  CHECK_FALSE(oracle.query("abc").accept);
  auto again = oracle.query("ab");
  CHECK(again.accept);
  CHECK(again.source == VerdictSource::Cache);
  oracle.query("abcd");
  oracle.query("abc");
  CHECK(calls == 3);
  CHECK(oracle.queries() == 3);
  auto log = oracle.log();
  REQUIRE(log.size() == 5);
  CHECK(log[2].cached);
  CHECK(log[2].seconds == 0.0);
  CHECK(log[2].hash == log[0].hash);
  CHECK(metrics(log, 1.5).queries == 3);
  CHECK(metrics(log, 1.5).time_seconds == 1.5);
  CHECK(metrics({}, 0).queries == 0);

  Oracle uncached(test::always(true), false);
  uncached.query("x");
  uncached.query("x");
  CHECK(uncached.queries() == 2);
}

TEST_CASE("five records, two of them cache hits") {
  std::vector<QueryRecord> log(5);
  log[1].cached = log[3].cached = true;
  CHECK(metrics(log, 0).queries == 3);
}

TEST_CASE("the corpus script and the in-process check agree") {
  const char* microc = std::getenv("MICROC");
  if (!microc) return;  // set by ctest
  OracleConfig config;
  config.command = {std::string(DRR_SOURCE_DIR) + "/corpus/hello.oracle.sh"};
  ExternalChecker script(config);
  const std::string good = test::corpus_text("hello.mc");
  const std::string expected = test::corpus_text("hello.expected");
  for (const std::string& p :
       {good, std::string("int main() { print(42); return 0; }\n"), std::string("int main() { print(41); }\n"),
        std::string("int main() { return y; }\n"), std::string("int main( {\n"),
        std::string("int main() { while (1) { } print(42); }\n")}) {
    CAPTURE(p);
    CHECK(script.check(p).accept == test::output_matches(p, expected));
  }
}

TEST_CASE("a relative oracle path is taken from the caller's directory") {
  auto cwd = std::filesystem::current_path();
  std::filesystem::current_path(std::string(DRR_SOURCE_DIR) + "/corpus");
  OracleConfig config;
  config.command = {"oracles/output_matches.sh", "hello.expected"};
  ExternalChecker checker(config);
  std::filesystem::current_path(cwd);
  // The script exists now; the missing microc or mismatch only rejects.
  CHECK_NOTHROW(checker.check("int main() { return 0; }\n"));
}
