#include <doctest.h>

#include "drr/error.hpp"
#include "drr/frontend/printer.hpp"
#include "drr/frontend/sema.hpp"
#include "drr/redcore/semantic.hpp"
#include "support.hpp"

using namespace drr;
using namespace drr::redcore;

namespace {

SemanticResult reduce(const std::string& source, oracle::Oracle& oracle, bool reconstruct = true) {
  auto tree = frontend::parse_source(source);
  auto graph = semgraph::build_graph(tree);
  return reduce_semantic(std::move(tree), std::move(graph), oracle, {reconstruct});
}

std::unique_ptr<oracle::Checker> prints(const std::string& needle) {
  return std::make_unique<oracle::FunctionChecker>([needle](const std::string& p) {
    try {
      auto tree = frontend::parse_source(p);
      if (!frontend::compiles(tree)) return false;
      auto r = frontend::run_program(tree, {100'000, 1'000});
      return r.ok && r.output.find(needle) != std::string::npos;
    } catch (const Error&) {
      return false;
    }
  });
}

const char* kSeven =
    "int noise = 4;\n"
    "int twice(int v) { return v + v; }\n"
    "int spin(int n) { int i = 0; while (i < n) { noise = noise + i; i = i + 1; } return noise; }\n"
    "int main() { int a = twice(3); int b = spin(a); print(b); print(7); return 0; }\n";

}  // namespace

TEST_CASE("only what feeds the print survives") {
  oracle::Oracle oracle(prints("7\n"));
  auto r = reduce(kSeven, oracle);
  CHECK(frontend::print(r.tree) == "int main() { print(7);\n}\n");
  oracle::Oracle again(prints("7\n"));
  CHECK(semantic_minimality_sweep(r.tree, r.graph, again).empty());
}

TEST_CASE("an always-true property deletes everything") {
  oracle::Oracle oracle(test::always(true));
  auto r = reduce(kSeven, oracle);
  CHECK(frontend::count_tokens(r.tree) == 0);
  CHECK(r.report.tokens_after == 0);
  CHECK(r.graph.nodes.empty());
}

TEST_CASE("the input must satisfy the property") {
  oracle::Oracle oracle(test::always(false));
  CHECK_THROWS_AS(reduce(kSeven, oracle), InitialPropertyError);
}

TEST_CASE("hello: the uselessFunc intermediate and a smaller result") {
  oracle::Oracle oracle(test::corpus_checker("hello"));
  auto r = reduce(test::corpus_text("hello.mc"), oracle);
  CHECK(r.report.tokens_after < 74);
  CHECK(r.report.tokens_after == frontend::count_tokens(r.tree));

  // One accepted step drops uselessParam together with the argument at
  // its call site and still compiles.
  bool analog = false;
  std::string before = test::corpus_text("hello.mc");
  for (const auto& p : r.report.accepted) {
    bool had = before.find("uselessParam") != std::string::npos;
    bool has = p.find("uselessParam") != std::string::npos;
    if (had && !has) {
      analog = before.find("hello(42, ") != std::string::npos && p.find("hello(42)") != std::string::npos;
      CHECK(frontend::compiles(frontend::parse_source(p)));
    }
    before = p;
  }
  CHECK(analog);
  CHECK(frontend::print(r.tree).find("uselessParam") == std::string::npos);
  CHECK(frontend::print(r.tree).find("uselessArg") == std::string::npos);
}

TEST_CASE("oracle submissions compile and accepted sizes shrink") {
  for (std::string stem : {"hello", "mixed", "records", "labels", "gen03"}) {
    oracle::Oracle oracle(test::corpus_checker(stem));
    auto r = reduce(test::corpus_text(stem + ".mc"), oracle);
    std::size_t last = r.report.tokens_before;
    for (const auto& it : r.report.iterations) {
      if (it.source == oracle::VerdictSource::Oracle) CHECK(it.compiles);
      if (it.source == oracle::VerdictSource::PrecheckReject) CHECK_FALSE(it.accept);
      if (it.accept) {
        CHECK(it.tokens_after < last);
        last = it.tokens_after;
      }
    }
    CHECK(last == r.report.tokens_after);
    CHECK(r.report.queries == oracle.queries());
    auto violations = semantic_minimality_sweep(r.tree, r.graph, oracle);
    CHECK(violations.empty());
  }
}

TEST_CASE("without reconstruction the oracle sees broken programs") {
  oracle::Oracle oracle(test::corpus_checker("hello"));
  auto r = reduce(test::corpus_text("hello.mc"), oracle, false);
  bool broken = false;
  for (const auto& it : r.report.iterations)
    broken |= it.source == oracle::VerdictSource::Oracle && !it.compiles;
  CHECK(broken);
  // The parameter is out of reach: its argument is not a candidate.
  CHECK(frontend::print(r.tree).find("uselessParam") != std::string::npos);
}

TEST_CASE("runs are deterministic") {
  auto trace = [] {
    oracle::Oracle oracle(test::corpus_checker("mixed"));
    auto r = reduce(test::corpus_text("mixed.mc"), oracle);
    std::string out = frontend::print(r.tree);
    for (const auto& it : r.report.iterations) out += to_json(it).dump() + "\n";
    return std::pair(out, oracle.queries());
  };
  auto a = trace();
  auto b = trace();
  // Elapsed times differ; compare with them blanked out.
  auto strip = [](std::string s) {
    std::string out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
      auto at = line.find("\"elapsed_ms\":");
      if (at != std::string::npos) line.erase(at, line.find(',', at) - at);
      out += line + "\n";
    }
    return out;
  };
  CHECK(strip(a.first) == strip(b.first));
  CHECK(a.second == b.second);
}

TEST_CASE("the iteration log is JSON lines") {
  oracle::Oracle oracle(test::corpus_checker("tiny"));
  auto r = reduce(test::corpus_text("tiny.mc"), oracle);
  std::ostringstream out;
  write_jsonl(out, r.report.iterations);
  std::istringstream in(out.str());
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j.contains("iter"));
    CHECK(j.contains("candidate_ids"));
    CHECK(j.contains("verdict"));
    CHECK(j.contains("tokens_after"));
    CHECK(j.contains("elapsed_ms"));
    CHECK(j["stage"] == "sem");
    ++n;
  }
  CHECK(n == r.report.iterations.size());
}
