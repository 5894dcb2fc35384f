// Front end driver for MicroC: run, typecheck, count tokens, pretty-print.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "drr/error.hpp"
#include "drr/frontend/interpreter.hpp"
#include "drr/frontend/parser.hpp"
#include "drr/frontend/printer.hpp"
#include "drr/frontend/sema.hpp"
#include "drr/semgraph/graph.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw drr::Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report(const std::string& path, const drr::frontend::Diagnostic& d) {
  std::cerr << path << ":" << d.span.begin << ": "
            << (d.severity == drr::frontend::Severity::Error ? "error" : "warning") << ": "
            << d.message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace drr::frontend;
  CLI::App app{"MicroC front end"};
  app.require_subcommand(1);
  std::string file;
  std::string expect;

  auto* run = app.add_subcommand("run", "interpret main and echo its output");
  run->add_option("file", file)->required();
  run->add_option("--expect", expect, "file holding the exact expected output");
  RunLimits limits;
  run->add_option("--max-steps", limits.max_steps, "abort after this many evaluation steps")
      ->capture_default_str();
  auto* check = app.add_subcommand("check", "typecheck only");
  check->add_option("file", file)->required();
  auto* tokens = app.add_subcommand("tokens", "print the token count");
  tokens->add_option("file", file)->required();
  auto* fmt = app.add_subcommand("fmt", "print the canonical form");
  fmt->add_option("file", file)->required();
  auto* graph = app.add_subcommand("graph", "print the dependency graph as dot");
  graph->add_option("file", file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    std::string text = slurp(file);
    if (*tokens) {
      std::cout << count_tokens(text) << "\n";
      return 0;
    }
    SyntaxTree tree = parse_source(text);
    if (*fmt) {
      std::cout << print(tree);
      return 0;
    }
    auto diagnostics = typecheck(tree);
    bool failed = false;
    for (const auto& d : diagnostics) {
      report(file, d);
      failed |= d.severity == Severity::Error;
    }
    if (failed) return 1;
    if (*check) return 0;
    if (*graph) {
      std::cout << drr::semgraph::to_dot(drr::semgraph::build_graph(tree));
      return 0;
    }
    RunResult result = run_program(tree, limits);
    std::cout << result.output;
    if (!result.ok) {
      std::cerr << file << ": " << result.error << "\n";
      return 2;
    }
    if (!expect.empty() && result.output != slurp(expect)) return 3;
    return 0;
  } catch (const drr::LocatedError& e) {
    std::cerr << file << ":" << e.span().begin << ": error: " << e.what() << "\n";
    return 1;
  } catch (const drr::Error& e) {
    std::cerr << "microc: " << e.what() << "\n";
    return 1;
  }
}
