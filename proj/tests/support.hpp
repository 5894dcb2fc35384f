#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "drr/error.hpp"
#include "drr/frontend/interpreter.hpp"
#include "drr/frontend/parser.hpp"
#include "drr/frontend/sema.hpp"
#include "drr/oracle/oracle.hpp"
#include "drr/semgraph/graph.hpp"

namespace drr::test {

inline std::string corpus_path(const std::string& name) {
  return std::string(DRR_SOURCE_DIR) + "/corpus/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_text(const std::string& name) { return read_file(corpus_path(name)); }

/// Same decision as corpus/oracles/output_matches.sh, without a process
/// per query: compiles, runs within 200000 steps and prints `expected`.
inline bool output_matches(const std::string& program, const std::string& expected) {
  try {
    auto tree = frontend::parse_source(program);
    if (!frontend::compiles(tree)) return false;
    auto result = frontend::run_program(tree, {200'000, 2'000});
    return result.ok && result.output == expected;
  } catch (const Error&) {
    return false;
  }
}

inline std::unique_ptr<oracle::Checker> corpus_checker(const std::string& stem) {
  std::string expected = corpus_text(stem + ".expected");
  return std::make_unique<oracle::FunctionChecker>(
      [expected](const std::string& p) { return output_matches(p, expected); });
}

inline std::unique_ptr<oracle::Checker> always(bool verdict) {
  return std::make_unique<oracle::FunctionChecker>([verdict](const std::string&) { return verdict; });
}

/// Programs with an expected output, by stem.
inline std::vector<std::string> corpus_stems() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(std::string(DRR_SOURCE_DIR) + "/corpus"))
    if (e.path().extension() == ".expected") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

inline semgraph::SemanticNodeId find(const semgraph::DependencyGraph& g, semgraph::SemanticKind kind,
                                     std::string_view name) {
  for (const auto& [id, n] : g.nodes)
    if (n.kind == kind && n.name == name) return id;
  throw std::runtime_error("no such node: " + std::string(name));
}

}  // namespace drr::test
