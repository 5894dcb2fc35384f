#pragma once

#include <cstdint>
#include <string>

#include "drr/frontend/syntax.hpp"

namespace drr::frontend {

struct RunLimits {
  std::uint64_t max_steps = 2'000'000;
  std::size_t max_call_depth = 2'000;
};

struct RunResult {
  bool ok = false;          // compiled, found main, and finished without a runtime error
  std::string output;       // everything print() emitted, even on failure
  std::string error;        // first compile or runtime error
  std::int64_t exit_value = 0;
};

/// Executes `main` of a compiling program. Values are 64-bit integers with
/// wrapping arithmetic; pointers are cell addresses (0 is null).
RunResult run_program(const SyntaxTree& tree, const RunLimits& limits = {});

}  // namespace drr::frontend
