#pragma once

#include "drr/frontend/syntax.hpp"
#include "drr/oracle/oracle.hpp"
#include "drr/redcore/report.hpp"
#include "drr/semgraph/graph.hpp"

namespace drr::redcore {

struct SemanticOptions {
  /// Off for the ablation: candidates are deleted verbatim, with no group
  /// closure and no rewrites, and may be submitted without compiling.
  bool reconstruct = true;
};

struct SemanticResult {
  frontend::SyntaxTree tree;
  semgraph::DependencyGraph graph;
  StageReport report;
};

/// Deletes semantic candidates under ddmin, reconstructing dependencies of
/// every attempt. Accepts an attempt only when the oracle agrees and the
/// token count strictly drops; the graph is updated and re-classified after
/// each accept. Throws InitialPropertyError when the input already fails.
SemanticResult reduce_semantic(frontend::SyntaxTree tree, semgraph::DependencyGraph graph,
                               oracle::Oracle& oracle, const SemanticOptions& options = {});

/// A single candidate whose deletion would still be accepted.
struct Violation {
  std::string stage;
  CandidateList deleted;
  std::size_t tokens_after = 0;
};

/// Tries each candidate of `graph` alone; returns the deletions that pass
/// the oracle and shrink the program.
std::vector<Violation> semantic_minimality_sweep(const frontend::SyntaxTree& tree,
                                                 const semgraph::DependencyGraph& graph,
                                                 oracle::Oracle& oracle);

/// Same, against a graph built afresh from `tree`. Placeholders of earlier
/// reconstructions (such as `;` for a void call) are ordinary statements
/// there. A tree that does not typecheck has no candidates.
std::vector<Violation> semantic_minimality_sweep(const frontend::SyntaxTree& tree,
                                                 oracle::Oracle& oracle);

}  // namespace drr::redcore
