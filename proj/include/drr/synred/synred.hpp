#pragma once

#include <vector>

#include "drr/frontend/syntax.hpp"
#include "drr/oracle/oracle.hpp"
#include "drr/redcore/report.hpp"
#include "drr/redcore/semantic.hpp"

namespace drr::synred {

using frontend::NodeId;

enum class SiteKind { ListElement, OptionalSubtree };

const char* to_string(SiteKind kind);

/// A subtree whose removal alone leaves a grammatical program.
///
/// List elements are top-level declarations, block statements and struct
/// fields; optional subtrees are else clauses, initializers, parameter
/// lists and return values. Single parameters and arguments are left to
/// the semantic stage.
struct DeletionSite {
  NodeId node = frontend::kNoNode;
  SiteKind kind = SiteKind::ListElement;
  NodeId parent = frontend::kNoNode;
  std::size_t token_count = 0;
};

/// Sites in preorder.
std::vector<DeletionSite> enumerate_sites(const frontend::SyntaxTree& tree);

struct SyntacticResult {
  frontend::SyntaxTree tree;
  redcore::StageReport report;
  std::size_t passes = 0;
};

/// Repeats passes over the sites until one accepts nothing. A pass visits
/// sibling lists and optional subtrees in decreasing size, running ddmin
/// over each list's elements (largest first). Candidates are not required
/// to typecheck; the oracle decides.
SyntacticResult reduce_syntactic(frontend::SyntaxTree tree, oracle::Oracle& oracle);

/// Single-site deletions that pass the oracle and shrink the program.
std::vector<redcore::Violation> syntactic_minimality_sweep(const frontend::SyntaxTree& tree,
                                                           oracle::Oracle& oracle);

}  // namespace drr::synred
