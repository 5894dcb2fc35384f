#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "drr/frontend/syntax.hpp"
#include "drr/frontend/types.hpp"
#include "drr/semgraph/graph.hpp"

namespace drr::reconstruct {

using frontend::MicroCType;
using frontend::NodeId;
using semgraph::SemanticNodeId;

/// The replacement literal for a value of type `t`: `1` for int, a cast of
/// `0` for everything else. Throws DefaultError for bare void.
frontend::Node default_value_for(const MicroCType& t, frontend::SyntaxTree& id_source);

/// Canonical text of default_value_for(t).
std::string default_value_text(const MicroCType& t);

enum class RewriteKind {
  DefaultValue,        // variable/parameter use, or call: `(type) default`
  FunctionPointerZero, // function used as a value: `(void***)0`
  VoidPointerType,     // struct type reference: base becomes `void***`
  EmptyStatement,      // call of a void function used as a statement: `;`
  AssignedValue,       // `deleted = value` keeps just `value`
};

const char* to_string(RewriteKind kind);

struct Rewrite {
  NodeId site = frontend::kNoNode;       // the use of the deleted provider
  NodeId target = frontend::kNoNode;     // the node that gets replaced
  SemanticNodeId provider = frontend::kNoNode;
  RewriteKind kind = RewriteKind::DefaultValue;
  MicroCType type;                       // value type, or the rewritten type for VoidPointerType
  NodeId kept = frontend::kNoNode;       // AssignedValue: the surviving right-hand side
};

struct ReconstructionPlan {
  std::set<SemanticNodeId> requested;
  /// Requested nodes closed under associated groups, plus deleted gotos.
  std::set<SemanticNodeId> deletions;
  /// Enrolled nodes that leave with an enclosing deletion.
  std::set<SemanticNodeId> cascaded;
  /// Outermost first.
  std::vector<Rewrite> rewrites;
  /// False for ablation plans: no closure, no rewrites, no compile check.
  bool reconstruct = true;

  /// Every enrolled node the plan removes from the graph.
  std::set<SemanticNodeId> removed() const;
};

/// Closes `requested` under associated groups and subtree cascades and
/// assigns a reconstruction to every surviving use of a deleted provider.
/// Throws PlanError for an unknown node or a use with no applicable rule.
ReconstructionPlan plan(const semgraph::DependencyGraph& graph,
                        const std::set<SemanticNodeId>& requested);

/// Deletes exactly `requested`; surviving uses are left dangling.
ReconstructionPlan plan_without_reconstruction(const semgraph::DependencyGraph& graph,
                                               const std::set<SemanticNodeId>& requested);

struct Applied {
  frontend::SyntaxTree tree;
  /// Rewrite target -> node that replaced it.
  std::map<NodeId, NodeId> placeholders;
};

/// Rewrites a copy of `tree`. For reconstructing plans the result must
/// typecheck; otherwise ApplyError is thrown and the candidate must be
/// dropped.
Applied apply(const frontend::SyntaxTree& tree, const ReconstructionPlan& plan);

nlohmann::json to_json(const ReconstructionPlan& plan);

}  // namespace drr::reconstruct
