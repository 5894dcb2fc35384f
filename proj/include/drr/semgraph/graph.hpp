#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "drr/frontend/sema.hpp"
#include "drr/frontend/syntax.hpp"
#include "drr/frontend/types.hpp"

namespace drr::semgraph {

using frontend::BindingKind;
using frontend::MicroCType;
using frontend::NodeId;

/// Identity of an enrolled node; equal to the id of its tree node, so it
/// survives rewrites for as long as the tree node does.
using SemanticNodeId = NodeId;

struct RoleSet {
  bool provider = false;
  bool user = false;
  bool conditioner = false;

  bool any() const { return provider || user || conditioner; }
  bool conditioner_only() const { return conditioner && !provider && !user; }

  friend bool operator==(const RoleSet&, const RoleSet&) = default;
};

enum class SemanticKind {
  StructDecl,
  Field,
  FunctionForwardDecl,
  FunctionDef,
  GlobalVar,
  LocalVar,          // declaration statement inside a function
  Parameter,
  ForwardParameter,  // parameter of a forward declaration
  Label,             // the labeled statement
  Statement,
  Argument,
  ReturnType,
  Placeholder,       // replacement introduced by dependency reconstruction
};

const char* to_string(SemanticKind kind);

struct SemanticNode {
  SemanticNodeId id = frontend::kNoNode;
  SemanticKind kind = SemanticKind::Statement;
  RoleSet roles;
  std::string name;                 // declared name, when there is one
  std::optional<MicroCType> type;   // declared type, or return type for functions
  // Refreshed from the tree on every build/update.
  std::vector<NodeId> ancestors;    // tree ids from the root to the parent
  std::size_t first_token = 0;
  std::size_t token_count = 0;
  Span span;
};

/// A user that requires a provider, together with the exact use site
/// (the tree node that names the provider).
struct Edge {
  SemanticNodeId user = frontend::kNoNode;
  SemanticNodeId provider = frontend::kNoNode;
  NodeId site = frontend::kNoNode;
  BindingKind kind = BindingKind::Name;

  // Syntactic context of the site, refreshed from the tree:
  NodeId statement = frontend::kNoNode;   // ExprStmt whose whole expression is this call
  NodeId assignment = frontend::kNoNode;  // `site = value` with site as the target
  NodeId assigned_value = frontend::kNoNode;  // `value` of that assignment
  NodeId address_of = frontend::kNoNode;  // `&site`
  std::optional<MicroCType> site_type;    // type spelled at a TypeRef site
  std::vector<NodeId> ancestors;

  auto key() const { return std::tuple(user, provider, site); }
  friend bool operator<(const Edge& a, const Edge& b) { return a.key() < b.key(); }
  friend bool operator==(const Edge& a, const Edge& b) { return a.key() == b.key(); }
};

enum class GroupKind { ParamArg, FwdDeclDef };

const char* to_string(GroupKind kind);

/// Nodes that can only be deleted together.
///
/// ParamArg: the parameter of a definition (the representative), the
/// parameter at the same position of its forward declaration if one
/// exists, and the argument at that position of every call site.
/// FwdDeclDef: the definition (representative) and its forward declaration.
struct AssociatedGroup {
  GroupKind kind = GroupKind::ParamArg;
  SemanticNodeId representative = frontend::kNoNode;
  std::set<SemanticNodeId> members;
};

struct DependencyGraph {
  std::map<SemanticNodeId, SemanticNode> nodes;
  std::set<Edge> edges;
  std::vector<AssociatedGroup> groups;
  std::map<std::string, SemanticNodeId, std::less<>> structs;  // struct name -> declaration

  const SemanticNode* node(SemanticNodeId id) const;
  bool contains(SemanticNodeId id) const { return nodes.count(id) != 0; }

  std::vector<const AssociatedGroup*> groups_of(SemanticNodeId id) const;
  std::vector<const Edge*> edges_into(SemanticNodeId provider) const;

  /// Throws GraphError when an edge endpoint lacks its role, an edge or
  /// group references an absent node, or an enrolled node has no role.
  void check_invariants() const;
};

/// Enrolls the semantic nodes of a tree that typechecks. Throws GraphError
/// otherwise.
DependencyGraph build_graph(const frontend::SyntaxTree& tree);

/// Reduction candidates: provider or user nodes, excluding conditioner-only
/// nodes, placeholders and non-representative group members. Ordered by
/// decreasing token count, then source position.
std::vector<SemanticNodeId> classify_semantic_nodes(const DependencyGraph& graph);

/// Graph after `deleted` left the tree and each rewrite target (key)
/// was replaced by the node given as value. `rewritten` is the tree after
/// both. Placeholders are enrolled as non-candidate users and take over
/// the group memberships of what they replaced. Throws UpdateError when a
/// surviving use site still points at a deleted provider.
DependencyGraph update_graph(const DependencyGraph& graph,
                             const std::set<SemanticNodeId>& deleted,
                             const std::map<NodeId, NodeId>& placeholders,
                             const frontend::SyntaxTree& rewritten);

/// Graphviz rendering; node labels are kind plus source span.
std::string to_dot(const DependencyGraph& graph);

}  // namespace drr::semgraph
