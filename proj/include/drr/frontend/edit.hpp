#pragma once

#include <map>
#include <set>

#include "drr/frontend/syntax.hpp"

namespace drr::frontend {

/// Batches grammar-aware edits against a copy of a tree.
///
/// Removing a node drops it from its enclosing list (top-level
/// declarations, block statements, struct fields, parameters with their
/// comma, arguments with their comma) or from an optional slot
/// (initializer, else clause, parameter list, return value). A statement
/// removed from a mandatory slot (if/while body, else body, labeled
/// statement) becomes the empty statement `;`. Parameter and argument
/// lists that lose every element disappear.
class TreeEditor {
 public:
  explicit TreeEditor(SyntaxTree tree) : tree_(std::move(tree)) {}

  /// Access for minting ids of replacement nodes.
  SyntaxTree& tree() { return tree_; }

  void remove(NodeId id) { removals_.insert(id); }
  void replace(NodeId id, Node replacement) { replacements_[id] = std::move(replacement); }
  /// Replaces node `id` by its (edited) descendant `descendant`.
  void hoist(NodeId id, NodeId descendant) { hoists_[id] = descendant; }

  bool empty() const { return removals_.empty() && replacements_.empty() && hoists_.empty(); }

  /// Applies every edit and reindexes. Throws EditError when a removal
  /// targets a mandatory non-statement child.
  SyntaxTree finish() &&;

 private:
  SyntaxTree tree_;
  std::set<NodeId> removals_;
  std::map<NodeId, Node> replacements_;
  std::map<NodeId, NodeId> hoists_;
};

/// Convenience: removal-only edit.
SyntaxTree remove_nodes(const SyntaxTree& tree, const std::set<NodeId>& ids);

}  // namespace drr::frontend
