#include "drr/frontend/edit.hpp"

#include <optional>
#include <string>

namespace drr::frontend {

namespace {

const Node* find_in(const Node& n, NodeId id) {
  if (n.id == id) return &n;
  for (const auto& c : n.children)
    if (auto* hit = find_in(c, id)) return hit;
  return nullptr;
}

bool is_list_parent(NodeKind k) {
  return k == NodeKind::ParamList || k == NodeKind::ArgList;
}

bool statement_slot(const Node& parent, std::size_t index) {
  switch (parent.kind) {
    case NodeKind::IfStmt:
    case NodeKind::WhileStmt:
      return index == 4;
    case NodeKind::ElseClause:
      return index == 1;
    case NodeKind::LabeledStmt:
      return index == 2;
    default:
      return false;
  }
}

bool droppable(const Node& parent, const Node& child) {
  switch (parent.kind) {
    case NodeKind::Program:
    case NodeKind::Block:
    case NodeKind::StructDecl:
      return !child.is_token();
    case NodeKind::FuncDef:
    case NodeKind::FuncForwardDecl:
      return child.kind == NodeKind::ParamList;
    case NodeKind::CallExpr:
      return child.kind == NodeKind::ArgList;
    case NodeKind::VarDecl:
      return child.kind == NodeKind::Initializer;
    case NodeKind::IfStmt:
      return child.kind == NodeKind::ElseClause;
    case NodeKind::ReturnStmt:
      return is_expression(child.kind);
    default:
      return false;
  }
}

class Rebuilder {
 public:
  Rebuilder(SyntaxTree& tree, const std::set<NodeId>& removals,
            std::map<NodeId, Node>& replacements, const std::map<NodeId, NodeId>& hoists)
      : tree_(tree), removals_(removals), replacements_(replacements), hoists_(hoists) {}

  /// nullopt means "this node vanishes".
  std::optional<Node> rebuild(const Node& n) {
    if (removals_.count(n.id)) return std::nullopt;
    if (auto it = replacements_.find(n.id); it != replacements_.end()) return it->second;
    if (auto it = hoists_.find(n.id); it != hoists_.end()) {
      const Node* inner = find_in(n, it->second);
      if (!inner || inner == &n) throw EditError("hoist target is not a descendant");
      auto r = rebuild(*inner);
      if (!r) throw EditError("hoisted node was removed");
      return r;
    }
    if (n.is_token()) return n;

    Node out;
    out.kind = n.kind;
    out.id = n.id;
    if (is_list_parent(n.kind)) return rebuild_list(n);

    for (std::size_t i = 0; i < n.children.size(); ++i) {
      const Node& c = n.children[i];
      auto r = rebuild(c);
      if (r) {
        out.children.push_back(std::move(*r));
        continue;
      }
      if (statement_slot(n, i)) {
        out.children.push_back(make_empty_statement(tree_));
      } else if (!droppable(n, c)) {
        throw EditError(std::string("cannot remove ") + to_string(c.kind) + " from " +
                        to_string(n.kind));
      }
    }
    return out;
  }

 private:
  SyntaxTree& tree_;
  const std::set<NodeId>& removals_;
  std::map<NodeId, Node>& replacements_;
  const std::map<NodeId, NodeId>& hoists_;

  std::optional<Node> rebuild_list(const Node& n) {
    std::vector<Node> elements;
    std::vector<Node> commas;
    for (const auto& c : n.children) {
      if (c.is_token(",")) {
        commas.push_back(c);
        continue;
      }
      if (auto r = rebuild(c)) elements.push_back(std::move(*r));
    }
    if (elements.empty()) return std::nullopt;
    Node out;
    out.kind = n.kind;
    out.id = n.id;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (i > 0) out.children.push_back(commas.at(i - 1));
      out.children.push_back(std::move(elements[i]));
    }
    return out;
  }
};

}  // namespace

SyntaxTree TreeEditor::finish() && {
  Rebuilder r(tree_, removals_, replacements_, hoists_);
  const Node original = tree_.root();
  auto root = r.rebuild(original);
  if (!root) throw EditError("cannot remove the program root");
  tree_.root() = std::move(*root);
  tree_.reindex();
  return std::move(tree_);
}

SyntaxTree remove_nodes(const SyntaxTree& tree, const std::set<NodeId>& ids) {
  TreeEditor editor(tree);
  for (auto id : ids) editor.remove(id);
  return std::move(editor).finish();
}

}  // namespace drr::frontend
