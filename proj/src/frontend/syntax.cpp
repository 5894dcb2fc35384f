#include "drr/frontend/syntax.hpp"

#include <functional>

#include "drr/frontend/printer.hpp"
#include "drr/frontend/types.hpp"

namespace drr::frontend {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Program: return "Program";
    case NodeKind::StructDecl: return "StructDecl";
    case NodeKind::FuncForwardDecl: return "FuncForwardDecl";
    case NodeKind::FuncDef: return "FuncDef";
    case NodeKind::VarDecl: return "VarDecl";
    case NodeKind::Initializer: return "Initializer";
    case NodeKind::Type: return "Type";
    case NodeKind::ParamList: return "ParamList";
    case NodeKind::Param: return "Param";
    case NodeKind::Block: return "Block";
    case NodeKind::ExprStmt: return "ExprStmt";
    case NodeKind::ReturnStmt: return "ReturnStmt";
    case NodeKind::IfStmt: return "IfStmt";
    case NodeKind::ElseClause: return "ElseClause";
    case NodeKind::WhileStmt: return "WhileStmt";
    case NodeKind::GotoStmt: return "GotoStmt";
    case NodeKind::LabeledStmt: return "LabeledStmt";
    case NodeKind::IntLit: return "IntLit";
    case NodeKind::NameExpr: return "NameExpr";
    case NodeKind::CallExpr: return "CallExpr";
    case NodeKind::ArgList: return "ArgList";
    case NodeKind::PrintExpr: return "PrintExpr";
    case NodeKind::UnaryExpr: return "UnaryExpr";
    case NodeKind::BinaryExpr: return "BinaryExpr";
    case NodeKind::CastExpr: return "CastExpr";
    case NodeKind::ParenExpr: return "ParenExpr";
    case NodeKind::Token: return "Token";
  }
  return "?";
}

bool is_statement(NodeKind kind) {
  switch (kind) {
    case NodeKind::VarDecl:
    case NodeKind::Block:
    case NodeKind::ExprStmt:
    case NodeKind::ReturnStmt:
    case NodeKind::IfStmt:
    case NodeKind::WhileStmt:
    case NodeKind::GotoStmt:
    case NodeKind::LabeledStmt:
      return true;
    default:
      return false;
  }
}

bool is_expression(NodeKind kind) {
  switch (kind) {
    case NodeKind::IntLit:
    case NodeKind::NameExpr:
    case NodeKind::CallExpr:
    case NodeKind::PrintExpr:
    case NodeKind::UnaryExpr:
    case NodeKind::BinaryExpr:
    case NodeKind::CastExpr:
    case NodeKind::ParenExpr:
      return true;
    default:
      return false;
  }
}

const Node* Node::find_child(NodeKind k) const {
  for (const auto& c : children)
    if (c.kind == k) return &c;
  return nullptr;
}

Node* Node::find_child(NodeKind k) {
  for (auto& c : children)
    if (c.kind == k) return &c;
  return nullptr;
}

std::string_view Node::name() const {
  switch (kind) {
    case NodeKind::StructDecl:
    case NodeKind::GotoStmt:
      return children.at(1).token.lexeme;
    case NodeKind::FuncForwardDecl:
    case NodeKind::FuncDef:
    case NodeKind::VarDecl:
    case NodeKind::Param:
      return children.at(1).token.lexeme;
    case NodeKind::CallExpr:
    case NodeKind::NameExpr:
    case NodeKind::LabeledStmt:
      return children.at(0).token.lexeme;
    case NodeKind::Type:
      if (children.size() >= 2 && children[0].is_token("struct")) return children[1].token.lexeme;
      return {};
    default:
      return {};
  }
}

namespace {

const Node* first_leaf(const Node& n) {
  if (n.is_token()) return &n;
  for (const auto& c : n.children)
    if (auto* l = first_leaf(c)) return l;
  return nullptr;
}

const Node* last_leaf(const Node& n) {
  if (n.is_token()) return &n;
  for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
    if (auto* l = last_leaf(*it)) return l;
  return nullptr;
}

}  // namespace

Span Node::span() const {
  auto* first = first_leaf(*this);
  auto* last = last_leaf(*this);
  if (!first || !last) return {};
  return {first->token.span.begin, last->token.span.end};
}

SyntaxTree::SyntaxTree(Node root, std::string source, NodeId next_id)
    : root_(std::move(root)), source_(std::move(source)), next_id_(next_id) {}

const Node* SyntaxTree::find(NodeId id) const {
  std::function<const Node*(const Node&)> walk = [&](const Node& n) -> const Node* {
    if (n.id == id) return &n;
    for (const auto& c : n.children)
      if (auto* hit = walk(c)) return hit;
    return nullptr;
  };
  return id == kNoNode ? nullptr : walk(root_);
}

std::vector<const Node*> SyntaxTree::path_to(NodeId id) const {
  std::vector<const Node*> path;
  std::function<bool(const Node&)> walk = [&](const Node& n) {
    path.push_back(&n);
    if (n.id == id) return true;
    for (const auto& c : n.children)
      if (walk(c)) return true;
    path.pop_back();
    return false;
  };
  if (id != kNoNode) walk(root_);
  return path;
}

std::vector<Token> SyntaxTree::tokens() const {
  std::vector<Token> out;
  std::function<void(const Node&)> walk = [&](const Node& n) {
    if (n.is_token()) {
      out.push_back(n.token);
      return;
    }
    for (const auto& c : n.children) walk(c);
  };
  walk(root_);
  return out;
}

void SyntaxTree::reindex() {
  source_ = print(root_);
  // Recover spans by relexing the printed text; the printer emits exactly
  // the leaf lexemes in order.
  auto relexed = lex(source_);
  std::size_t cursor = 0;
  std::function<void(Node&)> walk = [&](Node& n) {
    n.first_token = cursor;
    if (n.is_token()) {
      n.token.span = relexed.at(cursor).span;
      ++cursor;
    } else {
      for (auto& c : n.children) walk(c);
    }
    n.token_count = cursor - n.first_token;
  };
  walk(root_);
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  if (a.is_token())
    return a.token.lexeme == b.token.lexeme && a.token.kind == b.token.kind;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(a.children[i], b.children[i])) return false;
  return true;
}

Node make_token(SyntaxTree& tree, TokenKind kind, std::string lexeme) {
  Node n;
  n.kind = NodeKind::Token;
  n.id = tree.fresh_id();
  n.token = Token{kind, std::move(lexeme), {}};
  n.token_count = 1;
  return n;
}

Node make_int_literal(SyntaxTree& tree, long long value) {
  Node n;
  n.kind = NodeKind::IntLit;
  n.id = tree.fresh_id();
  n.children.push_back(make_token(tree, TokenKind::IntegerLiteral, std::to_string(value)));
  n.token_count = 1;
  return n;
}

Node make_empty_statement(SyntaxTree& tree) {
  Node n;
  n.kind = NodeKind::ExprStmt;
  n.id = tree.fresh_id();
  n.children.push_back(make_token(tree, TokenKind::Punctuator, ";"));
  n.token_count = 1;
  return n;
}

std::string to_string(const MicroCType& type) {
  std::string s;
  switch (type.base) {
    case MicroCType::Base::Int: s = "int"; break;
    case MicroCType::Base::Void: s = "void"; break;
    case MicroCType::Base::Struct: s = "struct " + type.struct_name; break;
  }
  s.append(static_cast<std::size_t>(type.pointer_depth), '*');
  return s;
}

MicroCType type_of(const Node& type_node) {
  MicroCType t;
  std::size_t i = 0;
  const auto& ch = type_node.children;
  if (ch.at(0).is_token("int")) {
    t.base = MicroCType::Base::Int;
    i = 1;
  } else if (ch.at(0).is_token("void")) {
    t.base = MicroCType::Base::Void;
    i = 1;
  } else {
    t.base = MicroCType::Base::Struct;
    t.struct_name = ch.at(1).token.lexeme;
    i = 2;
  }
  for (; i < ch.size(); ++i) ++t.pointer_depth;
  return t;
}

Node make_type_node(SyntaxTree& tree, const MicroCType& type) {
  Node n;
  n.kind = NodeKind::Type;
  n.id = tree.fresh_id();
  switch (type.base) {
    case MicroCType::Base::Int:
      n.children.push_back(make_token(tree, TokenKind::Keyword, "int"));
      break;
    case MicroCType::Base::Void:
      n.children.push_back(make_token(tree, TokenKind::Keyword, "void"));
      break;
    case MicroCType::Base::Struct:
      n.children.push_back(make_token(tree, TokenKind::Keyword, "struct"));
      n.children.push_back(make_token(tree, TokenKind::Identifier, type.struct_name));
      break;
  }
  for (int i = 0; i < type.pointer_depth; ++i)
    n.children.push_back(make_token(tree, TokenKind::Operator, "*"));
  n.token_count = n.children.size();
  return n;
}

}  // namespace drr::frontend
