#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "drr/frontend/token.hpp"

namespace drr::frontend {

/// Stable identity of a tree node. Copies of a tree keep the ids of the
/// nodes they share; rewrites mint fresh ids for the nodes they introduce.
using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0;

// Child layouts, in order (T = token leaf):
//   Program          TopDecl*
//   StructDecl       T(struct) T(name) T({) VarDecl* T(}) T(;)
//   FuncForwardDecl  Type T(name) T(() ParamList? T()) T(;)
//   FuncDef          Type T(name) T(() ParamList? T()) Block
//   VarDecl          Type T(name) Initializer? T(;)
//   Initializer      T(=) Expr
//   Type             (T(int) | T(void) | T(struct) T(name)) T(*)*
//   ParamList        Param (T(,) Param)*
//   Param            Type T(name)
//   Block            T({) Stmt* T(})
//   ExprStmt         Expr? T(;)
//   ReturnStmt       T(return) Expr? T(;)
//   IfStmt           T(if) T(() Expr T()) Stmt ElseClause?
//   ElseClause       T(else) Stmt
//   WhileStmt        T(while) T(() Expr T()) Stmt
//   GotoStmt         T(goto) T(label) T(;)
//   LabeledStmt      T(label) T(:) Stmt
//   IntLit           T(literal)
//   NameExpr         T(name)
//   CallExpr         T(name) T(() ArgList? T())
//   ArgList          Expr (T(,) Expr)*
//   PrintExpr        T(print) T(() Expr T())
//   UnaryExpr        T(& or *) Expr
//   BinaryExpr       Expr T(op) Expr
//   CastExpr         T(() Type T()) Expr
//   ParenExpr        T(() Expr T())
enum class NodeKind {
  Program,
  StructDecl,
  FuncForwardDecl,
  FuncDef,
  VarDecl,
  Initializer,
  Type,
  ParamList,
  Param,
  Block,
  ExprStmt,
  ReturnStmt,
  IfStmt,
  ElseClause,
  WhileStmt,
  GotoStmt,
  LabeledStmt,
  IntLit,
  NameExpr,
  CallExpr,
  ArgList,
  PrintExpr,
  UnaryExpr,
  BinaryExpr,
  CastExpr,
  ParenExpr,
  Token,
};

const char* to_string(NodeKind kind);

bool is_statement(NodeKind kind);
bool is_expression(NodeKind kind);

struct Node {
  NodeKind kind = NodeKind::Token;
  NodeId id = kNoNode;
  std::vector<Node> children;
  frontend::Token token;  // meaningful for NodeKind::Token only

  // Position within the owning tree's token sequence; maintained by
  // SyntaxTree::reindex().
  std::size_t first_token = 0;
  std::size_t token_count = 0;

  bool is_token() const { return kind == NodeKind::Token; }
  bool is_token(std::string_view lexeme) const {
    return kind == NodeKind::Token && token.lexeme == lexeme;
  }

  /// First child of the given kind, or nullptr.
  const Node* find_child(NodeKind k) const;
  Node* find_child(NodeKind k);

  /// Lexeme of the declared/referenced name for declarations, params,
  /// calls, name expressions, gotos and labels; empty otherwise.
  std::string_view name() const;

  /// Span covered in the owning tree's source text.
  Span span() const;
};

/// Lossless parse tree of one MicroC compilation unit.
class SyntaxTree {
 public:
  SyntaxTree() = default;
  SyntaxTree(Node root, std::string source, NodeId next_id);

  const Node& root() const { return root_; }
  Node& root() { return root_; }
  const std::string& source() const { return source_; }

  NodeId fresh_id() { return next_id_++; }
  NodeId next_id() const { return next_id_; }

  const Node* find(NodeId id) const;
  bool contains(NodeId id) const { return find(id) != nullptr; }

  /// Nodes from the root down to (and including) the node with `id`;
  /// empty when absent.
  std::vector<const Node*> path_to(NodeId id) const;

  std::vector<Token> tokens() const;
  std::size_t token_count() const { return root_.token_count; }

  /// Recomputes token positions and regenerates the source text from the
  /// canonical printer so that every token span slices its lexeme.
  void reindex();

 private:
  Node root_{NodeKind::Program, kNoNode, {}, {}, 0, 0};
  std::string source_;
  NodeId next_id_ = 1;
};

/// Same kinds, same shape, same lexemes; ids and spans are ignored.
bool structurally_equal(const Node& a, const Node& b);

// Builders for nodes introduced by rewrites. All ids come from `tree`.
Node make_token(SyntaxTree& tree, TokenKind kind, std::string lexeme);
Node make_int_literal(SyntaxTree& tree, long long value);
Node make_empty_statement(SyntaxTree& tree);

}  // namespace drr::frontend
