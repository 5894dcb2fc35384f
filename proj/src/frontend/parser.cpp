#include "drr/frontend/parser.hpp"

#include <string>

namespace drr::frontend {

namespace {

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, std::size_t source_size)
      : toks_(tokens), eof_{source_size, source_size} {}

  Node program() {
    Node n = open(NodeKind::Program);
    while (!at_end()) n.children.push_back(top_decl());
    return close(std::move(n));
  }

  NodeId next_id() const { return next_id_; }

 private:
  const std::vector<Token>& toks_;
  Span eof_;
  std::size_t pos_ = 0;
  NodeId next_id_ = 1;

  // --- token helpers -------------------------------------------------------

  bool at_end() const { return pos_ >= toks_.size(); }

  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? &toks_[pos_ + ahead] : nullptr;
  }

  bool check(std::string_view lexeme, std::size_t ahead = 0) const {
    auto* t = peek(ahead);
    return t && t->is(lexeme);
  }

  bool check_ident(std::size_t ahead = 0) const {
    auto* t = peek(ahead);
    return t && t->kind == TokenKind::Identifier;
  }

  bool starts_type(std::size_t ahead = 0) const {
    return check("int", ahead) || check("void", ahead) || check("struct", ahead);
  }

  [[noreturn]] void fail(const std::string& expected) const {
    if (at_end()) throw ParseError("expected " + expected + " but reached end of input", eof_);
    throw ParseError("expected " + expected + " but found '" + toks_[pos_].lexeme + "'",
                     toks_[pos_].span);
  }

  Node leaf() {
    Node n;
    n.kind = NodeKind::Token;
    n.id = next_id_++;
    n.token = toks_[pos_];
    n.first_token = pos_;
    n.token_count = 1;
    ++pos_;
    return n;
  }

  Node expect(std::string_view lexeme) {
    if (!check(lexeme)) fail("'" + std::string(lexeme) + "'");
    return leaf();
  }

  Node expect_ident() {
    if (!check_ident()) fail("identifier");
    return leaf();
  }

  Node open(NodeKind kind) {
    Node n;
    n.kind = kind;
    n.id = next_id_++;
    n.first_token = pos_;
    return n;
  }

  Node close(Node n) {
    n.token_count = pos_ - n.first_token;
    return n;
  }

  // --- declarations --------------------------------------------------------

  Node type() {
    Node n = open(NodeKind::Type);
    if (check("int") || check("void")) {
      n.children.push_back(leaf());
    } else if (check("struct")) {
      n.children.push_back(leaf());
      n.children.push_back(expect_ident());
    } else {
      fail("type");
    }
    while (check("*")) n.children.push_back(leaf());
    return close(std::move(n));
  }

  Node top_decl() {
    if (check("struct") && check_ident(1) && check("{", 2)) return struct_decl();
    if (!starts_type()) fail("declaration");
    std::size_t start = pos_;
    Node ty = type();
    Node name = expect_ident();
    if (check("(")) return function(start, std::move(ty), std::move(name));
    return var_decl_rest(start, std::move(ty), std::move(name));
  }

  Node struct_decl() {
    Node n = open(NodeKind::StructDecl);
    n.children.push_back(leaf());
    n.children.push_back(expect_ident());
    n.children.push_back(expect("{"));
    while (!check("}")) {
      if (!starts_type()) fail("field declaration or '}'");
      n.children.push_back(var_decl());
    }
    n.children.push_back(leaf());
    n.children.push_back(expect(";"));
    return close(std::move(n));
  }

  Node function(std::size_t start, Node ty, Node name) {
    Node n = open(NodeKind::FuncDef);
    n.first_token = start;
    n.children.push_back(std::move(ty));
    n.children.push_back(std::move(name));
    n.children.push_back(expect("("));
    if (!check(")")) n.children.push_back(param_list());
    n.children.push_back(expect(")"));
    if (check(";")) {
      n.kind = NodeKind::FuncForwardDecl;
      n.children.push_back(leaf());
    } else if (check("{")) {
      n.children.push_back(block());
    } else {
      fail("';' or function body");
    }
    return close(std::move(n));
  }

  Node param_list() {
    Node n = open(NodeKind::ParamList);
    n.children.push_back(param());
    while (check(",")) {
      n.children.push_back(leaf());
      n.children.push_back(param());
    }
    return close(std::move(n));
  }

  Node param() {
    Node n = open(NodeKind::Param);
    n.children.push_back(type());
    n.children.push_back(expect_ident());
    return close(std::move(n));
  }

  Node var_decl() {
    std::size_t start = pos_;
    Node ty = type();
    Node name = expect_ident();
    return var_decl_rest(start, std::move(ty), std::move(name));
  }

  Node var_decl_rest(std::size_t start, Node ty, Node name) {
    Node n = open(NodeKind::VarDecl);
    n.first_token = start;
    n.children.push_back(std::move(ty));
    n.children.push_back(std::move(name));
    if (check("=")) {
      Node init = open(NodeKind::Initializer);
      init.children.push_back(leaf());
      init.children.push_back(expression());
      n.children.push_back(close(std::move(init)));
    }
    n.children.push_back(expect(";"));
    return close(std::move(n));
  }

  // --- statements ----------------------------------------------------------

  Node block() {
    Node n = open(NodeKind::Block);
    n.children.push_back(expect("{"));
    while (!check("}")) {
      if (at_end()) fail("'}'");
      n.children.push_back(statement());
    }
    n.children.push_back(leaf());
    return close(std::move(n));
  }

  Node statement() {
    if (starts_type()) return var_decl();
    if (check("{")) return block();
    if (check("return")) {
      Node n = open(NodeKind::ReturnStmt);
      n.children.push_back(leaf());
      if (!check(";")) n.children.push_back(expression());
      n.children.push_back(expect(";"));
      return close(std::move(n));
    }
    if (check("if")) {
      Node n = open(NodeKind::IfStmt);
      n.children.push_back(leaf());
      n.children.push_back(expect("("));
      n.children.push_back(expression());
      n.children.push_back(expect(")"));
      n.children.push_back(statement());
      if (check("else")) {
        Node e = open(NodeKind::ElseClause);
        e.children.push_back(leaf());
        e.children.push_back(statement());
        n.children.push_back(close(std::move(e)));
      }
      return close(std::move(n));
    }
    if (check("while")) {
      Node n = open(NodeKind::WhileStmt);
      n.children.push_back(leaf());
      n.children.push_back(expect("("));
      n.children.push_back(expression());
      n.children.push_back(expect(")"));
      n.children.push_back(statement());
      return close(std::move(n));
    }
    if (check("goto")) {
      Node n = open(NodeKind::GotoStmt);
      n.children.push_back(leaf());
      n.children.push_back(expect_ident());
      n.children.push_back(expect(";"));
      return close(std::move(n));
    }
    if (check_ident() && check(":", 1)) {
      Node n = open(NodeKind::LabeledStmt);
      n.children.push_back(leaf());
      n.children.push_back(leaf());
      n.children.push_back(statement());
      return close(std::move(n));
    }
    Node n = open(NodeKind::ExprStmt);
    if (!check(";")) n.children.push_back(expression());
    n.children.push_back(expect(";"));
    return close(std::move(n));
  }

  // --- expressions ---------------------------------------------------------

  Node expression() { return assignment(); }

  Node binary(Node lhs, NodeKind kind = NodeKind::BinaryExpr) {
    Node n = open(kind);
    n.first_token = lhs.first_token;
    n.children.push_back(std::move(lhs));
    n.children.push_back(leaf());
    return n;
  }

  Node assignment() {
    Node lhs = equality();
    if (!check("=")) return lhs;
    Node n = binary(std::move(lhs));
    n.children.push_back(assignment());
    return close(std::move(n));
  }

  Node equality() {
    Node lhs = relational();
    while (check("==")) {
      Node n = binary(std::move(lhs));
      n.children.push_back(relational());
      lhs = close(std::move(n));
    }
    return lhs;
  }

  Node relational() {
    Node lhs = additive();
    while (check("<")) {
      Node n = binary(std::move(lhs));
      n.children.push_back(additive());
      lhs = close(std::move(n));
    }
    return lhs;
  }

  Node additive() {
    Node lhs = multiplicative();
    while (check("+") || check("-")) {
      Node n = binary(std::move(lhs));
      n.children.push_back(multiplicative());
      lhs = close(std::move(n));
    }
    return lhs;
  }

  Node multiplicative() {
    Node lhs = unary();
    while (check("*") || check("/")) {
      Node n = binary(std::move(lhs));
      n.children.push_back(unary());
      lhs = close(std::move(n));
    }
    return lhs;
  }

  Node unary() {
    if (check("&") || check("*")) {
      Node n = open(NodeKind::UnaryExpr);
      n.children.push_back(leaf());
      n.children.push_back(unary());
      return close(std::move(n));
    }
    if (check("(") && starts_type(1)) {
      Node n = open(NodeKind::CastExpr);
      n.children.push_back(leaf());
      n.children.push_back(type());
      n.children.push_back(expect(")"));
      n.children.push_back(unary());
      return close(std::move(n));
    }
    return primary();
  }

  Node primary() {
    if (at_end()) fail("expression");
    const Token& t = *peek();
    if (t.kind == TokenKind::IntegerLiteral) {
      Node n = open(NodeKind::IntLit);
      n.children.push_back(leaf());
      return close(std::move(n));
    }
    if (t.is("print")) {
      Node n = open(NodeKind::PrintExpr);
      n.children.push_back(leaf());
      n.children.push_back(expect("("));
      n.children.push_back(expression());
      n.children.push_back(expect(")"));
      return close(std::move(n));
    }
    if (t.kind == TokenKind::Identifier) {
      if (check("(", 1)) {
        Node n = open(NodeKind::CallExpr);
        n.children.push_back(leaf());
        n.children.push_back(leaf());
        if (!check(")")) {
          Node args = open(NodeKind::ArgList);
          args.children.push_back(expression());
          while (check(",")) {
            args.children.push_back(leaf());
            args.children.push_back(expression());
          }
          n.children.push_back(close(std::move(args)));
        }
        n.children.push_back(expect(")"));
        return close(std::move(n));
      }
      Node n = open(NodeKind::NameExpr);
      n.children.push_back(leaf());
      return close(std::move(n));
    }
    if (t.is("(")) {
      Node n = open(NodeKind::ParenExpr);
      n.children.push_back(leaf());
      n.children.push_back(expression());
      n.children.push_back(expect(")"));
      return close(std::move(n));
    }
    fail("expression");
  }
};

}  // namespace

SyntaxTree parse(const std::vector<Token>& tokens, std::string source) {
  std::size_t size = source.size();
  if (size == 0 && !tokens.empty()) size = tokens.back().span.end;
  Parser p(tokens, size);
  Node root = p.program();
  return SyntaxTree(std::move(root), std::move(source), p.next_id());
}

SyntaxTree parse_source(std::string_view source) {
  return parse(lex(source), std::string(source));
}

}  // namespace drr::frontend
