#include "drr/frontend/printer.hpp"

#include <vector>

namespace drr::frontend {

namespace {

struct Emitted {
  const Token* token;
  bool glue = false;  // never preceded by a space
};

class Collector {
 public:
  std::vector<Emitted> out;

  void walk(const Node& n) {
    if (n.is_token()) {
      out.push_back({&n.token, glue_next_});
      glue_next_ = false;
      return;
    }
    switch (n.kind) {
      case NodeKind::Type:
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          if (n.children[i].is_token("*")) glue_next_ = true;
          walk(n.children[i]);
        }
        return;
      case NodeKind::UnaryExpr:
        walk(n.children.at(0));
        glue_next_ = true;
        walk(n.children.at(1));
        return;
      case NodeKind::CastExpr:
        for (std::size_t i = 0; i < 3; ++i) walk(n.children.at(i));
        glue_next_ = true;
        walk(n.children.at(3));
        return;
      default:
        for (const auto& c : n.children) walk(c);
        return;
    }
  }

 private:
  bool glue_next_ = false;
};

bool closes_line(const std::vector<Emitted>& toks, std::size_t i) {
  const auto& lex = toks[i].token->lexeme;
  if (lex == ";") return true;
  if (lex != "}") return false;
  if (i + 1 < toks.size()) {
    const auto& next = toks[i + 1].token->lexeme;
    if (next == ";" || next == "else") return false;
  }
  return true;
}

}  // namespace

std::string print(const Node& node) {
  Collector c;
  c.walk(node);
  const auto& toks = c.out;
  std::string text;
  bool line_start = true;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = *toks[i].token;
    if (!line_start) {
      bool space = true;
      const Token& prev = *toks[i - 1].token;
      if (toks[i].glue) space = false;
      else if (t.lexeme == ";" || t.lexeme == "," || t.lexeme == ")" || t.lexeme == ":")
        space = false;
      else if (prev.lexeme == "(")
        space = false;
      else if (t.lexeme == "(" &&
               (prev.kind == TokenKind::Identifier || prev.lexeme == "print"))
        space = false;
      if (space) text.push_back(' ');
    }
    text += t.lexeme;
    line_start = closes_line(toks, i);
    if (line_start) text.push_back('\n');
  }
  return text;
}

std::string print(const SyntaxTree& tree) { return print(tree.root()); }

std::size_t count_tokens(const SyntaxTree& tree) { return tree.tokens().size(); }

std::size_t count_tokens(std::string_view text) { return lex(text).size(); }

}  // namespace drr::frontend
