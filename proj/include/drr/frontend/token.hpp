#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "drr/error.hpp"

namespace drr::frontend {

enum class TokenKind { Keyword, Identifier, IntegerLiteral, Punctuator, Operator };

struct Token {
  TokenKind kind = TokenKind::Punctuator;
  std::string lexeme;
  Span span;

  bool is(std::string_view text) const {
    return lexeme == text && kind != TokenKind::Identifier;
  }

  friend bool operator==(const Token&, const Token&) = default;
};

const char* to_string(TokenKind kind);

/// Splits MicroC source into tokens. Whitespace and comments are skipped.
/// Throws LexError on bytes that start no token.
std::vector<Token> lex(std::string_view source);

/// True for the reserved words of MicroC.
bool is_keyword(std::string_view word);

}  // namespace drr::frontend
