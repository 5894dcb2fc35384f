#include "drr/frontend/token.hpp"

#include <array>
#include <cctype>

namespace drr::frontend {

namespace {

constexpr std::array<std::string_view, 9> kKeywords = {
    "int", "void", "struct", "return", "if", "else", "while", "goto", "print"};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::IntegerLiteral: return "integer-literal";
    case TokenKind::Punctuator: return "punctuator";
    case TokenKind::Operator: return "operator";
  }
  return "?";
}

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords)
    if (k == word) return true;
  return false;
}

std::vector<Token> lex(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = source.size();
  auto push = [&](TokenKind kind, std::size_t begin, std::size_t end) {
    tokens.push_back(Token{kind, std::string(source.substr(begin, end - begin)), {begin, end}});
  };

  while (i < n) {
    char c = source[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && source[i + 1] == '/') {
      while (i < n && source[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && source[i + 1] == '*') {
      auto close = source.find("*/", i + 2);
      if (close == std::string_view::npos) throw LexError("unterminated comment", {i, n});
      i = close + 2;
      continue;
    }
    std::size_t begin = i;
    if (ident_start(c)) {
      while (i < n && ident_char(source[i])) ++i;
      auto word = source.substr(begin, i - begin);
      push(is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, begin, i);
      continue;
    }
    if (digit(c)) {
      while (i < n && digit(source[i])) ++i;
      if (i < n && ident_char(source[i]))
        throw LexError("malformed integer literal", {begin, i + 1});
      push(TokenKind::IntegerLiteral, begin, i);
      continue;
    }
    if (c == '=' && i + 1 < n && source[i + 1] == '=') {
      i += 2;
      push(TokenKind::Operator, begin, i);
      continue;
    }
    switch (c) {
      case '(': case ')': case '{': case '}': case ';': case ',': case ':':
        ++i;
        push(TokenKind::Punctuator, begin, i);
        continue;
      case '+': case '-': case '*': case '/': case '<': case '=': case '&':
        ++i;
        push(TokenKind::Operator, begin, i);
        continue;
      default:
        break;
    }
    // Report the whole UTF-8 sequence when the offending byte starts one.
    std::size_t end = i + 1;
    while (end < n && (static_cast<unsigned char>(source[end]) & 0xC0) == 0x80) ++end;
    throw LexError("unexpected character '" + std::string(source.substr(i, end - i)) + "'",
                   {i, end});
  }
  return tokens;
}

}  // namespace drr::frontend
