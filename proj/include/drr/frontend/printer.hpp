#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "drr/frontend/syntax.hpp"

namespace drr::frontend {

/// Canonical text of a subtree: tokens separated by single spaces, no
/// space inside parentheses or before `;` `,` `:`, type stars and unary
/// operators attached, newline after `;` and `}`.
std::string print(const Node& node);
std::string print(const SyntaxTree& tree);

/// Number of lexical tokens (comments and whitespace excluded).
std::size_t count_tokens(const SyntaxTree& tree);
std::size_t count_tokens(std::string_view text);

}  // namespace drr::frontend
