#pragma once

#include <string_view>
#include <vector>

#include "drr/frontend/syntax.hpp"

namespace drr::frontend {

/// Builds the parse tree for a token sequence produced by lex(). `source`
/// is kept as the tree's text. Throws ParseError at the first token that
/// does not fit the grammar (or at end of input).
SyntaxTree parse(const std::vector<Token>& tokens, std::string source = {});

/// lex + parse.
SyntaxTree parse_source(std::string_view source);

}  // namespace drr::frontend
