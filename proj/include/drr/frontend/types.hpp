#pragma once

#include <string>

#include "drr/frontend/syntax.hpp"

namespace drr::frontend {

struct MicroCType {
  enum class Base { Int, Void, Struct };

  Base base = Base::Int;
  std::string struct_name;  // set when base == Struct
  int pointer_depth = 0;

  static MicroCType integer(int depth = 0) { return {Base::Int, {}, depth}; }
  static MicroCType void_type(int depth = 0) { return {Base::Void, {}, depth}; }
  static MicroCType struct_type(std::string name, int depth = 0) {
    return {Base::Struct, std::move(name), depth};
  }

  bool is_bare_void() const { return base == Base::Void && pointer_depth == 0; }
  bool is_int() const { return base == Base::Int && pointer_depth == 0; }
  bool is_pointer() const { return pointer_depth > 0; }

  MicroCType pointer_to() const { return {base, struct_name, pointer_depth + 1}; }
  MicroCType pointee() const { return {base, struct_name, pointer_depth - 1}; }

  friend bool operator==(const MicroCType&, const MicroCType&) = default;
};

/// Canonical spelling, e.g. "struct S**".
std::string to_string(const MicroCType& type);

/// Reads a Type node.
MicroCType type_of(const Node& type_node);

/// Builds a Type node spelling `type`.
Node make_type_node(SyntaxTree& tree, const MicroCType& type);

}  // namespace drr::frontend
