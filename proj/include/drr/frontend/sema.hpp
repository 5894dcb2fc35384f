#pragma once

#include <map>
#include <string>
#include <vector>

#include "drr/frontend/syntax.hpp"
#include "drr/frontend/types.hpp"

namespace drr::frontend {

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  Span span;
};

/// How a use site refers to its declaration.
enum class BindingKind {
  Name,     // NameExpr -> VarDecl | Param | FuncDef
  Call,     // CallExpr -> FuncDef
  TypeRef,  // Type -> StructDecl
  Goto,     // GotoStmt -> LabeledStmt
  Forward,  // FuncForwardDecl -> FuncDef
};

const char* to_string(BindingKind kind);

struct Binding {
  BindingKind kind;
  NodeId declaration;
};

/// Result of name resolution and type checking.
struct Analysis {
  std::vector<Diagnostic> diagnostics;
  /// Use-site node id -> binding. Only resolved uses appear.
  std::map<NodeId, Binding> bindings;

  bool ok() const;
  std::size_t error_count() const;
};

Analysis analyze(const SyntaxTree& tree);

/// Diagnostics only; an empty error list means the program compiles.
std::vector<Diagnostic> typecheck(const SyntaxTree& tree);

/// True when typecheck() reports no errors.
bool compiles(const SyntaxTree& tree);

}  // namespace drr::frontend
