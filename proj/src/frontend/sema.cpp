#include "drr/frontend/sema.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>

namespace drr::frontend {

const char* to_string(BindingKind kind) {
  switch (kind) {
    case BindingKind::Name: return "name";
    case BindingKind::Call: return "call";
    case BindingKind::TypeRef: return "type-ref";
    case BindingKind::Goto: return "goto";
    case BindingKind::Forward: return "forward";
  }
  return "?";
}

bool Analysis::ok() const { return error_count() == 0; }

std::size_t Analysis::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(),
                    [](const Diagnostic& d) { return d.severity == Severity::Error; }));
}

namespace {

struct Signature {
  MicroCType result;
  std::vector<MicroCType> params;

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct FunctionInfo {
  const Node* forward = nullptr;
  const Node* definition = nullptr;
};

enum class SymbolKind { Variable, Function };

struct Symbol {
  SymbolKind kind;
  const Node* declaration;  // VarDecl, Param, FuncDef or FuncForwardDecl
  MicroCType type;
};

struct ExprInfo {
  MicroCType type;
  bool lvalue = false;
};

class Checker {
 public:
  explicit Checker(const SyntaxTree& tree) : tree_(tree) {}

  Analysis run() {
    collect_functions();
    scopes_.emplace_back();  // global scope
    for (const auto& decl : tree_.root().children) top_decl(decl);
    for (const auto& [name, info] : functions_) {
      if (info.forward && !info.definition)
        error("forward declaration of '" + name + "' has no definition", info.forward->span());
    }
    return std::move(out_);
  }

 private:
  const SyntaxTree& tree_;
  Analysis out_;
  std::map<std::string, FunctionInfo, std::less<>> functions_;
  std::map<std::string, const Node*, std::less<>> structs_;
  std::vector<std::map<std::string, Symbol, std::less<>>> scopes_;
  std::set<std::string, std::less<>> labels_;
  std::optional<MicroCType> return_type_;

  void error(std::string message, Span span) {
    out_.diagnostics.push_back({Severity::Error, std::move(message), span});
  }

  void bind(const Node& use, BindingKind kind, const Node& decl) {
    out_.bindings[use.id] = Binding{kind, decl.id};
  }

  // --- declarations --------------------------------------------------------

  static Signature signature_of(const Node& fn) {
    Signature sig;
    sig.result = type_of(fn.children.at(0));
    if (auto* params = fn.find_child(NodeKind::ParamList))
      for (const auto& p : params->children)
        if (p.kind == NodeKind::Param) sig.params.push_back(type_of(p.children.at(0)));
    return sig;
  }

  void collect_functions() {
    for (const auto& decl : tree_.root().children) {
      if (decl.kind != NodeKind::FuncDef && decl.kind != NodeKind::FuncForwardDecl) continue;
      auto& info = functions_[std::string(decl.name())];
      auto& slot = decl.kind == NodeKind::FuncDef ? info.definition : info.forward;
      if (slot) {
        error(std::string(decl.kind == NodeKind::FuncDef ? "redefinition" : "redeclaration") +
                  " of function '" + std::string(decl.name()) + "'",
              decl.span());
        continue;
      }
      slot = &decl;
    }
    for (auto& [name, info] : functions_) {
      if (info.forward && info.definition &&
          !(signature_of(*info.forward) == signature_of(*info.definition)))
        error("forward declaration of '" + name + "' does not match its definition",
              info.forward->span());
    }
  }

  /// Checks that a Type node names something that exists; returns its type.
  MicroCType resolve_type(const Node& type_node, bool allow_bare_void) {
    MicroCType t = type_of(type_node);
    if (t.base == MicroCType::Base::Struct) {
      auto it = structs_.find(t.struct_name);
      if (it == structs_.end())
        error("unknown struct '" + t.struct_name + "'", type_node.span());
      else
        bind(type_node, BindingKind::TypeRef, *it->second);
    }
    if (t.is_bare_void() && !allow_bare_void)
      error("'void' is only valid as a return type", type_node.span());
    return t;
  }

  const Symbol* lookup(std::string_view name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto hit = it->find(name);
      if (hit != it->end()) return &hit->second;
    }
    return nullptr;
  }

  void declare(std::string_view name, Symbol sym, Span span) {
    auto& scope = scopes_.back();
    auto [it, inserted] = scope.emplace(std::string(name), sym);
    if (inserted) return;
    // A function may be declared forward and then defined.
    if (it->second.kind == SymbolKind::Function && sym.kind == SymbolKind::Function) {
      if (sym.declaration->kind == NodeKind::FuncDef) it->second = sym;
      return;
    }
    error("redeclaration of '" + std::string(name) + "'", span);
  }

  void top_decl(const Node& decl) {
    switch (decl.kind) {
      case NodeKind::StructDecl: struct_decl(decl); break;
      case NodeKind::VarDecl: var_decl(decl); break;
      case NodeKind::FuncForwardDecl: function(decl, false); break;
      case NodeKind::FuncDef: function(decl, true); break;
      default: error("unexpected top-level node", decl.span()); break;
    }
  }

  void struct_decl(const Node& decl) {
    std::string name(decl.name());
    if (structs_.count(name)) {
      error("redefinition of struct '" + name + "'", decl.span());
      return;
    }
    structs_.emplace(name, &decl);
    std::set<std::string, std::less<>> fields;
    for (const auto& c : decl.children) {
      if (c.kind != NodeKind::VarDecl) continue;
      resolve_type(c.children.at(0), false);
      if (!fields.emplace(c.name()).second)
        error("duplicate field '" + std::string(c.name()) + "'", c.span());
      if (c.find_child(NodeKind::Initializer))
        error("field '" + std::string(c.name()) + "' cannot have an initializer", c.span());
    }
  }

  void var_decl(const Node& decl) {
    MicroCType t = resolve_type(decl.children.at(0), false);
    if (auto* init = decl.find_child(NodeKind::Initializer)) {
      auto rhs = expression(init->children.at(1));
      if (rhs && !t.is_bare_void()) require_assignable(t, rhs->type, init->children.at(1).span());
    }
    declare(decl.name(), Symbol{SymbolKind::Variable, &decl, t}, decl.span());
  }

  void function(const Node& fn, bool is_definition) {
    MicroCType result = resolve_type(fn.children.at(0), true);
    declare(fn.name(), Symbol{SymbolKind::Function, &fn, MicroCType::void_type(3)}, fn.span());

    const auto& info = functions_.at(std::string(fn.name()));
    if (!is_definition) {
      if (info.definition) bind(fn, BindingKind::Forward, *info.definition);
      else return;  // reported once all declarations are seen
    }

    scopes_.emplace_back();
    if (auto* params = fn.find_child(NodeKind::ParamList)) {
      for (const auto& p : params->children) {
        if (p.kind != NodeKind::Param) continue;
        MicroCType pt = resolve_type(p.children.at(0), false);
        if (is_definition) declare(p.name(), Symbol{SymbolKind::Variable, &p, pt}, p.span());
      }
    }
    if (is_definition) {
      labels_.clear();
      collect_labels(*fn.find_child(NodeKind::Block));
      return_type_ = result;
      statement(*fn.find_child(NodeKind::Block));
      return_type_.reset();
    }
    scopes_.pop_back();
  }

  void collect_labels(const Node& n) {
    if (n.kind == NodeKind::LabeledStmt && !labels_.emplace(n.name()).second)
      error("duplicate label '" + std::string(n.name()) + "'", n.span());
    for (const auto& c : n.children)
      if (!c.is_token()) collect_labels(c);
  }

  const Node* find_label(const Node& n, std::string_view name) const {
    if (n.kind == NodeKind::LabeledStmt && n.name() == name) return &n;
    for (const auto& c : n.children)
      if (!c.is_token())
        if (auto* hit = find_label(c, name)) return hit;
    return nullptr;
  }

  const Node* enclosing_function(NodeId id) const {
    for (auto* n : tree_.path_to(id))
      if (n->kind == NodeKind::FuncDef) return n;
    return nullptr;
  }

  // --- statements ----------------------------------------------------------

  void statement(const Node& s) {
    switch (s.kind) {
      case NodeKind::VarDecl:
        var_decl(s);
        break;
      case NodeKind::Block:
        scopes_.emplace_back();
        for (const auto& c : s.children)
          if (!c.is_token()) statement(c);
        scopes_.pop_back();
        break;
      case NodeKind::ExprStmt:
        if (!s.children.front().is_token()) expression(s.children.front());
        break;
      case NodeKind::ReturnStmt: {
        const Node* value = s.children.size() == 3 ? &s.children[1] : nullptr;
        if (value) {
          auto v = expression(*value);
          if (return_type_ && return_type_->is_bare_void())
            error("void function returns a value", s.span());
          else if (v && return_type_)
            require_assignable(*return_type_, v->type, value->span());
        } else if (return_type_ && !return_type_->is_bare_void()) {
          error("non-void function must return a value", s.span());
        }
        break;
      }
      case NodeKind::IfStmt:
        condition(s.children.at(2));
        nested_statement(s.children.at(4));
        if (auto* e = s.find_child(NodeKind::ElseClause)) nested_statement(e->children.at(1));
        break;
      case NodeKind::WhileStmt:
        condition(s.children.at(2));
        nested_statement(s.children.at(4));
        break;
      case NodeKind::GotoStmt: {
        std::string_view label = s.name();
        if (!labels_.count(label)) {
          error("unknown label '" + std::string(label) + "'", s.span());
          break;
        }
        if (auto* fn = enclosing_function(s.id))
          if (auto* target = find_label(*fn, label)) bind(s, BindingKind::Goto, *target);
        break;
      }
      case NodeKind::LabeledStmt:
        statement(s.children.at(2));
        break;
      default:
        error("unexpected statement", s.span());
        break;
    }
  }

  /// Statements in their own scope so declarations do not leak.
  void nested_statement(const Node& s) {
    if (s.kind == NodeKind::VarDecl) {
      scopes_.emplace_back();
      statement(s);
      scopes_.pop_back();
    } else {
      statement(s);
    }
  }

  void condition(const Node& e) {
    auto c = expression(e);
    if (c && !(c->type.is_int() || c->type.is_pointer()))
      error("condition must have integer or pointer type", e.span());
  }

  // --- expressions ---------------------------------------------------------

  void require_assignable(const MicroCType& target, const MicroCType& value, Span span) {
    if (value.is_bare_void()) {
      error("void value used where " + to_string(target) + " is expected", span);
      return;
    }
    if (!(target == value))
      error("cannot assign " + to_string(value) + " to " + to_string(target), span);
  }

  std::optional<ExprInfo> expression(const Node& e) {
    switch (e.kind) {
      case NodeKind::IntLit: {
        const auto& text = e.children.at(0).token.lexeme;
        long long v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size())
          error("integer literal out of range", e.span());
        return ExprInfo{MicroCType::integer(), false};
      }
      case NodeKind::NameExpr: {
        auto* sym = lookup(e.name());
        if (!sym) {
          error("unresolved identifier '" + std::string(e.name()) + "'", e.span());
          return std::nullopt;
        }
        if (sym->kind == SymbolKind::Function) {
          const auto& info = functions_.at(std::string(e.name()));
          bind(e, BindingKind::Name, info.definition ? *info.definition : *sym->declaration);
          return ExprInfo{MicroCType::void_type(3), false};
        }
        bind(e, BindingKind::Name, *sym->declaration);
        return ExprInfo{sym->type, true};
      }
      case NodeKind::CallExpr: return call(e);
      case NodeKind::PrintExpr: {
        auto v = expression(e.children.at(2));
        if (v && v->type.is_bare_void()) error("cannot print a void value", e.span());
        return ExprInfo{MicroCType::void_type(), false};
      }
      case NodeKind::UnaryExpr: {
        auto v = expression(e.children.at(1));
        if (!v) return std::nullopt;
        if (e.children.at(0).is_token("&")) {
          if (!v->lvalue) {
            error("cannot take the address of an rvalue", e.span());
            return std::nullopt;
          }
          return ExprInfo{v->type.pointer_to(), false};
        }
        if (!v->type.is_pointer()) {
          error("cannot dereference non-pointer type " + to_string(v->type), e.span());
          return std::nullopt;
        }
        auto pointee = v->type.pointee();
        if (pointee.is_bare_void()) {
          error("cannot dereference a void pointer", e.span());
          return std::nullopt;
        }
        return ExprInfo{pointee, true};
      }
      case NodeKind::BinaryExpr: return binary(e);
      case NodeKind::CastExpr: {
        MicroCType target = resolve_type(e.children.at(1), false);
        auto v = expression(e.children.at(3));
        if (v && v->type.is_bare_void()) error("cannot cast a void value", e.span());
        return ExprInfo{target, false};
      }
      case NodeKind::ParenExpr: return expression(e.children.at(1));
      default:
        error("unexpected expression", e.span());
        return std::nullopt;
    }
  }

  std::optional<ExprInfo> call(const Node& e) {
    std::string_view name = e.name();
    auto* sym = lookup(name);
    if (!sym) {
      error("unresolved function '" + std::string(name) + "'", e.span());
      check_args(e, nullptr);
      return std::nullopt;
    }
    if (sym->kind != SymbolKind::Function) {
      error("'" + std::string(name) + "' is not a function", e.span());
      check_args(e, nullptr);
      return std::nullopt;
    }
    const auto& info = functions_.at(std::string(name));
    const Node& target = info.definition ? *info.definition : *sym->declaration;
    bind(e, BindingKind::Call, target);
    Signature sig = signature_of(target);
    check_args(e, &sig);
    return ExprInfo{sig.result, false};
  }

  void check_args(const Node& call_node, const Signature* sig) {
    std::vector<const Node*> args;
    if (auto* list = call_node.find_child(NodeKind::ArgList))
      for (const auto& a : list->children)
        if (!a.is_token()) args.push_back(&a);
    std::vector<std::optional<ExprInfo>> infos;
    for (auto* a : args) infos.push_back(expression(*a));
    if (!sig) return;
    if (args.size() != sig->params.size()) {
      error("arity mismatch: '" + std::string(call_node.name()) + "' expects " +
                std::to_string(sig->params.size()) + " argument(s), got " +
                std::to_string(args.size()),
            call_node.span());
      return;
    }
    for (std::size_t i = 0; i < args.size(); ++i)
      if (infos[i]) require_assignable(sig->params[i], infos[i]->type, args[i]->span());
  }

  std::optional<ExprInfo> binary(const Node& e) {
    const std::string& op = e.children.at(1).token.lexeme;
    auto lhs = expression(e.children.at(0));
    auto rhs = expression(e.children.at(2));
    if (op == "=") {
      if (!lhs || !rhs) return std::nullopt;
      if (!lhs->lvalue) {
        error("left side of assignment is not assignable", e.children.at(0).span());
        return std::nullopt;
      }
      require_assignable(lhs->type, rhs->type, e.children.at(2).span());
      return ExprInfo{lhs->type, false};
    }
    if (!lhs || !rhs) return ExprInfo{MicroCType::integer(), false};
    if (op == "==") {
      if (lhs->type.is_bare_void() || !(lhs->type == rhs->type))
        error("cannot compare " + to_string(lhs->type) + " with " + to_string(rhs->type),
              e.span());
      return ExprInfo{MicroCType::integer(), false};
    }
    if (!lhs->type.is_int() || !rhs->type.is_int())
      error("operator '" + op + "' requires int operands", e.span());
    return ExprInfo{MicroCType::integer(), false};
  }
};

}  // namespace

Analysis analyze(const SyntaxTree& tree) { return Checker(tree).run(); }

std::vector<Diagnostic> typecheck(const SyntaxTree& tree) { return analyze(tree).diagnostics; }

bool compiles(const SyntaxTree& tree) { return analyze(tree).ok(); }

}  // namespace drr::frontend
