#include "drr/frontend/interpreter.hpp"

#include <map>
#include <stdexcept>
#include <vector>

#include "drr/frontend/sema.hpp"

namespace drr::frontend {

namespace {

struct RuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Flow { Normal, Return, Goto };

std::int64_t wrap(std::uint64_t v) { return static_cast<std::int64_t>(v); }

class Machine {
 public:
  Machine(const SyntaxTree& tree, const Analysis& analysis, const RunLimits& limits)
      : tree_(tree), analysis_(analysis), limits_(limits) {
    index(tree.root());
  }

  std::int64_t run() {
    const Node* main_fn = nullptr;
    for (const auto& decl : tree_.root().children) {
      if (decl.kind == NodeKind::VarDecl) {
        std::size_t addr = allocate();
        globals_[decl.id] = addr;
        if (auto* init = decl.find_child(NodeKind::Initializer))
          store(addr, eval(init->children.at(1)));
      }
      if (decl.kind == NodeKind::FuncDef && decl.name() == "main") main_fn = &decl;
    }
    if (!main_fn) throw RuntimeError("no main function");
    std::vector<std::int64_t> args(param_count(*main_fn), 0);
    return call(*main_fn, args);
  }

  std::string output;

 private:
  const SyntaxTree& tree_;
  const Analysis& analysis_;
  RunLimits limits_;
  std::map<NodeId, const Node*> nodes_;
  std::vector<std::int64_t> memory_;
  std::map<NodeId, std::size_t> globals_;
  std::vector<std::map<NodeId, std::size_t>> frames_;
  std::uint64_t steps_ = 0;
  std::int64_t return_value_ = 0;
  std::string pending_label_;

  void index(const Node& n) {
    nodes_[n.id] = &n;
    for (const auto& c : n.children)
      if (!c.is_token()) index(c);
  }

  void tick() {
    if (++steps_ > limits_.max_steps) throw RuntimeError("step limit exceeded");
  }

  std::size_t allocate() {
    memory_.push_back(0);
    return memory_.size();  // addresses start at 1
  }

  std::int64_t load(std::int64_t addr) const {
    if (addr <= 0 || static_cast<std::uint64_t>(addr) > memory_.size())
      throw RuntimeError("invalid memory read at address " + std::to_string(addr));
    return memory_[static_cast<std::size_t>(addr) - 1];
  }

  void store(std::int64_t addr, std::int64_t value) {
    if (addr <= 0 || static_cast<std::uint64_t>(addr) > memory_.size())
      throw RuntimeError("invalid memory write at address " + std::to_string(addr));
    memory_[static_cast<std::size_t>(addr) - 1] = value;
  }

  const Node& declaration_of(const Node& use) const {
    auto it = analysis_.bindings.find(use.id);
    if (it == analysis_.bindings.end()) throw RuntimeError("unbound use");
    return *nodes_.at(it->second.declaration);
  }

  std::size_t address_of_declaration(NodeId decl) const {
    if (!frames_.empty()) {
      auto it = frames_.back().find(decl);
      if (it != frames_.back().end()) return it->second;
    }
    auto it = globals_.find(decl);
    if (it == globals_.end()) throw RuntimeError("variable used before initialization");
    return it->second;
  }

  static std::size_t param_count(const Node& fn) {
    std::size_t n = 0;
    if (auto* params = fn.find_child(NodeKind::ParamList))
      for (const auto& p : params->children)
        if (p.kind == NodeKind::Param) ++n;
    return n;
  }

  static void collect_locals(const Node& n, std::vector<NodeId>& out) {
    if (n.kind == NodeKind::VarDecl) out.push_back(n.id);
    for (const auto& c : n.children)
      if (!c.is_token()) collect_locals(c, out);
  }

  std::int64_t call(const Node& fn, const std::vector<std::int64_t>& args) {
    if (frames_.size() >= limits_.max_call_depth) throw RuntimeError("call depth exceeded");
    std::size_t mark = memory_.size();
    std::map<NodeId, std::size_t> frame;
    std::size_t i = 0;
    if (auto* params = fn.find_child(NodeKind::ParamList))
      for (const auto& p : params->children)
        if (p.kind == NodeKind::Param) {
          frame[p.id] = allocate();
          memory_.back() = args.at(i++);
        }
    const Node& body = *fn.find_child(NodeKind::Block);
    std::vector<NodeId> locals;
    collect_locals(body, locals);
    for (auto id : locals) frame[id] = allocate();
    frames_.push_back(std::move(frame));

    return_value_ = 0;
    Flow flow = exec(body);
    while (flow == Flow::Goto) flow = exec_from(body, pending_label_);
    std::int64_t result = flow == Flow::Return ? return_value_ : 0;

    frames_.pop_back();
    memory_.resize(mark);
    return result;
  }

  // --- statements ----------------------------------------------------------

  static bool contains_label(const Node& n, const std::string& label) {
    if (n.kind == NodeKind::LabeledStmt && n.name() == label) return true;
    for (const auto& c : n.children)
      if (!c.is_token() && contains_label(c, label)) return true;
    return false;
  }

  Flow exec(const Node& s) {
    tick();
    switch (s.kind) {
      case NodeKind::VarDecl: {
        std::size_t addr = address_of_declaration(s.id);
        auto* init = s.find_child(NodeKind::Initializer);
        store(static_cast<std::int64_t>(addr), init ? eval(init->children.at(1)) : 0);
        return Flow::Normal;
      }
      case NodeKind::Block:
        for (const auto& c : s.children) {
          if (c.is_token()) continue;
          Flow f = exec(c);
          if (f != Flow::Normal) return f;
        }
        return Flow::Normal;
      case NodeKind::ExprStmt:
        if (!s.children.front().is_token()) eval(s.children.front());
        return Flow::Normal;
      case NodeKind::ReturnStmt:
        return_value_ = s.children.size() == 3 ? eval(s.children[1]) : 0;
        return Flow::Return;
      case NodeKind::IfStmt:
        if (eval(s.children.at(2)) != 0) return exec(s.children.at(4));
        if (auto* e = s.find_child(NodeKind::ElseClause)) return exec(e->children.at(1));
        return Flow::Normal;
      case NodeKind::WhileStmt:
        while (eval(s.children.at(2)) != 0) {
          Flow f = exec(s.children.at(4));
          if (f != Flow::Normal) return f;
        }
        return Flow::Normal;
      case NodeKind::GotoStmt:
        pending_label_ = std::string(s.name());
        return Flow::Goto;
      case NodeKind::LabeledStmt:
        return exec(s.children.at(2));
      default:
        throw RuntimeError("unexpected statement");
    }
  }

  /// Resumes execution at `label`, which lies inside `s`.
  Flow exec_from(const Node& s, const std::string& label) {
    tick();
    switch (s.kind) {
      case NodeKind::LabeledStmt:
        if (s.name() == label) return exec(s.children.at(2));
        return exec_from(s.children.at(2), label);
      case NodeKind::Block: {
        bool found = false;
        for (const auto& c : s.children) {
          if (c.is_token()) continue;
          Flow f = Flow::Normal;
          if (found) {
            f = exec(c);
          } else if (contains_label(c, label)) {
            found = true;
            f = exec_from(c, label);
          }
          if (f != Flow::Normal) return f;
        }
        return Flow::Normal;
      }
      case NodeKind::IfStmt: {
        if (contains_label(s.children.at(4), label)) return exec_from(s.children.at(4), label);
        return exec_from(s.find_child(NodeKind::ElseClause)->children.at(1), label);
      }
      case NodeKind::WhileStmt: {
        Flow f = exec_from(s.children.at(4), label);
        if (f != Flow::Normal) return f;
        return exec(s);
      }
      default:
        throw RuntimeError("label not reachable");
    }
  }

  // --- expressions ---------------------------------------------------------

  std::int64_t address(const Node& e) {
    switch (e.kind) {
      case NodeKind::NameExpr:
        return static_cast<std::int64_t>(address_of_declaration(declaration_of(e).id));
      case NodeKind::UnaryExpr:
        return eval(e.children.at(1));
      case NodeKind::ParenExpr:
        return address(e.children.at(1));
      default:
        throw RuntimeError("not an lvalue");
    }
  }

  std::int64_t eval(const Node& e) {
    tick();
    switch (e.kind) {
      case NodeKind::IntLit:
        return std::stoll(e.children.at(0).token.lexeme);
      case NodeKind::NameExpr: {
        const Node& decl = declaration_of(e);
        if (decl.kind == NodeKind::FuncDef || decl.kind == NodeKind::FuncForwardDecl)
          return -static_cast<std::int64_t>(decl.id);  // opaque function designator
        return load(static_cast<std::int64_t>(address_of_declaration(decl.id)));
      }
      case NodeKind::CallExpr: {
        std::vector<std::int64_t> args;
        if (auto* list = e.find_child(NodeKind::ArgList))
          for (const auto& a : list->children)
            if (!a.is_token()) args.push_back(eval(a));
        const Node& fn = declaration_of(e);
        if (fn.kind != NodeKind::FuncDef) throw RuntimeError("call to undefined function");
        return call(fn, args);
      }
      case NodeKind::PrintExpr:
        output += std::to_string(eval(e.children.at(2)));
        output.push_back('\n');
        return 0;
      case NodeKind::UnaryExpr:
        if (e.children.at(0).is_token("&")) return address(e.children.at(1));
        return load(eval(e.children.at(1)));
      case NodeKind::CastExpr:
        return eval(e.children.at(3));
      case NodeKind::ParenExpr:
        return eval(e.children.at(1));
      case NodeKind::BinaryExpr: return binary(e);
      default:
        throw RuntimeError("unexpected expression");
    }
  }

  std::int64_t binary(const Node& e) {
    const std::string& op = e.children.at(1).token.lexeme;
    if (op == "=") {
      std::int64_t addr = address(e.children.at(0));
      std::int64_t v = eval(e.children.at(2));
      store(addr, v);
      return v;
    }
    std::int64_t a = eval(e.children.at(0));
    std::int64_t b = eval(e.children.at(2));
    auto ua = static_cast<std::uint64_t>(a);
    auto ub = static_cast<std::uint64_t>(b);
    if (op == "+") return wrap(ua + ub);
    if (op == "-") return wrap(ua - ub);
    if (op == "*") return wrap(ua * ub);
    if (op == "/") {
      if (b == 0) throw RuntimeError("division by zero");
      if (b == -1) return wrap(0 - ua);
      return a / b;
    }
    if (op == "<") return a < b ? 1 : 0;
    if (op == "==") return a == b ? 1 : 0;
    throw RuntimeError("unknown operator " + op);
  }
};

}  // namespace

RunResult run_program(const SyntaxTree& tree, const RunLimits& limits) {
  RunResult result;
  Analysis analysis = analyze(tree);
  if (!analysis.ok()) {
    for (const auto& d : analysis.diagnostics)
      if (d.severity == Severity::Error) {
        result.error = "compile error: " + d.message;
        break;
      }
    return result;
  }
  Machine m(tree, analysis, limits);
  try {
    result.exit_value = m.run();
    result.ok = true;
  } catch (const RuntimeError& e) {
    result.error = std::string("runtime error: ") + e.what();
  }
  result.output = std::move(m.output);
  return result;
}

}  // namespace drr::frontend
