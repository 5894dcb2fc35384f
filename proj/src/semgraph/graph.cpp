#include "drr/semgraph/graph.hpp"

#include <algorithm>
#include <functional>

namespace drr::semgraph {

using frontend::Node;
using frontend::NodeKind;
using frontend::SyntaxTree;

const char* to_string(SemanticKind kind) {
  switch (kind) {
    case SemanticKind::StructDecl: return "struct";
    case SemanticKind::Field: return "field";
    case SemanticKind::FunctionForwardDecl: return "fwd-decl";
    case SemanticKind::FunctionDef: return "function";
    case SemanticKind::GlobalVar: return "global-var";
    case SemanticKind::LocalVar: return "local-var";
    case SemanticKind::Parameter: return "param";
    case SemanticKind::ForwardParameter: return "fwd-param";
    case SemanticKind::Label: return "label";
    case SemanticKind::Statement: return "stmt";
    case SemanticKind::Argument: return "arg";
    case SemanticKind::ReturnType: return "return-type";
    case SemanticKind::Placeholder: return "placeholder";
  }
  return "?";
}

const char* to_string(GroupKind kind) {
  return kind == GroupKind::ParamArg ? "param-arg" : "fwddecl-def";
}

const SemanticNode* DependencyGraph::node(SemanticNodeId id) const {
  auto it = nodes.find(id);
  return it == nodes.end() ? nullptr : &it->second;
}

std::vector<const AssociatedGroup*> DependencyGraph::groups_of(SemanticNodeId id) const {
  std::vector<const AssociatedGroup*> out;
  for (const auto& g : groups)
    if (g.members.count(id)) out.push_back(&g);
  return out;
}

std::vector<const Edge*> DependencyGraph::edges_into(SemanticNodeId provider) const {
  std::vector<const Edge*> out;
  for (const auto& e : edges)
    if (e.provider == provider) out.push_back(&e);
  return out;
}

void DependencyGraph::check_invariants() const {
  for (const auto& [id, n] : nodes)
    if (!n.roles.any()) throw GraphError("node " + std::to_string(id) + " has no role");
  for (const auto& e : edges) {
    auto* u = node(e.user);
    auto* p = node(e.provider);
    if (!u || !p)
      throw GraphError("edge " + std::to_string(e.user) + "->" + std::to_string(e.provider) +
                       " references an absent node");
    if (!u->roles.user || !p->roles.provider)
      throw GraphError("edge " + std::to_string(e.user) + "->" + std::to_string(e.provider) +
                       " endpoints lack user/provider roles");
  }
  for (const auto& g : groups) {
    if (!g.members.count(g.representative))
      throw GraphError("group representative is not a member");
    for (auto m : g.members)
      if (!contains(m)) throw GraphError("group member " + std::to_string(m) + " is absent");
  }
}

namespace {

/// Position of every node of a tree.
class TreeIndex {
 public:
  explicit TreeIndex(const SyntaxTree& tree) {
    std::vector<NodeId> stack;
    std::function<void(const Node&)> walk = [&](const Node& n) {
      entries_[n.id] = Entry{&n, stack};
      stack.push_back(n.id);
      for (const auto& c : n.children) walk(c);
      stack.pop_back();
    };
    walk(tree.root());
  }

  struct Entry {
    const Node* node;
    std::vector<NodeId> ancestors;
  };

  const Entry* find(NodeId id) const {
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
  }
  const Node* node(NodeId id) const {
    auto* e = find(id);
    return e ? e->node : nullptr;
  }
  bool contains(NodeId id) const { return entries_.count(id) != 0; }

 private:
  std::map<NodeId, Entry> entries_;
};

SemanticNode make_node(const Node& n, SemanticKind kind, RoleSet roles) {
  SemanticNode s;
  s.id = n.id;
  s.kind = kind;
  s.roles = roles;
  s.name = std::string(n.name());
  return s;
}

constexpr RoleSet kProvider{true, false, false};
constexpr RoleSet kUser{false, true, false};
constexpr RoleSet kProviderUser{true, true, false};
constexpr RoleSet kConditioner{false, false, true};

std::vector<const Node*> params_of(const Node& fn) {
  std::vector<const Node*> out;
  if (auto* list = fn.find_child(NodeKind::ParamList))
    for (const auto& p : list->children)
      if (p.kind == NodeKind::Param) out.push_back(&p);
  return out;
}

std::vector<const Node*> args_of(const Node& call) {
  std::vector<const Node*> out;
  if (auto* list = call.find_child(NodeKind::ArgList))
    for (const auto& a : list->children)
      if (!a.is_token()) out.push_back(&a);
  return out;
}

class Builder {
 public:
  Builder(DependencyGraph& g) : g_(g) {}

  void enroll(const Node& n, SemanticKind kind, RoleSet roles,
              std::optional<MicroCType> type = std::nullopt) {
    auto s = make_node(n, kind, roles);
    s.type = std::move(type);
    g_.nodes[n.id] = std::move(s);
  }

  void top_level(const Node& decl) {
    switch (decl.kind) {
      case NodeKind::StructDecl:
        enroll(decl, SemanticKind::StructDecl, kProvider);
        g_.structs[std::string(decl.name())] = decl.id;
        for (const auto& f : decl.children)
          if (f.kind == NodeKind::VarDecl)
            enroll(f, SemanticKind::Field, kProvider, frontend::type_of(f.children.at(0)));
        break;
      case NodeKind::FuncForwardDecl:
        enroll(decl, SemanticKind::FunctionForwardDecl, kUser,
               frontend::type_of(decl.children.at(0)));
        enroll(decl.children.at(0), SemanticKind::ReturnType, kConditioner);
        for (auto* p : params_of(decl))
          enroll(*p, SemanticKind::ForwardParameter, kUser, frontend::type_of(p->children.at(0)));
        break;
      case NodeKind::FuncDef:
        enroll(decl, SemanticKind::FunctionDef, kProvider, frontend::type_of(decl.children.at(0)));
        enroll(decl.children.at(0), SemanticKind::ReturnType, kConditioner);
        for (auto* p : params_of(decl))
          enroll(*p, SemanticKind::Parameter, kProviderUser, frontend::type_of(p->children.at(0)));
        for (const auto& s : decl.find_child(NodeKind::Block)->children)
          if (!s.is_token()) statement(s);
        break;
      case NodeKind::VarDecl:
        enroll(decl, SemanticKind::GlobalVar, kProvider, frontend::type_of(decl.children.at(0)));
        break;
      default:
        break;
    }
  }

  void statement(const Node& s) {
    switch (s.kind) {
      case NodeKind::VarDecl:
        enroll(s, SemanticKind::LocalVar, kProviderUser, frontend::type_of(s.children.at(0)));
        return;
      case NodeKind::LabeledStmt:
        enroll(s, SemanticKind::Label, kProviderUser);
        statement(s.children.at(2));
        return;
      default:
        enroll(s, SemanticKind::Statement, kUser);
        break;
    }
    switch (s.kind) {
      case NodeKind::Block:
        for (const auto& c : s.children)
          if (!c.is_token()) statement(c);
        break;
      case NodeKind::IfStmt:
        statement(s.children.at(4));
        if (auto* e = s.find_child(NodeKind::ElseClause)) statement(e->children.at(1));
        break;
      case NodeKind::WhileStmt:
        statement(s.children.at(4));
        break;
      default:
        break;
    }
  }

  void arguments(const Node& n) {
    if (n.kind == NodeKind::CallExpr)
      for (auto* a : args_of(n)) enroll(*a, SemanticKind::Argument, kUser);
    for (const auto& c : n.children)
      if (!c.is_token()) arguments(c);
  }

 private:
  DependencyGraph& g_;
};

/// Innermost enrolled node at or above `site` that can act as a user.
SemanticNodeId user_for_site(const DependencyGraph& g, const TreeIndex& idx, NodeId site) {
  auto usable = [&](NodeId id) {
    auto* n = g.node(id);
    return n && !n->roles.conditioner_only();
  };
  if (usable(site)) return site;
  auto* entry = idx.find(site);
  if (!entry) return frontend::kNoNode;
  for (auto it = entry->ancestors.rbegin(); it != entry->ancestors.rend(); ++it)
    if (usable(*it)) return *it;
  return frontend::kNoNode;
}

/// Walks up from `id` through parenthesized expressions.
std::pair<const Node*, NodeId> unparenthesized_parent(const TreeIndex& idx, NodeId id) {
  NodeId child = id;
  while (true) {
    auto* entry = idx.find(child);
    if (!entry || entry->ancestors.empty()) return {nullptr, child};
    const Node* parent = idx.node(entry->ancestors.back());
    if (parent->kind != NodeKind::ParenExpr) return {parent, child};
    child = parent->id;
  }
}

void annotate(DependencyGraph& g, const SyntaxTree& tree, const TreeIndex& idx) {
  for (auto& [id, n] : g.nodes) {
    auto* entry = idx.find(id);
    n.ancestors = entry->ancestors;
    n.first_token = entry->node->first_token;
    n.token_count = entry->node->token_count;
    n.span = entry->node->span();
  }
  std::set<Edge> refreshed;
  for (Edge e : g.edges) {
    e.ancestors = idx.find(e.site)->ancestors;
    e.statement = e.assignment = e.assigned_value = e.address_of = frontend::kNoNode;
    e.site_type.reset();
    if (e.kind == BindingKind::TypeRef) e.site_type = frontend::type_of(*idx.node(e.site));
    auto [parent, child] = unparenthesized_parent(idx, e.site);
    if (parent) {
      if (e.kind == BindingKind::Call && parent->kind == NodeKind::ExprStmt)
        e.statement = parent->id;
      if (e.kind == BindingKind::Name && parent->kind == NodeKind::BinaryExpr &&
          parent->children.at(1).is_token("=") && parent->children.at(0).id == child) {
        e.assignment = parent->id;
        e.assigned_value = parent->children.at(2).id;
      }
      if (e.kind == BindingKind::Name && parent->kind == NodeKind::UnaryExpr &&
          parent->children.at(0).is_token("&"))
        e.address_of = parent->id;
    }
    refreshed.insert(std::move(e));
  }
  g.edges = std::move(refreshed);
  (void)tree;
}

void add_edge(DependencyGraph& g, const TreeIndex& idx, NodeId site, BindingKind kind,
              SemanticNodeId provider) {
  SemanticNodeId user = user_for_site(g, idx, site);
  if (user == frontend::kNoNode)
    throw GraphError("use site " + std::to_string(site) + " has no enclosing semantic node");
  if (!g.contains(provider))
    throw GraphError("use site " + std::to_string(site) + " refers to an unenrolled provider");
  g.nodes.at(user).roles.user = true;
  Edge e;
  e.user = user;
  e.provider = provider;
  e.site = site;
  e.kind = kind;
  g.edges.insert(e);
}

}  // namespace

DependencyGraph build_graph(const SyntaxTree& tree) {
  auto analysis = frontend::analyze(tree);
  if (!analysis.ok()) {
    for (const auto& d : analysis.diagnostics)
      if (d.severity == frontend::Severity::Error)
        throw GraphError("program does not typecheck: " + d.message);
  }
  TreeIndex idx(tree);
  DependencyGraph g;
  Builder b(g);
  for (const auto& decl : tree.root().children) b.top_level(decl);
  b.arguments(tree.root());

  // Call sites per definition, in source order (bindings are keyed by id,
  // so sort by position).
  std::map<SemanticNodeId, std::vector<const Node*>> calls;
  std::map<SemanticNodeId, const Node*> forwards;
  for (const auto& [site, binding] : analysis.bindings) {
    add_edge(g, idx, site, binding.kind, binding.declaration);
    if (binding.kind == BindingKind::Call) calls[binding.declaration].push_back(idx.node(site));
    if (binding.kind == BindingKind::Forward) forwards[binding.declaration] = idx.node(site);
  }

  for (const auto& decl : tree.root().children) {
    if (decl.kind != NodeKind::FuncDef) continue;
    auto& sites = calls[decl.id];
    std::sort(sites.begin(), sites.end(),
              [](const Node* a, const Node* b) { return a->first_token < b->first_token; });
    const Node* fwd = forwards.count(decl.id) ? forwards[decl.id] : nullptr;
    auto params = params_of(decl);
    for (std::size_t i = 0; i < params.size(); ++i) {
      AssociatedGroup group;
      group.kind = GroupKind::ParamArg;
      group.representative = params[i]->id;
      group.members.insert(params[i]->id);
      if (fwd) group.members.insert(params_of(*fwd).at(i)->id);
      for (auto* call : sites) group.members.insert(args_of(*call).at(i)->id);
      g.groups.push_back(std::move(group));
    }
    if (fwd) {
      AssociatedGroup group;
      group.kind = GroupKind::FwdDeclDef;
      group.representative = decl.id;
      group.members = {decl.id, fwd->id};
      g.groups.push_back(std::move(group));
    }
  }

  annotate(g, tree, idx);
  g.check_invariants();
  return g;
}

std::vector<SemanticNodeId> classify_semantic_nodes(const DependencyGraph& graph) {
  std::set<SemanticNodeId> non_representatives;
  for (const auto& g : graph.groups)
    for (auto m : g.members)
      if (m != g.representative) non_representatives.insert(m);

  std::vector<const SemanticNode*> picked;
  for (const auto& [id, n] : graph.nodes) {
    if (!(n.roles.provider || n.roles.user)) continue;
    if (n.kind == SemanticKind::Placeholder || n.kind == SemanticKind::Argument ||
        n.kind == SemanticKind::ForwardParameter)
      continue;
    if (non_representatives.count(id)) continue;
    picked.push_back(&n);
  }
  std::sort(picked.begin(), picked.end(), [](const SemanticNode* a, const SemanticNode* b) {
    if (a->token_count != b->token_count) return a->token_count > b->token_count;
    if (a->first_token != b->first_token) return a->first_token < b->first_token;
    return a->id < b->id;
  });
  std::vector<SemanticNodeId> out;
  out.reserve(picked.size());
  for (auto* n : picked) out.push_back(n->id);
  return out;
}

DependencyGraph update_graph(const DependencyGraph& graph, const std::set<SemanticNodeId>& deleted,
                             const std::map<NodeId, NodeId>& placeholders,
                             const SyntaxTree& rewritten) {
  TreeIndex idx(rewritten);
  for (auto id : deleted) {
    if (!graph.contains(id))
      throw UpdateError("deleted node " + std::to_string(id) + " is not in the graph");
    if (idx.contains(id))
      throw UpdateError("deleted node " + std::to_string(id) + " is still in the tree");
  }

  DependencyGraph g;
  for (const auto& [id, n] : graph.nodes)
    if (idx.contains(id)) g.nodes.emplace(id, n);
  for (const auto& [name, id] : graph.structs)
    if (idx.contains(id)) g.structs.emplace(name, id);

  std::map<NodeId, NodeId> replaced_by;
  for (const auto& [target, replacement] : placeholders) {
    if (!idx.contains(replacement)) continue;
    replaced_by[target] = replacement;
    auto s = make_node(*idx.node(replacement), SemanticKind::Placeholder, kUser);
    g.nodes[replacement] = std::move(s);
  }

  for (auto group : graph.groups) {
    std::set<SemanticNodeId> members;
    for (auto m : group.members) {
      if (auto it = replaced_by.find(m); it != replaced_by.end()) m = it->second;
      if (g.contains(m)) members.insert(m);
    }
    if (!members.count(group.representative)) continue;
    if (group.kind == GroupKind::FwdDeclDef && members.size() < 2) continue;
    group.members = std::move(members);
    g.groups.push_back(std::move(group));
  }

  std::set<NodeId> sites;
  for (const auto& e : graph.edges) {
    if (!idx.contains(e.site)) continue;
    if (!g.contains(e.provider))
      throw UpdateError("use site " + std::to_string(e.site) + " still refers to deleted node " +
                        std::to_string(e.provider));
    add_edge(g, idx, e.site, e.kind, e.provider);
    sites.insert(e.site);
  }

  // Placeholders such as `(struct S*)0` name structs of their own.
  for (const auto& [target, replacement] : replaced_by) {
    std::function<void(const Node&)> walk = [&](const Node& n) {
      if (n.kind == NodeKind::Type && !sites.count(n.id) && !n.name().empty()) {
        auto it = g.structs.find(n.name());
        if (it == g.structs.end())
          throw UpdateError("placeholder refers to missing struct '" + std::string(n.name()) + "'");
        add_edge(g, idx, n.id, BindingKind::TypeRef, it->second);
      }
      for (const auto& c : n.children)
        if (!c.is_token()) walk(c);
    };
    walk(*idx.node(replacement));
  }

  annotate(g, rewritten, idx);
  g.check_invariants();
  return g;
}

}  // namespace drr::semgraph
