#include "drr/reconstruct/reconstruct.hpp"

#include <algorithm>
#include <deque>

#include "drr/frontend/edit.hpp"
#include "drr/frontend/printer.hpp"
#include "drr/frontend/sema.hpp"

namespace drr::reconstruct {

using frontend::Node;
using frontend::NodeKind;
using frontend::SyntaxTree;
using frontend::TokenKind;
using semgraph::DependencyGraph;
using semgraph::Edge;
using semgraph::SemanticKind;

const char* to_string(RewriteKind kind) {
  switch (kind) {
    case RewriteKind::DefaultValue: return "default-value";
    case RewriteKind::FunctionPointerZero: return "function-pointer-zero";
    case RewriteKind::VoidPointerType: return "void-pointer-type";
    case RewriteKind::EmptyStatement: return "empty-statement";
    case RewriteKind::AssignedValue: return "assigned-value";
  }
  return "?";
}

Node default_value_for(const MicroCType& t, SyntaxTree& id_source) {
  if (t.is_bare_void()) throw DefaultError("no default value for void");
  if (t.is_int()) return frontend::make_int_literal(id_source, 1);
  Node cast;
  cast.kind = NodeKind::CastExpr;
  cast.id = id_source.fresh_id();
  cast.children.push_back(frontend::make_token(id_source, TokenKind::Punctuator, "("));
  cast.children.push_back(frontend::make_type_node(id_source, t));
  cast.children.push_back(frontend::make_token(id_source, TokenKind::Punctuator, ")"));
  cast.children.push_back(frontend::make_int_literal(id_source, 0));
  return cast;
}

std::string default_value_text(const MicroCType& t) {
  SyntaxTree scratch;
  return frontend::print(default_value_for(t, scratch));
}

std::set<SemanticNodeId> ReconstructionPlan::removed() const {
  std::set<SemanticNodeId> all = deletions;
  all.insert(cascaded.begin(), cascaded.end());
  return all;
}

namespace {

bool inside(const std::vector<NodeId>& ancestors, NodeId self, const std::set<NodeId>& region) {
  if (region.count(self)) return true;
  return std::any_of(ancestors.begin(), ancestors.end(),
                     [&](NodeId a) { return region.count(a) != 0; });
}

void check_known(const DependencyGraph& graph, const std::set<SemanticNodeId>& requested) {
  for (auto id : requested)
    if (!graph.contains(id)) throw PlanError("node " + std::to_string(id) + " is not in the graph");
}

std::set<SemanticNodeId> cascade_of(const DependencyGraph& graph,
                                    const std::set<SemanticNodeId>& deletions) {
  std::set<SemanticNodeId> out;
  for (const auto& [id, n] : graph.nodes)
    if (!deletions.count(id) && inside(n.ancestors, id, deletions)) out.insert(id);
  return out;
}

/// A rewrite target replaced wholesale hides every site inside it, except
/// those in the part an AssignedValue rewrite keeps.
struct Shadow {
  NodeId target;
  NodeId kept;
};

bool shadowed(const Edge& e, const std::vector<Shadow>& shadows) {
  for (const auto& s : shadows) {
    bool in_target = e.site == s.target ||
                     std::find(e.ancestors.begin(), e.ancestors.end(), s.target) != e.ancestors.end();
    if (!in_target) continue;
    bool in_kept = s.kept != frontend::kNoNode &&
                   (e.site == s.kept ||
                    std::find(e.ancestors.begin(), e.ancestors.end(), s.kept) != e.ancestors.end());
    if (!in_kept) return true;
  }
  return false;
}

}  // namespace

ReconstructionPlan plan(const DependencyGraph& graph, const std::set<SemanticNodeId>& requested) {
  check_known(graph, requested);
  ReconstructionPlan p;
  p.requested = requested;
  p.deletions = requested;

  std::deque<SemanticNodeId> queue(requested.begin(), requested.end());
  while (!queue.empty()) {
    auto id = queue.front();
    queue.pop_front();
    for (auto* g : graph.groups_of(id))
      for (auto m : g->members)
        if (p.deletions.insert(m).second) queue.push_back(m);
  }

  // Gotos whose label goes away are deleted outright; that can only shrink
  // the set of surviving uses, so one extra pass settles it.
  p.cascaded = cascade_of(graph, p.deletions);
  for (const auto& e : graph.edges) {
    if (e.kind != frontend::BindingKind::Goto) continue;
    auto gone = p.removed();
    if (gone.count(e.provider) && !inside(e.ancestors, e.site, gone)) p.deletions.insert(e.site);
  }
  p.cascaded = cascade_of(graph, p.deletions);
  const auto gone = p.removed();

  std::set<std::string> deleted_structs;
  for (auto id : gone)
    if (graph.nodes.at(id).kind == SemanticKind::StructDecl)
      deleted_structs.insert(graph.nodes.at(id).name);
  auto effective = [&](MicroCType t) {
    if (t.base == MicroCType::Base::Struct && deleted_structs.count(t.struct_name))
      return MicroCType::void_type(t.pointer_depth + 3);
    return t;
  };

  struct Pending {
    const Edge* edge;
    Rewrite rewrite;
    std::size_t depth;
  };
  std::vector<Pending> pending;
  for (const auto& e : graph.edges) {
    if (!gone.count(e.provider)) continue;
    if (inside(e.ancestors, e.site, gone)) continue;
    const auto& provider = graph.nodes.at(e.provider);
    Rewrite r;
    r.site = e.site;
    r.target = e.site;
    r.provider = e.provider;
    std::size_t depth = e.ancestors.size();
    switch (e.kind) {
      case frontend::BindingKind::TypeRef: {
        r.kind = RewriteKind::VoidPointerType;
        r.type = MicroCType::void_type(e.site_type.value().pointer_depth + 3);
        break;
      }
      case frontend::BindingKind::Call: {
        MicroCType result = effective(provider.type.value());
        if (result.is_bare_void()) {
          if (e.statement == frontend::kNoNode)
            throw PlanError("void call used as a value has no reconstruction");
          r.kind = RewriteKind::EmptyStatement;
          r.target = e.statement;
          --depth;
        } else {
          r.kind = RewriteKind::DefaultValue;
          r.type = result;
        }
        break;
      }
      case frontend::BindingKind::Name: {
        if (provider.kind == SemanticKind::FunctionDef) {
          r.kind = RewriteKind::FunctionPointerZero;
          r.type = MicroCType::void_type(3);
          break;
        }
        if (provider.kind != SemanticKind::GlobalVar && provider.kind != SemanticKind::LocalVar &&
            provider.kind != SemanticKind::Parameter)
          throw PlanError("no reconstruction rule for a name bound to " +
                          std::string(semgraph::to_string(provider.kind)));
        MicroCType t = effective(provider.type.value());
        if (e.assignment != frontend::kNoNode) {
          r.kind = RewriteKind::AssignedValue;
          r.target = e.assignment;
          r.kept = e.assigned_value;
          r.type = t;
          depth = 0;  // ordered before anything nested in it
        } else if (e.address_of != frontend::kNoNode) {
          r.kind = RewriteKind::DefaultValue;
          r.target = e.address_of;
          r.type = t.pointer_to();
          depth = 0;
        } else {
          r.kind = RewriteKind::DefaultValue;
          r.type = t;
        }
        break;
      }
      case frontend::BindingKind::Goto:
        // Handled above: the goto statement is deleted.
        throw PlanError("goto to a deleted label survived planning");
      case frontend::BindingKind::Forward:
        throw PlanError("forward declaration outlives its definition");
    }
    pending.push_back({&e, r, depth});
  }

  // Outermost first. Wrapping targets (assignment, address-of) are ordered
  // by the depth of the wrapper itself.
  auto target_depth = [&](const Pending& x) {
    if (x.rewrite.target == x.rewrite.site) return x.edge->ancestors.size();
    auto& anc = x.edge->ancestors;
    auto it = std::find(anc.begin(), anc.end(), x.rewrite.target);
    return static_cast<std::size_t>(it - anc.begin());
  };
  std::stable_sort(pending.begin(), pending.end(), [&](const Pending& a, const Pending& b) {
    auto da = target_depth(a), db = target_depth(b);
    if (da != db) return da < db;
    return a.rewrite.site < b.rewrite.site;
  });

  std::vector<Shadow> shadows;
  std::set<NodeId> targets;
  for (auto& x : pending) {
    if (shadowed(*x.edge, shadows)) continue;
    if (!targets.insert(x.rewrite.target).second) continue;
    shadows.push_back({x.rewrite.target, x.rewrite.kept});
    p.rewrites.push_back(x.rewrite);
  }
  return p;
}

ReconstructionPlan plan_without_reconstruction(const DependencyGraph& graph,
                                               const std::set<SemanticNodeId>& requested) {
  check_known(graph, requested);
  ReconstructionPlan p;
  p.requested = requested;
  p.deletions = requested;
  p.cascaded = cascade_of(graph, p.deletions);
  p.reconstruct = false;
  return p;
}

Applied apply(const SyntaxTree& tree, const ReconstructionPlan& plan) {
  frontend::TreeEditor editor(tree);
  std::map<NodeId, NodeId> placeholders;
  for (auto id : plan.deletions) editor.remove(id);
  for (const auto& r : plan.rewrites) {
    switch (r.kind) {
      case RewriteKind::DefaultValue:
      case RewriteKind::FunctionPointerZero: {
        Node value = default_value_for(r.type, editor.tree());
        placeholders[r.target] = value.id;
        editor.replace(r.target, std::move(value));
        break;
      }
      case RewriteKind::VoidPointerType: {
        Node type = frontend::make_type_node(editor.tree(), r.type);
        placeholders[r.target] = type.id;
        editor.replace(r.target, std::move(type));
        break;
      }
      case RewriteKind::EmptyStatement: {
        Node empty = frontend::make_empty_statement(editor.tree());
        placeholders[r.target] = empty.id;
        editor.replace(r.target, std::move(empty));
        break;
      }
      case RewriteKind::AssignedValue:
        placeholders[r.target] = r.kept;
        editor.hoist(r.target, r.kept);
        break;
    }
  }

  Applied out;
  try {
    out.tree = std::move(editor).finish();
  } catch (const EditError& e) {
    throw ApplyError(std::string("rewrite does not fit the grammar: ") + e.what());
  }
  out.placeholders = std::move(placeholders);
  if (plan.reconstruct) {
    for (const auto& d : frontend::typecheck(out.tree))
      if (d.severity == frontend::Severity::Error)
        throw ApplyError("reconstructed program does not typecheck: " + d.message);
  }
  return out;
}

nlohmann::json to_json(const ReconstructionPlan& plan) {
  nlohmann::json rewrites = nlohmann::json::array();
  for (const auto& r : plan.rewrites) {
    nlohmann::json j{{"site", r.site}, {"target", r.target}, {"provider", r.provider},
                     {"kind", to_string(r.kind)}};
    if (r.kind == RewriteKind::DefaultValue || r.kind == RewriteKind::FunctionPointerZero)
      j["replacement"] = default_value_text(r.type);
    if (r.kind == RewriteKind::VoidPointerType) j["replacement"] = frontend::to_string(r.type);
    if (r.kind == RewriteKind::AssignedValue) j["kept"] = r.kept;
    rewrites.push_back(std::move(j));
  }
  return {{"requested", plan.requested},
          {"deletions", plan.deletions},
          {"cascaded", plan.cascaded},
          {"rewrites", std::move(rewrites)},
          {"reconstruct", plan.reconstruct}};
}

}  // namespace drr::reconstruct
