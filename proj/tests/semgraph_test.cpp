#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "drr/error.hpp"
#include "drr/frontend/edit.hpp"
#include "drr/frontend/printer.hpp"
#include "drr/frontend/sema.hpp"
#include "drr/reconstruct/reconstruct.hpp"
#include "drr/semgraph/graph.hpp"
#include "support.hpp"

using namespace drr;
using namespace drr::semgraph;
using frontend::NodeKind;

namespace {

std::vector<std::string> corpus_programs() {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(std::string(DRR_SOURCE_DIR) + "/corpus"))
    if (e.path().extension() == ".mc") names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

bool has_edge(const DependencyGraph& g, SemanticNodeId provider, BindingKind kind) {
  return std::any_of(g.edges.begin(), g.edges.end(),
                     [&](const Edge& e) { return e.provider == provider && e.kind == kind; });
}

bool contains(const std::vector<SemanticNodeId>& list, SemanticNodeId id) {
  return std::find(list.begin(), list.end(), id) != list.end();
}

const frontend::Node* find_call(const frontend::Node& n, std::string_view name) {
  if (n.kind == NodeKind::CallExpr && n.name() == name) return &n;
  for (const auto& c : n.children)
    if (auto* hit = find_call(c, name)) return hit;
  return nullptr;
}

}  // namespace

TEST_CASE("a call is a use of the definition") {
  auto tree = frontend::parse_source("int g(){return 1;} int main(){return g();}");
  auto g = build_graph(tree);
  auto def = test::find(g, SemanticKind::FunctionDef, "g");
  REQUIRE(has_edge(g, def, BindingKind::Call));
  auto* call = find_call(tree.root(), "g");
  REQUIRE(call);
  auto edges = g.edges_into(def);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0]->site == call->id);
  CHECK(g.node(edges[0]->user)->kind == SemanticKind::Statement);
  g.check_invariants();
}

TEST_CASE("forward declarations form groups") {
  auto tree = frontend::parse_source("int f(int a); int f(int a){return a;}");
  auto g = build_graph(tree);
  std::size_t fwd = 0, params = 0;
  for (const auto& grp : g.groups) {
    if (grp.kind == GroupKind::FwdDeclDef) {
      ++fwd;
      CHECK(grp.members.size() == 2);
      CHECK(grp.representative == test::find(g, SemanticKind::FunctionDef, "f"));
    } else {
      ++params;
      CHECK(grp.members.size() == 2);  // the parameter and its forward copy; no calls
    }
  }
  CHECK(fwd == 1);
  CHECK(params == 1);
  CHECK(has_edge(g, test::find(g, SemanticKind::FunctionDef, "f"), BindingKind::Forward));
}

TEST_CASE("hello: edges and the parameter-argument group") {
  auto tree = frontend::parse_source(test::corpus_text("hello.mc"));
  auto g = build_graph(tree);
  auto useless = test::find(g, SemanticKind::FunctionDef, "uselessFunc");
  CHECK(g.edges_into(useless).size() == 2);
  for (auto* e : g.edges_into(useless)) CHECK(e->kind == BindingKind::Call);

  auto param = test::find(g, SemanticKind::Parameter, "uselessParam");
  auto groups = g.groups_of(param);
  REQUIRE(groups.size() == 1);
  CHECK(groups[0]->kind == GroupKind::ParamArg);
  CHECK(groups[0]->representative == param);
  REQUIRE(groups[0]->members.size() == 2);
  for (auto m : groups[0]->members) {
    if (m == param) continue;
    CHECK(g.node(m)->kind == SemanticKind::Argument);
    CHECK(frontend::print(*tree.find(m)) == "uselessArg");
  }

  auto candidates = classify_semantic_nodes(g);
  CHECK(contains(candidates, useless));
  CHECK(contains(candidates, param));
  CHECK(contains(candidates, test::find(g, SemanticKind::LocalVar, "uselessArg")));
  CHECK(contains(candidates, test::find(g, SemanticKind::LocalVar, "unused")));
  for (auto c : candidates) {
    auto kind = g.node(c)->kind;
    CHECK(kind != SemanticKind::ReturnType);
    CHECK(kind != SemanticKind::Argument);
    CHECK(kind != SemanticKind::Placeholder);
  }
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    auto* a = g.node(candidates[i - 1]);
    auto* b = g.node(candidates[i]);
    CHECK((a->token_count > b->token_count ||
           (a->token_count == b->token_count && a->first_token < b->first_token)));
  }
  CHECK(candidates == classify_semantic_nodes(g));
}

TEST_CASE("classification") {
  auto g = build_graph(frontend::parse_source("int x;"));
  auto c = classify_semantic_nodes(g);
  REQUIRE(c.size() == 1);
  CHECK(g.node(c[0])->kind == SemanticKind::GlobalVar);

  auto h = build_graph(frontend::parse_source("int f() { return 1; }"));
  bool saw_return_type = false;
  for (const auto& [id, n] : h.nodes)
    if (n.kind == SemanticKind::ReturnType) {
      saw_return_type = true;
      CHECK(n.roles.conditioner_only());
      CHECK_FALSE(contains(classify_semantic_nodes(h), id));
    }
  CHECK(saw_return_type);
}

TEST_CASE("building needs a program that typechecks") {
  CHECK_THROWS_AS(build_graph(frontend::parse_source("int main() { return y; }")), GraphError);
}

TEST_CASE("graph invariants over the corpus") {
  for (const auto& name : corpus_programs()) {
    CAPTURE(name);
    auto tree = frontend::parse_source(test::corpus_text(name));
    auto g = build_graph(tree);
    g.check_invariants();
    for (const auto& e : g.edges) {
      CHECK(g.node(e.user)->roles.user);
      CHECK(g.node(e.provider)->roles.provider);
    }
    // Every parameter of a definition heads one group holding the argument
    // at each call site (and the forward declaration's copy, if any).
    for (const auto& [id, n] : g.nodes) {
      if (n.kind != SemanticKind::FunctionDef) continue;
      std::size_t calls = 0;
      for (auto* e : g.edges_into(id)) calls += e->kind == BindingKind::Call;
      bool forward = has_edge(g, id, BindingKind::Forward);
      const auto* def = tree.find(id);
      const auto* list = def->find_child(NodeKind::ParamList);
      std::size_t k = 0;
      if (list)
        for (const auto& p : list->children) {
          if (p.kind != NodeKind::Param) continue;
          ++k;
          auto groups = g.groups_of(p.id);
          REQUIRE(groups.size() == 1);
          CHECK(groups[0]->members.size() == 1 + calls + (forward ? 1 : 0));
        }
      if (!list) continue;
      std::size_t groups_here = 0;
      for (const auto& grp : g.groups)
        if (grp.kind == GroupKind::ParamArg && g.node(grp.representative)->ancestors.back() == list->id)
          ++groups_here;
      CHECK(groups_here == k);
    }
  }
}

TEST_CASE("deleting a used provider without reconstruction breaks compilation") {
  for (const auto& name : corpus_programs()) {
    CAPTURE(name);
    auto tree = frontend::parse_source(test::corpus_text(name));
    auto g = build_graph(tree);
    for (const auto& [id, n] : g.nodes) {
      if (!n.roles.provider || n.kind == SemanticKind::Field) continue;
      auto p = reconstruct::plan_without_reconstruction(g, {id});
      auto gone = p.removed();
      bool surviving_user = false;
      for (auto* e : g.edges_into(id))
        if (!gone.count(e->user) &&
            std::none_of(e->ancestors.begin(), e->ancestors.end(),
                         [&](auto a) { return gone.count(a) != 0; }))
          surviving_user = true;
      if (!surviving_user) continue;
      CAPTURE(n.name);
      std::optional<frontend::SyntaxTree> broken;
      try {
        broken = frontend::remove_nodes(tree, {id});
      } catch (const EditError&) {
        continue;
      }
      CHECK_FALSE(frontend::compiles(*broken));
    }
  }
}

TEST_CASE("updating after an isolated deletion") {
  auto tree = frontend::parse_source("int z;\nint main() { return 0; }\n");
  auto g = build_graph(tree);
  auto z = test::find(g, SemanticKind::GlobalVar, "z");
  auto rewritten = frontend::remove_nodes(tree, {z});
  auto u = update_graph(g, {z}, {}, rewritten);
  CHECK(u.nodes.size() == g.nodes.size() - 1);
  CHECK(u.edges.size() == g.edges.size());
  u.check_invariants();
}

TEST_CASE("updating after deleting uselessFunc enrolls two placeholders") {
  auto tree = frontend::parse_source(test::corpus_text("hello.mc"));
  auto g = build_graph(tree);
  auto p = reconstruct::plan(g, {test::find(g, SemanticKind::FunctionDef, "uselessFunc")});
  auto applied = reconstruct::apply(tree, p);
  auto u = update_graph(g, p.removed(), applied.placeholders, applied.tree);
  u.check_invariants();
  CHECK_FALSE(u.contains(test::find(g, SemanticKind::FunctionDef, "uselessFunc")));
  std::size_t placeholders = 0;
  for (const auto& [id, n] : u.nodes)
    if (n.kind == SemanticKind::Placeholder) {
      ++placeholders;
      CHECK(frontend::print(*applied.tree.find(id)) == "1");
      CHECK_FALSE(contains(classify_semantic_nodes(u), id));
    }
  CHECK(placeholders == 2);
  for (const auto& e : u.edges) CHECK(u.contains(e.provider));
}

TEST_CASE("updating after deleting a parameter group") {
  auto tree = frontend::parse_source(test::corpus_text("hello.mc"));
  auto g = build_graph(tree);
  auto p = reconstruct::plan(g, {test::find(g, SemanticKind::Parameter, "uselessParam")});
  CHECK(p.deletions.size() == 2);
  CHECK(p.rewrites.empty());
  auto applied = reconstruct::apply(tree, p);
  CHECK(frontend::compiles(applied.tree));
  auto u = update_graph(g, p.removed(), applied.placeholders, applied.tree);
  u.check_invariants();
  for (const auto& grp : u.groups)
    for (auto m : grp.members) CHECK(u.contains(m));
  CHECK(u.groups.size() == g.groups.size() - 1);
}

TEST_CASE("an update that leaves a use dangling is refused") {
  auto tree = frontend::parse_source("int g = 1;\nint main() { return g; }\n");
  auto g = build_graph(tree);
  auto id = test::find(g, SemanticKind::GlobalVar, "g");
  auto broken = frontend::remove_nodes(tree, {id});
  CHECK_THROWS_AS(update_graph(g, {id}, {}, broken), UpdateError);
}

TEST_CASE("dot export") {
  auto g = build_graph(frontend::parse_source(test::corpus_text("hello.mc")));
  auto dot = to_dot(g);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("function uselessFunc") != std::string::npos);
}
