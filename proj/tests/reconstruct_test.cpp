#include <doctest.h>

#include "drr/error.hpp"
#include "drr/frontend/printer.hpp"
#include "drr/frontend/sema.hpp"
#include "drr/reconstruct/reconstruct.hpp"
#include "support.hpp"

using namespace drr;
using namespace drr::reconstruct;
using drr::semgraph::SemanticKind;

namespace {

struct Outcome {
  std::string text;
  ReconstructionPlan plan;
};

Outcome delete_named(const std::string& source, SemanticKind kind, std::string_view name) {
  auto tree = frontend::parse_source(source);
  auto graph = semgraph::build_graph(tree);
  auto p = plan(graph, {test::find(graph, kind, name)});
  auto applied = apply(tree, p);
  CHECK(frontend::compiles(applied.tree));
  return {frontend::print(applied.tree), p};
}

}  // namespace

TEST_CASE("default values follow the declared type") {
  CHECK(default_value_text(frontend::MicroCType::integer()) == "1");
  CHECK(default_value_text(frontend::MicroCType::integer(2)) == "(int**)0");
  CHECK(default_value_text(frontend::MicroCType::struct_type("S", 1)) == "(struct S*)0");
  CHECK(default_value_text(frontend::MicroCType::void_type(3)) == "(void***)0");
  CHECK_THROWS_AS(default_value_text(frontend::MicroCType::void_type()), DefaultError);
}

TEST_CASE("struct type references become void***") {
  auto out = delete_named("struct S { int a; };\n"
                          "int main() { struct S* p = (struct S*)0; print(1); return 0; }\n",
                          SemanticKind::StructDecl, "S");
  CHECK(out.text == "int main() { void**** p = (void****)0;\nprint(1);\nreturn 0;\n}\n");
  REQUIRE(out.plan.rewrites.size() == 2);
  CHECK(out.plan.rewrites[0].kind == RewriteKind::VoidPointerType);
}

TEST_CASE("calls of a deleted function become a default of the return type") {
  auto out = delete_named("int* f() { return (int*)0; }\n"
                          "int g() { return 7; }\n"
                          "int main() { int* p = f(); int v = g() + g(); return v; }\n",
                          SemanticKind::FunctionDef, "f");
  CHECK(out.text == "int g() { return 7;\n}\n"
                    "int main() { int* p = (int*)0;\nint v = g() + g();\nreturn v;\n}\n");

  auto ints = delete_named("int g() { return 7; }\n"
                           "int main() { int v = g() + g(); return v; }\n",
                           SemanticKind::FunctionDef, "g");
  CHECK(ints.text == "int main() { int v = 1 + 1;\nreturn v;\n}\n");
}

TEST_CASE("a void call statement becomes an empty statement") {
  auto out = delete_named("void log(int x) { print(x); }\n"
                          "int main() { log(3); if (1) log(4); return 0; }\n",
                          SemanticKind::FunctionDef, "log");
  CHECK(out.text == "int main() {;\nif (1);\nreturn 0;\n}\n");
}

TEST_CASE("a deleted function used as a value becomes (void***)0") {
  auto out = delete_named("int f() { return 1; }\n"
                          "int main() { void*** fp = f; return 0; }\n",
                          SemanticKind::FunctionDef, "f");
  CHECK(out.text == "int main() { void*** fp = (void***)0;\nreturn 0;\n}\n");
  CHECK(out.plan.rewrites.at(0).kind == RewriteKind::FunctionPointerZero);
}

TEST_CASE("variable uses become defaults, assignments keep their value") {
  auto out = delete_named("int main() { int x = 5; int y = x + 2; int* q = &x; x = y; print(y); return 0; }\n",
                          SemanticKind::LocalVar, "x");
  CHECK(out.text == "int main() { int y = 1 + 2;\nint* q = (int*)0;\ny;\nprint(y);\nreturn 0;\n}\n");

  auto global = delete_named("int g = 3;\nint main() { return g; }\n", SemanticKind::GlobalVar, "g");
  CHECK(global.text == "int main() { return 1;\n}\n");

  auto pointer = delete_named("int main() { int** pp = (int**)0; print(*pp == (int*)0); return 0; }\n",
                              SemanticKind::LocalVar, "pp");
  CHECK(pointer.text == "int main() { print(*(int**)0 == (int*)0);\nreturn 0;\n}\n");
}

TEST_CASE("gotos to a deleted label are deleted") {
  auto out = delete_named("int main() { int i = 0; goto done; i = 1; done: print(i); return 0; }\n",
                          SemanticKind::Label, "done");
  CHECK(out.text == "int main() { int i = 0;\ni = 1;\nreturn 0;\n}\n");
  CHECK(out.plan.deletions.size() == 2);
}

TEST_CASE("a parameter goes together with its arguments and forward copy") {
  auto out = delete_named("int f(int a, int b);\n"
                          "int f(int a, int b) { return a; }\n"
                          "int main() { print(f(1, 2)); return f(3, 4); }\n",
                          SemanticKind::Parameter, "b");
  CHECK(out.text == "int f(int a);\nint f(int a) { return a;\n}\n"
                    "int main() { print(f(1));\nreturn f(3);\n}\n");
  CHECK(out.plan.deletions.size() == 4);

  auto used = delete_named("int f(int a) { return a + a; }\n"
                           "int main() { return f(9); }\n",
                           SemanticKind::Parameter, "a");
  CHECK(used.text == "int f() { return 1 + 1;\n}\nint main() { return f();\n}\n");
}

TEST_CASE("deleting a definition takes its forward declaration along") {
  auto out = delete_named("int f();\nint f() { return 2; }\nint main() { return f(); }\n",
                          SemanticKind::FunctionDef, "f");
  CHECK(out.text == "int main() { return 1;\n}\n");
}

TEST_CASE("deleting uselessFunc from hello matches the hand-written intermediate") {
  auto out = delete_named(test::corpus_text("hello.mc"), SemanticKind::FunctionDef, "uselessFunc");
  CHECK(out.text == test::corpus_text("intermediates/hello.after_uselessFunc.mc"));
}

TEST_CASE("rewrites nested in a replaced expression are dropped") {
  auto out = delete_named("int g(int v) { return v; }\n"
                          "int main() { int x = 4; return g(x); }\n",
                          SemanticKind::FunctionDef, "g");
  CHECK(out.text == "int main() { int x = 4;\nreturn 1;\n}\n");
}

TEST_CASE("planning errors") {
  auto tree = frontend::parse_source("int main() { return 0; }\n");
  auto graph = semgraph::build_graph(tree);
  CHECK_THROWS_AS(plan(graph, {9999}), PlanError);

  auto void_value = frontend::parse_source("void f() { }\nint main() { print((int)f()); return 0; }\n");
  if (frontend::compiles(void_value)) {
    auto g = semgraph::build_graph(void_value);
    CHECK_THROWS_AS(plan(g, {test::find(g, SemanticKind::FunctionDef, "f")}), PlanError);
  }
}

TEST_CASE("without reconstruction uses are left dangling") {
  auto tree = frontend::parse_source(test::corpus_text("hello.mc"));
  auto graph = semgraph::build_graph(tree);
  auto p = plan_without_reconstruction(graph, {test::find(graph, SemanticKind::FunctionDef, "uselessFunc")});
  CHECK(p.rewrites.empty());
  auto applied = apply(tree, p);
  CHECK_FALSE(frontend::compiles(applied.tree));
}

TEST_CASE("plans serialize") {
  auto tree = frontend::parse_source("int g = 3;\nint main() { return g; }\n");
  auto graph = semgraph::build_graph(tree);
  auto j = to_json(plan(graph, {test::find(graph, SemanticKind::GlobalVar, "g")}));
  CHECK(j["rewrites"].size() == 1);
  CHECK(j["rewrites"][0]["replacement"] == "1");
}
