#include <doctest.h>

#include <filesystem>

#include "drr/error.hpp"
#include "drr/frontend/interpreter.hpp"
#include "drr/frontend/parser.hpp"
#include "drr/frontend/printer.hpp"
#include "drr/frontend/sema.hpp"
#include "drr/frontend/token.hpp"
#include "support.hpp"

using namespace drr;
using namespace drr::frontend;

namespace {

std::vector<std::string> corpus_programs() {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(std::string(DRR_SOURCE_DIR) + "/corpus"))
    if (e.path().extension() == ".mc") names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

std::vector<std::string> errors_of(const std::string& source) {
  std::vector<std::string> out;
  for (const auto& d : typecheck(parse_source(source)))
    if (d.severity == Severity::Error) out.push_back(d.message);
  return out;
}

}  // namespace

TEST_CASE("lexing") {
  auto toks = lex("int x;");
  REQUIRE(toks.size() == 3);
  CHECK(toks[0].kind == TokenKind::Keyword);
  CHECK(toks[1].kind == TokenKind::Identifier);
  CHECK(toks[2].kind == TokenKind::Punctuator);
  CHECK(toks[1].span == Span{4, 5});
  CHECK(lex("").empty());
  CHECK(lex("a == b = c // note\n /* block */ 12").size() == 6);
  CHECK_THROWS_AS(lex("int $x;"), LexError);
  CHECK_THROWS_AS(lex("/* open"), LexError);
}

TEST_CASE("lexemes slice the source at their spans") {
  std::string src = test::corpus_text("hello.mc");
  auto toks = lex(src);
  CHECK(toks.size() == 74);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    CHECK(src.substr(toks[i].span.begin, toks[i].span.end - toks[i].span.begin) == toks[i].lexeme);
    if (i) CHECK(toks[i - 1].span.end <= toks[i].span.begin);
  }
}

TEST_CASE("parsing") {
  auto tree = parse_source("int main() { return 0; }");
  REQUIRE(tree.root().children.size() == 1);
  CHECK(tree.root().children[0].kind == NodeKind::FuncDef);

  try {
    parse_source("int f(; ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span() == Span{6, 7});
  }
  CHECK_THROWS_AS(parse_source("int main() { return 0; "), ParseError);
  CHECK_THROWS_AS(parse_source("int x = ;"), ParseError);

  auto hello = parse_source(test::corpus_text("hello.mc"));
  std::size_t funcs = 0, structs = 0;
  for (const auto& c : hello.root().children) {
    funcs += c.kind == NodeKind::FuncDef;
    structs += c.kind == NodeKind::StructDecl;
  }
  CHECK(funcs == 3);
  CHECK(structs == 0);
}

TEST_CASE("expression precedence") {
  auto tree = parse_source("int x = 1 + 2 * 3 < 4 == 0;");
  const Node& init = *tree.root().children[0].find_child(NodeKind::Initializer);
  const Node& eq = init.children[1];
  REQUIRE(eq.kind == NodeKind::BinaryExpr);
  CHECK(eq.children[1].token.lexeme == "==");
  const Node& lt = eq.children[0];
  CHECK(lt.children[1].token.lexeme == "<");
  CHECK(lt.children[0].children[1].token.lexeme == "+");
  CHECK(lt.children[0].children[2].children[1].token.lexeme == "*");

  auto assign = parse_source("int main() { int a; int b; a = b = 2; return a; }");
  CHECK(compiles(assign));
}

TEST_CASE("printing") {
  CHECK(print(parse_source("int  x ;")) == "int x;\n");
  CHECK(print(parse_source("int main(){int*p=(int*)0;if(1){print(*p);}else return 0;}")) ==
        "int main() { int* p = (int*)0;\nif (1) { print(*p);\n} else return 0;\n}\n");
  std::string hello = test::corpus_text("hello.mc");
  CHECK(print(parse_source(hello)) == print(parse_source(hello)));
}

TEST_CASE("round trip and token counts over the corpus") {
  for (const auto& name : corpus_programs()) {
    CAPTURE(name);
    std::string src = test::corpus_text(name);
    auto tree = parse_source(src);
    std::string once = print(tree);
    CHECK(print(parse_source(once)) == once);
    auto a = lex(src);
    auto b = lex(once);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].lexeme == b[i].lexeme);
    CHECK(count_tokens(tree) == a.size());
    CHECK(count_tokens(once) == a.size());
    CHECK(structurally_equal(tree.root(), parse_source(once).root()));
  }
  CHECK(count_tokens(std::string_view("int x;")) == 3);
  CHECK(count_tokens(parse_source("")) == 0);
  CHECK(count_tokens(parse_source(test::corpus_text("hello.mc"))) == 74);
}

TEST_CASE("the corpus typechecks and runs") {
  for (const auto& name : corpus_programs()) {
    CAPTURE(name);
    auto tree = parse_source(test::corpus_text(name));
    CHECK(errors_of(test::corpus_text(name)).empty());
    auto stem = name.substr(0, name.size() - 3);
    if (std::filesystem::exists(test::corpus_path(stem + ".expected"))) {
      auto result = run_program(tree);
      CHECK(result.ok);
      CHECK(result.output == test::corpus_text(stem + ".expected"));
    }
  }
}

TEST_CASE("typecheck") {
  auto unresolved = errors_of("int main() { return y; }");
  REQUIRE(unresolved.size() == 1);
  CHECK(unresolved[0].find("unresolved identifier 'y'") != std::string::npos);

  CHECK(errors_of("int f(int a); int f(int a) { return a; } int main(){ return f(1); }").empty());

  auto arity = errors_of("int f(int a){return a;} int main(){ return f(); }");
  REQUIRE(arity.size() == 1);
  CHECK(arity[0].find("arity mismatch") != std::string::npos);

  CHECK_FALSE(errors_of("int main() { goto nowhere; }").empty());
  CHECK_FALSE(errors_of("int main() { int* p = 0; return 0; }").empty());
  CHECK(errors_of("int main() { int* p = (int*)0; return 0; }").empty());
  CHECK_FALSE(errors_of("int f(int a); int f(int* a) { return 0; }").empty());
  CHECK_FALSE(errors_of("int f(int a); int main() { return 0; }").empty());
  CHECK_FALSE(errors_of("void v;").empty());
  CHECK_FALSE(errors_of("struct S* p;").empty());
  CHECK(errors_of("struct S { int a; }; struct S* p;").empty());
  CHECK_FALSE(errors_of("int main() { 1 = 2; }").empty());
  CHECK_FALSE(errors_of("int main() { int a = b; int b = 0; }").empty());
  CHECK_FALSE(errors_of("int main() { L: ; L: ; }").empty());
  CHECK(errors_of("int main() { if (1) { int t = 0; } int t = 1; return t; }").empty());
}

TEST_CASE("interpreter") {
  auto run = [](const std::string& src) { return run_program(parse_source(src)); };
  CHECK(run("int main() { print(6 * 7); return 0; }").output == "42\n");
  CHECK(run("int g = 1;\nint main() { int* p = &g; *p = 5; print(g); return 0; }").output == "5\n");
  CHECK(run("int main() { int i = 0; while (i < 3) { print(i); i = i + 1; } return 0; }").output ==
        "0\n1\n2\n");
  CHECK(run("int main() { goto end; print(1); end: print(2); return 0; }").output == "2\n");
  CHECK(run("int f(int n) { if (n < 2) return n; return f(n - 1) + f(n - 2); }\n"
            "int main() { print(f(10)); return 0; }").output == "55\n");

  auto loop = run_program(parse_source("int main() { while (1) { } return 0; }"), {1000, 100});
  CHECK_FALSE(loop.ok);
  auto null = run("int main() { int* p = (int*)0; print(*p); return 0; }");
  CHECK_FALSE(null.ok);
  auto div = run("int main() { int z = 0; print(1 / z); return 0; }");
  CHECK_FALSE(div.ok);
  CHECK_FALSE(run("int main() { return y; }").ok);
}
