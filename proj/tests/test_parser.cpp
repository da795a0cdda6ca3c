#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ckm/builder.hpp"
#include "ckm/lexer.hpp"
#include "ckm/model_io.hpp"
#include "ckm/parser.hpp"
#include "support.hpp"

using namespace ckm;

namespace {

SyntaxUnit parse(const std::string& source) { return parse_source(source, "t.java"); }

int error_count(const SyntaxUnit& unit) {
    int n = 0;
    for (const Diagnostic& d : unit.diagnostics) {
        if (d.severity == Severity::error) {
            ++n;
        }
    }
    return n;
}

bool has_diagnostic(const SyntaxUnit& unit, const std::string& needle) {
    for (const Diagnostic& d : unit.diagnostics) {
        if (d.message.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_SUITE("parser") {

TEST_CASE("package, imports, and type declarations") {
    const SyntaxUnit unit = parse(
        "package a.b;\n"
        "import c.d.E;\n"
        "import f.G;\n"
        "public class X {}\n"
        "interface Y extends Z {}\n");
    CHECK(unit.package_name == "a.b");
    CHECK(unit.imports == std::vector<std::string>{"c.d.E", "f.G"});
    REQUIRE(unit.type_decls.size() == 2);
    CHECK(unit.type_decls[0].name == "X");
    CHECK(unit.type_decls[0].kind == ClassKind::Class);
    CHECK(unit.type_decls[1].name == "Y");
    CHECK(unit.type_decls[1].kind == ClassKind::Interface);
    CHECK(unit.type_decls[1].extends_names == std::vector<std::string>{"Z"});
    CHECK(unit.diagnostics.empty());
}

TEST_CASE("missing package declaration means the default package") {
    const SyntaxUnit unit = parse("class X {}");
    CHECK(unit.package_name.empty());
    REQUIRE(unit.type_decls.size() == 1);
}

TEST_CASE("extends and implements lists") {
    const SyntaxUnit unit = parse("class X extends A implements B, c.D {}");
    REQUIRE(unit.type_decls.size() == 1);
    CHECK(unit.type_decls[0].extends_names == std::vector<std::string>{"A"});
    CHECK(unit.type_decls[0].implements_names == std::vector<std::string>{"B", "c.D"});
}

TEST_CASE("wildcard and static imports are ignored with a warning") {
    const SyntaxUnit unit = parse(
        "import a.b.*;\n"
        "import static c.D.e;\n"
        "import f.G;\n"
        "class X {}\n");
    CHECK(unit.imports == std::vector<std::string>{"f.G"});
    CHECK(has_diagnostic(unit, "wildcard imports are not supported"));
    CHECK(has_diagnostic(unit, "static imports are not supported"));
    CHECK(error_count(unit) == 0);
}

TEST_CASE("fields and methods with parameters") {
    const SyntaxUnit unit = parse(
        "class X {\n"
        "  A one;\n"
        "  int two;\n"
        "  B go(C c, int n) { return null; }\n"
        "  void stop() {}\n"
        "}\n");
    REQUIRE(unit.type_decls.size() == 1);
    const RawTypeDecl& decl = unit.type_decls[0];
    REQUIRE(decl.fields.size() == 2);
    CHECK(decl.fields[0].type_name == "A");
    CHECK(decl.fields[0].name == "one");
    REQUIRE(decl.methods.size() == 2);
    CHECK(decl.methods[0].name == "go");
    CHECK(decl.methods[0].return_type_name == "B");
    REQUIRE(decl.methods[0].params.size() == 2);
    CHECK(decl.methods[0].params[0].type_name == "C");
    CHECK(decl.methods[0].params[0].name == "c");
    CHECK(decl.methods[0].params[1].type_name == "int");
    CHECK(!decl.methods[0].is_constructor);
}

TEST_CASE("constructors are recognized by name and missing return type") {
    const SyntaxUnit unit = parse(
        "class X {\n"
        "  X(int seed) { }\n"
        "  void other() {}\n"
        "}\n");
    const RawTypeDecl& decl = unit.type_decls[0];
    REQUIRE(decl.methods.size() == 2);
    CHECK(decl.methods[0].name == "X");
    CHECK(decl.methods[0].is_constructor);
    REQUIRE(decl.methods[0].params.size() == 1);
}

TEST_CASE("bodiless interface methods parse") {
    const SyntaxUnit unit = parse("interface I { int size(); void run(A a); }");
    const RawTypeDecl& decl = unit.type_decls[0];
    REQUIRE(decl.methods.size() == 2);
    CHECK(decl.methods[0].name == "size");
    CHECK(decl.methods[1].params.size() == 1);
    CHECK(unit.diagnostics.empty());
}

TEST_CASE("field initializers are skipped without losing the declaration") {
    const SyntaxUnit unit = parse("class X { int a = 40 + 2; A b = null; }");
    const RawTypeDecl& decl = unit.type_decls[0];
    REQUIRE(decl.fields.size() == 2);
    CHECK(decl.fields[0].name == "a");
    CHECK(decl.fields[1].name == "b");
}

TEST_CASE("multiple declarators keep the first and warn") {
    const SyntaxUnit unit = parse("class X { int a, b, c; }");
    const RawTypeDecl& decl = unit.type_decls[0];
    REQUIRE(decl.fields.size() == 1);
    CHECK(decl.fields[0].name == "a");
    CHECK(has_diagnostic(unit, "multiple declarators"));
}

TEST_CASE("array types fall back to the element type with a warning") {
    const SyntaxUnit unit = parse("class X { int[] xs; void f(A[] as) {} }");
    const RawTypeDecl& decl = unit.type_decls[0];
    REQUIRE(decl.fields.size() == 1);
    CHECK(decl.fields[0].type_name == "int");
    CHECK(decl.methods[0].params[0].type_name == "A");
    CHECK(has_diagnostic(unit, "array types are not supported"));
}

TEST_CASE("annotations are ignored with a warning") {
    const SyntaxUnit unit = parse(
        "@Deprecated\n"
        "class X {\n"
        "  @Override void f() {}\n"
        "}\n");
    REQUIRE(unit.type_decls.size() == 1);
    REQUIRE(unit.type_decls[0].methods.size() == 1);
    CHECK(has_diagnostic(unit, "annotations are not supported"));
    CHECK(error_count(unit) == 0);
}

TEST_CASE("nested types are rejected but the outer class survives") {
    const SyntaxUnit unit = parse(
        "class X {\n"
        "  int keep;\n"
        "  class Inner { int lost; }\n"
        "  void after() {}\n"
        "}\n");
    REQUIRE(unit.type_decls.size() == 1);
    const RawTypeDecl& decl = unit.type_decls[0];
    CHECK(decl.fields.size() == 1);
    REQUIRE(decl.methods.size() == 1);
    CHECK(decl.methods[0].name == "after");
    CHECK(has_diagnostic(unit, "nested type declarations are not supported"));
}

TEST_CASE("initializer blocks are rejected") {
    const SyntaxUnit unit = parse("class X { { int a; } void f() {} }");
    CHECK(has_diagnostic(unit, "initializer blocks are not supported"));
    CHECK(unit.type_decls[0].methods.size() == 1);
}

TEST_CASE("object creation and lambdas are rejected, methods keep parsing") {
    const SyntaxUnit unit = parse(
        "class X {\n"
        "  void f() { A a = new A(); }\n"
        "  void g() { r = x -> x; }\n"
        "  void h() { }\n"
        "}\n");
    CHECK(has_diagnostic(unit, "object creation expressions are not supported"));
    CHECK(has_diagnostic(unit, "lambda expressions are not supported"));
    CHECK(unit.type_decls[0].methods.size() == 3);
}

TEST_CASE("unsupported statements are reported and recovered") {
    const SyntaxUnit unit = parse(
        "class X {\n"
        "  void f() { for (i = 0; i < 3; i = i + 1) { poke(); } }\n"
        "  void g() { try { poke(); } catch (E e) { } }\n"
        "  void h() { switch (x) { } }\n"
        "  void t() { tail(); }\n"
        "}\n");
    CHECK(has_diagnostic(unit, "unsupported statement 'for'"));
    CHECK(has_diagnostic(unit, "unsupported statement 'try'"));
    CHECK(has_diagnostic(unit, "unsupported statement 'switch'"));
    // The following method still parses and records its call.
    REQUIRE(unit.type_decls[0].methods.size() == 4);
    const RawMethod& t = unit.type_decls[0].methods[3];
    REQUIRE(t.chains.size() == 1);
    CHECK(t.chains[0].base_name == "tail");
}

TEST_CASE("chains: bare calls, this-references, and locals") {
    const SyntaxUnit unit = parse(
        "class X {\n"
        "  A f;\n"
        "  void go() {\n"
        "    helper(1, 2);\n"
        "    this.f.pull();\n"
        "    A local = make();\n"
        "    local.use(f);\n"
        "  }\n"
        "}\n");
    const RawMethod& go = unit.type_decls[0].methods[0];
    REQUIRE(go.chains.size() >= 4);

    CHECK(go.chains[0].base == RawChain::Base::bare_call);
    CHECK(go.chains[0].base_name == "helper");
    CHECK(go.chains[0].base_arity == 2);

    CHECK(go.chains[1].base == RawChain::Base::this_ref);
    REQUIRE(go.chains[1].segments.size() == 2);
    CHECK(go.chains[1].segments[0].name == "f");
    CHECK(!go.chains[1].segments[0].call_arity.has_value());
    CHECK(go.chains[1].segments[1].name == "pull");
    CHECK(go.chains[1].segments[1].call_arity == 0);

    // `local.use(f)`: the base is an identifier with a registered local type.
    const RawChain& last = go.chains.back();
    CHECK(last.base == RawChain::Base::ident);
    CHECK(last.base_name == "local");
    REQUIRE(last.base_local_type.has_value());
    CHECK(*last.base_local_type == "A");
    REQUIRE(last.segments.size() == 1);
    CHECK(last.segments[0].call_arity == 1);
}

TEST_CASE("nested call arguments record their own chains and the outer arity") {
    const SyntaxUnit unit = parse(
        "class X { void go() { outer.left(inner.right(), 3); } }");
    const RawMethod& go = unit.type_decls[0].methods[0];
    REQUIRE(go.chains.size() == 2);
    bool saw_outer = false;
    bool saw_inner = false;
    for (const RawChain& chain : go.chains) {
        if (chain.base_name == "outer") {
            REQUIRE(chain.segments.size() == 1);
            CHECK(chain.segments[0].call_arity == 2);
            saw_outer = true;
        }
        if (chain.base_name == "inner") {
            REQUIRE(chain.segments.size() == 1);
            CHECK(chain.segments[0].call_arity == 0);
            saw_inner = true;
        }
    }
    CHECK(saw_outer);
    CHECK(saw_inner);
}

TEST_CASE("if/while statements with else branches") {
    const SyntaxUnit unit = parse(
        "class X {\n"
        "  void go(int n) {\n"
        "    if (n > 0) { a.hit(); } else { b.miss(); }\n"
        "    while (n > 0) { n = n - 1; c.tick(n); }\n"
        "  }\n"
        "}\n");
    CHECK(error_count(unit) == 0);
    const RawMethod& go = unit.type_decls[0].methods[0];
    std::vector<std::string> names;
    for (const RawChain& chain : go.chains) {
        if (!chain.segments.empty() && chain.segments[0].call_arity.has_value()) {
            names.push_back(chain.base_name + "." + chain.segments[0].name);
        }
    }
    CHECK(names == std::vector<std::string>{"a.hit", "b.miss", "c.tick"});
}

TEST_CASE("statement recovery: stray tokens cannot stall the block loop") {
    const SyntaxUnit unit = parse("class X { void f() { ) ; , } void g() {} }");
    CHECK(error_count(unit) > 0);
    CHECK(unit.type_decls[0].methods.size() == 2);
}

TEST_CASE("unbalanced braces at end of file are reported") {
    const SyntaxUnit unit = parse("class X { void f() { if (a) {");
    CHECK(error_count(unit) > 0);
    CHECK(has_diagnostic(unit, "unexpected end of file"));
}

TEST_CASE("parsing is deterministic") {
    const std::string source = read_file(support::test_data_dir() + "/malformed.java");
    const SyntaxUnit a = parse_source(source, "m.java");
    const SyntaxUnit b = parse_source(source, "m.java");
    const std::string model_a = export_model(build_model({a}));
    const std::string model_b = export_model(build_model({b}));
    CHECK(model_a == model_b);
    CHECK(a.diagnostics.size() == b.diagnostics.size());
}

TEST_CASE("malformed fixture: one bad method, neighbors survive") {
    const std::string source = read_file(support::test_data_dir() + "/malformed.java");
    const SyntaxUnit unit = parse_source(source, "malformed.java");
    CHECK(error_count(unit) > 0);
    REQUIRE(unit.type_decls.size() == 1);
    const RawTypeDecl& decl = unit.type_decls[0];
    bool saw_before = false;
    bool saw_after = false;
    for (const RawMethod& method : decl.methods) {
        saw_before = saw_before || method.name == "before";
        saw_after = saw_after || method.name == "after";
    }
    CHECK(saw_before);
    CHECK(saw_after);
}

TEST_CASE("lexer diagnostics are merged into the unit") {
    const SyntaxUnit unit = parse("class X { void f() { s = \"oops; } }");
    CHECK(has_diagnostic(unit, "unterminated string literal"));
}

TEST_CASE("generic usage parses after lexical stripping") {
    const SyntaxUnit unit = parse(
        "import java.util.List;\n"
        "class X {\n"
        "  List<A> items;\n"
        "  void add(List<A> more) { items = more; }\n"
        "}\n");
    const RawTypeDecl& decl = unit.type_decls[0];
    REQUIRE(decl.fields.size() == 1);
    CHECK(decl.fields[0].type_name == "List");
    CHECK(decl.methods[0].params[0].type_name == "List");
    CHECK(has_diagnostic(unit, "generic type arguments"));
}

}  // TEST_SUITE
