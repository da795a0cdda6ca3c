#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "ckm/errors.hpp"
#include "ckm/generator.hpp"
#include "ckm/model.hpp"
#include "ckm/model_io.hpp"
#include "support.hpp"

using namespace ckm;

TEST_SUITE("model") {

TEST_CASE("from_classes canonicalizes ordering regardless of insertion order") {
    ClassInfo a = support::cls("pkg.A", {"pkg.B"});
    ClassInfo b = support::cls("pkg.B");
    b.methods.push_back(support::method("m", {}, "void", {}));
    b.methods.push_back(support::method("a", {}, "void", {}));

    const ClassModel one = ClassModel::from_classes({a, b});
    const ClassModel two = ClassModel::from_classes({b, a});
    CHECK(one == two);
    CHECK(export_model(one) == export_model(two));

    REQUIRE(one.classes().size() == 2);
    CHECK(one.classes()[0].fqn == "pkg.A");
    CHECK(one.classes()[1].fqn == "pkg.B");
    // Methods sort by (name, arity).
    CHECK(one.classes()[1].methods[0].name == "a");
    CHECK(one.classes()[1].methods[1].name == "m");
}

TEST_CASE("find and packages") {
    const ClassModel model = ClassModel::from_classes(
        {support::cls("p.A"), support::cls("q.B"), support::stub("ext.C")});
    CHECK(model.find("p.A") != nullptr);
    CHECK(model.find("none") == nullptr);
    const std::vector<std::string> packages = model.packages();
    // External stubs contribute no package.
    CHECK(packages == std::vector<std::string>{"p", "q"});
}

TEST_CASE("inheritance_edges lists child-parent pairs") {
    const ClassModel model = ClassModel::from_classes(
        {support::cls("A"), support::cls("B", {"A"}), support::cls("C", {"A", "B"})});
    const auto edges = model.inheritance_edges();
    REQUIRE(edges.size() == 3);
    CHECK(std::count(edges.begin(), edges.end(), std::make_pair(std::string("C"),
                                                                std::string("B"))) == 1);
}

TEST_CASE("validate: empty model is vacuously valid") {
    CHECK(validate(ClassModel{}).empty());
}

TEST_CASE("validate: two-class inheritance cycle yields one error naming the cycle") {
    const ClassModel model =
        ClassModel::from_classes({support::cls("A", {"B"}), support::cls("B", {"A"})});
    const std::vector<Diagnostic> issues = validate(model);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].severity == Severity::error);
    CHECK(issues[0].message.find("inheritance cycle") != std::string::npos);
    CHECK(issues[0].message.find("A") != std::string::npos);
    CHECK(issues[0].message.find("B") != std::string::npos);
}

TEST_CASE("validate: one duplicated FQN in a 50-class generated model is one error") {
    GenSpec spec;
    spec.seed = 11;
    spec.n_classes = 50;
    spec.n_packages = 3;
    const ClassModel clean = generate(spec);
    CHECK(validate(clean).empty());

    std::vector<ClassInfo> classes = clean.classes();
    // Duplicate one in-corpus class under a fresh copy of itself.
    const auto victim = std::find_if(classes.begin(), classes.end(),
                                     [](const ClassInfo& c) { return !c.is_external; });
    REQUIRE(victim != classes.end());
    const std::string victim_fqn = victim->fqn;
    classes.push_back(*victim);
    const ClassModel broken = ClassModel::from_classes(classes);
    const std::vector<Diagnostic> issues = validate(broken);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].message.find("duplicate") != std::string::npos);
    CHECK(issues[0].message.find(victim_fqn) != std::string::npos);
}

TEST_CASE("validate: referenced-but-missing parent is reported") {
    const ClassModel model = ClassModel::from_classes({support::cls("A", {"Ghost"})});
    const std::vector<Diagnostic> issues = validate(model);
    REQUIRE(!issues.empty());
    CHECK(issues[0].message.find("Ghost") != std::string::npos);
}

TEST_CASE("validate: external stub with members is rejected") {
    ClassInfo bad = support::stub("ext.X");
    bad.fields.push_back(support::field("f", "int"));
    const ClassModel model = ClassModel::from_classes({bad});
    CHECK(!validate(model).empty());
}

TEST_CASE("validate: attributes_used must name visible fields") {
    ClassInfo cls = support::cls("A", {}, {support::field("real", "int")},
                                 {support::method("m", {}, "void", {"ghost"})});
    const ClassModel model = ClassModel::from_classes({cls});
    const std::vector<Diagnostic> issues = validate(model);
    REQUIRE(!issues.empty());
    CHECK(issues[0].message.find("ghost") != std::string::npos);

    // Inherited fields are visible.
    ClassInfo base = support::cls("Base", {}, {support::field("inherited", "int")});
    ClassInfo child = support::cls("Child", {"Base"}, {},
                                   {support::method("m", {}, "void", {"inherited"})});
    CHECK(validate(ClassModel::from_classes({base, child})).empty());
}

TEST_CASE("validate: resolved call must exist on target or ancestor") {
    ClassInfo target = support::cls("T", {}, {}, {support::method("real", {}, "void", {})});
    ClassInfo caller = support::cls(
        "C", {}, {},
        {support::method("m", {}, "void", {}, {support::call("T", "missing", 0, true)})});
    CHECK(!validate(ClassModel::from_classes({target, caller})).empty());

    ClassInfo ok_caller = support::cls(
        "C", {}, {},
        {support::method("m", {}, "void", {}, {support::call("T", "real", 0, true)})});
    CHECK(validate(ClassModel::from_classes({target, ok_caller})).empty());

    // Unresolved calls carry no such obligation.
    ClassInfo loose = support::cls(
        "C", {}, {},
        {support::method("m", {}, "void", {}, {support::call("T", "missing", 0, false)})});
    CHECK(validate(ClassModel::from_classes({target, loose})).empty());
}

TEST_CASE("ancestors_of walks nearest-first and keeps external ancestors unexpanded") {
    const ClassModel model = ClassModel::from_classes(
        {support::cls("A", {"B", "ext.X"}), support::cls("B", {"C"}), support::cls("C"),
         support::stub("ext.X")});
    const std::vector<const ClassInfo*> up = ancestors_of(model, "A");
    REQUIRE(up.size() == 3);
    CHECK(up[0]->fqn == "B");
    CHECK(up[1]->fqn == "ext.X");
    CHECK(up[2]->fqn == "C");
}

TEST_CASE("export/import: round trip restores an equal model") {
    const ClassModel model = support::worked_example();
    const std::string doc = export_model(model);
    CHECK(import_model(doc) == model);
    // Determinism: exporting twice is byte-identical.
    CHECK(export_model(model) == doc);
}

TEST_CASE("export/import: generated models round trip") {
    for (std::uint64_t i = 0; i < 25; ++i) {
        const ClassModel model = generate(support::sweep_spec(i));
        const ClassModel back = import_model(export_model(model));
        CHECK(back == model);
    }
}

TEST_CASE("export refuses an invalid model and carries the diagnostics") {
    const ClassModel cyclic =
        ClassModel::from_classes({support::cls("A", {"B"}), support::cls("B", {"A"})});
    CHECK_THROWS_AS((void)export_model(cyclic), ValidationError);
    try {
        (void)export_model(cyclic);
    } catch (const ValidationError& e) {
        CHECK(!e.diagnostics().empty());
    }
}

TEST_CASE("import: truncated document raises a position-bearing parse error") {
    const std::string doc = export_model(support::worked_example());
    const std::string truncated = doc.substr(0, doc.size() / 2);
    CHECK_THROWS_AS((void)import_model(truncated), ModelParseError);
    try {
        (void)import_model(truncated);
    } catch (const ModelParseError& e) {
        // nlohmann reports the byte offset of the failure.
        CHECK(std::string(e.what()).find_first_of("0123456789") != std::string::npos);
    }
}

TEST_CASE("import: schema violations are rejected") {
    CHECK_THROWS_AS((void)import_model("[]"), ModelParseError);
    CHECK_THROWS_AS((void)import_model(R"({"version": 2, "classes": []})"), ModelParseError);
    CHECK_THROWS_AS((void)import_model(R"({"version": 1})"), ModelParseError);
    CHECK_THROWS_AS((void)import_model(R"({"version": 1, "classes": [], "extra": 1})"),
                    ModelParseError);
    CHECK_THROWS_AS(
        (void)import_model(
            R"({"version": 1, "classes": [{"fqn": "A", "package": "", "kind": "class"}], "classes2": []})"),
        ModelParseError);
}

TEST_CASE("import: schema-valid but invariant-violating content raises validation diagnostics") {
    const std::string doc = R"({
      "version": 1,
      "classes": [
        {"fqn": "A", "package": "", "kind": "class", "external": false,
         "parents": ["B"], "fields": [], "methods": []},
        {"fqn": "B", "package": "", "kind": "class", "external": false,
         "parents": ["A"], "fields": [], "methods": []}
      ]
    })";
    try {
        (void)import_model(doc);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        // The A<->B parent cycle is one violation, and the message counts it.
        CHECK(e.diagnostics().size() == 1);
        CHECK(std::string(e.what()).find("1 invariant(s)") != std::string::npos);
    }
}

TEST_CASE("import: missing optional member fields default sensibly") {
    const std::string doc = R"({
      "version": 1,
      "classes": [
        {"fqn": "A", "package": "", "kind": "class",
         "methods": [{"name": "m", "params": ["int"]}]}
      ]
    })";
    const ClassModel model = import_model(doc);
    REQUIRE(model.classes().size() == 1);
    const MethodInfo& m = model.classes()[0].methods[0];
    CHECK(m.arity == 1);
    CHECK(m.return_type == "void");
    CHECK(m.attributes_used.empty());
    CHECK(m.calls.empty());
}

TEST_CASE("helpers: is_primitive, simple_name, package_of") {
    CHECK(is_primitive("int"));
    CHECK(is_primitive("void"));
    CHECK(!is_primitive("Integer"));
    CHECK(simple_name("a.b.C") == "C");
    CHECK(simple_name("C") == "C");
    CHECK(package_of("a.b.C") == "a.b");
    CHECK(package_of("C") == "");
}

}  // TEST_SUITE
