#pragma once

// Shared helpers for the test suites: terse model construction, a
// structure-preserving renamer, the generator-parameter sweep used by the
// randomized suites, and a working-directory guard for golden-file tests
// that rely on repository-relative paths.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ckm/generator.hpp"
#include "ckm/model.hpp"

#ifndef CKM_FIXTURE_DIR
#define CKM_FIXTURE_DIR ""
#endif
#ifndef CKM_TEST_DATA_DIR
#define CKM_TEST_DATA_DIR ""
#endif
#ifndef CKM_REPO_ROOT
#define CKM_REPO_ROOT ""
#endif

namespace support {

inline std::string fixture_dir() { return CKM_FIXTURE_DIR; }
inline std::string test_data_dir() { return CKM_TEST_DATA_DIR; }
inline std::string repo_root() { return CKM_REPO_ROOT; }

/// Restores the previous working directory when destroyed.
class DirGuard {
  public:
    explicit DirGuard(const std::string& to) : previous_(std::filesystem::current_path()) {
        std::filesystem::current_path(to);
    }
    ~DirGuard() { std::filesystem::current_path(previous_); }
    DirGuard(const DirGuard&) = delete;
    DirGuard& operator=(const DirGuard&) = delete;

  private:
    std::filesystem::path previous_;
};

inline ckm::FieldInfo field(std::string name, std::string type) {
    ckm::FieldInfo f;
    f.name = std::move(name);
    f.declared_type = std::move(type);
    return f;
}

inline ckm::CallSite call(std::string cls, std::string method, int arity, bool resolved = true) {
    ckm::CallSite c;
    c.target_class = std::move(cls);
    c.target_method = std::move(method);
    c.arity = arity;
    c.resolved = resolved;
    return c;
}

inline ckm::MethodInfo method(std::string name, std::vector<std::string> params,
                              std::string returns, std::vector<std::string> uses,
                              std::vector<ckm::CallSite> calls = {}) {
    ckm::MethodInfo m;
    m.name = std::move(name);
    m.param_types = std::move(params);
    m.arity = static_cast<int>(m.param_types.size());
    m.return_type = std::move(returns);
    m.attributes_used = std::move(uses);
    m.calls = std::move(calls);
    return m;
}

inline ckm::ClassInfo cls(std::string fqn, std::vector<std::string> parents = {},
                          std::vector<ckm::FieldInfo> fields = {},
                          std::vector<ckm::MethodInfo> methods = {},
                          ckm::ClassKind kind = ckm::ClassKind::Class, bool external = false) {
    ckm::ClassInfo c;
    c.fqn = std::move(fqn);
    c.package = ckm::package_of(c.fqn);
    c.kind = kind;
    c.is_external = external;
    c.parents = std::move(parents);
    c.fields = std::move(fields);
    c.methods = std::move(methods);
    return c;
}

inline ckm::ClassInfo stub(std::string fqn) {
    return cls(std::move(fqn), {}, {}, {}, ckm::ClassKind::Class, /*external=*/true);
}

/// The textbook worked example: one class with methods M1/M2/M3 over
/// attribute sets {a,b,c,d}, {a,b,c}, {x,y,z}.
inline ckm::ClassModel worked_example() {
    std::vector<ckm::FieldInfo> fields;
    for (const char* name : {"a", "b", "c", "d", "x", "y", "z"}) {
        fields.push_back(field(name, "int"));
    }
    std::vector<ckm::MethodInfo> methods;
    methods.push_back(method("M1", {}, "void", {"a", "b", "c", "d"}));
    methods.push_back(method("M2", {}, "void", {"a", "b", "c"}));
    methods.push_back(method("M3", {}, "void", {"x", "y", "z"}));
    return ckm::ClassModel::from_classes({cls("Sample", {}, fields, methods)});
}

/// A varied sweep of generator parameters for randomized suites. `index`
/// steers every knob so the population covers tiny and busy models alike.
inline ckm::GenSpec sweep_spec(std::uint64_t index, int max_classes = 12, int max_methods = 8) {
    ckm::GenSpec spec;
    spec.seed = 0x1000 + index;
    spec.n_classes = static_cast<int>(index % static_cast<std::uint64_t>(max_classes)) + 1;
    spec.n_packages = static_cast<int>(index % 3) + 1;
    spec.max_methods = static_cast<int>(index % static_cast<std::uint64_t>(max_methods)) + 1;
    spec.max_fields = static_cast<int>(index % 5) + 1;
    spec.inheritance_prob = 0.15 * static_cast<double>(index % 5);
    spec.cross_class_call_prob = 0.2 * static_cast<double>(index % 6);
    spec.attribute_sharing = 0.25 * static_cast<double>(index % 4);
    return spec;
}

/// Applies a consistent structure-preserving rename: every in-corpus class
/// FQN, field, and method name gains a prefix, with constructor names kept
/// aligned to their class's new simple name and every cross-reference
/// (parents, types, call targets) rewritten to match.
ckm::ClassModel rename_model(const ckm::ClassModel& model, const std::string& class_prefix,
                             const std::string& member_prefix);

/// Merges several models into one corpus, prefixing each model's classes
/// (externals included) with "s<i>." so FQNs never collide.
ckm::ClassModel merge_prefixed(const std::vector<ckm::ClassModel>& models);

}  // namespace support
