#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ckm/diagnostics.hpp"

namespace ckm {

enum class ClassKind { Class, Interface };

struct FieldInfo {
  std::string name;
  std::string declared_type;  // class FQN or primitive tag

  bool operator==(const FieldInfo&) const = default;
};

/// One method invocation recorded in a method body. An empty target_class
/// means the receiver could not be typed.
struct CallSite {
  std::string target_class;
  std::string target_method;
  int arity = 0;
  bool resolved = false;

  bool operator==(const CallSite&) const = default;
  bool operator<(const CallSite& other) const;
};

struct MethodInfo {
  std::string name;
  int arity = 0;
  std::vector<std::string> param_types;
  std::string return_type = "void";
  std::vector<std::string> attributes_used;  // sorted, unique; the instance set
  std::vector<CallSite> calls;               // sorted, unique

  bool operator==(const MethodInfo&) const = default;
};

struct ClassInfo {
  std::string fqn;
  std::string package;
  ClassKind kind = ClassKind::Class;
  bool is_external = false;
  std::vector<std::string> parents;  // sorted, unique
  std::vector<FieldInfo> fields;     // sorted by name
  std::vector<MethodInfo> methods;   // sorted by (name, arity)

  bool operator==(const ClassInfo&) const = default;
};

/// Immutable whole-program class graph. Construction canonicalizes the
/// content (classes sorted by FQN, member lists sorted) so that equal
/// models compare equal and export byte-identically regardless of the
/// order facts were collected in.
class ClassModel {
 public:
  ClassModel() = default;

  static ClassModel from_classes(std::vector<ClassInfo> classes,
                                 std::vector<Diagnostic> diagnostics = {});

  const std::vector<ClassInfo>& classes() const { return classes_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

  /// Lookup by FQN; nullptr when absent.
  const ClassInfo* find(std::string_view fqn) const;

  /// Distinct packages of non-external classes, sorted.
  std::vector<std::string> packages() const;

  /// (child, parent) pairs derived from every class's parent list.
  std::vector<std::pair<std::string, std::string>> inheritance_edges() const;

  bool empty() const { return classes_.empty(); }

  /// Structural equality over class content; diagnostics do not participate.
  bool operator==(const ClassModel& other) const { return classes_ == other.classes_; }

 private:
  std::vector<ClassInfo> classes_;  // sorted by fqn; duplicates representable so validate can flag them
  std::vector<Diagnostic> diagnostics_;
};

/// Checks every structural invariant; returns one diagnostic per violation.
std::vector<Diagnostic> validate(const ClassModel& model);

bool is_primitive(std::string_view type);
bool is_identifier(std::string_view text);

std::string simple_name(std::string_view fqn);
std::string package_of(std::string_view fqn);

/// In-corpus ancestors of `fqn` in breadth-first order (nearest first,
/// ties by FQN). Cycle-safe; external ancestors appear but are not expanded.
std::vector<const ClassInfo*> ancestors_of(const ClassModel& model, std::string_view fqn);

/// Field names visible inside `cls`: its own plus those of in-corpus ancestors.
std::vector<std::string> visible_field_names(const ClassModel& model, const ClassInfo& cls);

/// True when (name, arity) is declared on `fqn` or any in-corpus ancestor.
bool method_visible(const ClassModel& model, std::string_view fqn, std::string_view name, int arity);

/// True when `fqn` or any of its ancestors is an external stub.
bool ancestry_has_external(const ClassModel& model, std::string_view fqn);

}  // namespace ckm
