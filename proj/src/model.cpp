#include "ckm/model.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace ckm {

namespace {

const char* kValidateFile = "<model>";

Diagnostic violation(std::string message) {
  return Diagnostic{Severity::error, {kValidateFile, 1, 1}, std::move(message)};
}

}  // namespace

bool CallSite::operator<(const CallSite& other) const {
  return std::tie(target_class, target_method, arity, resolved) <
         std::tie(other.target_class, other.target_method, other.arity, other.resolved);
}

bool is_primitive(std::string_view type) {
  static constexpr std::array<std::string_view, 9> kPrimitives = {
      "void", "boolean", "byte", "short", "int", "long", "char", "float", "double"};
  return std::find(kPrimitives.begin(), kPrimitives.end(), type) != kPrimitives.end();
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; };
  auto tail = [&](char c) { return head(c) || std::isdigit(static_cast<unsigned char>(c)); };
  if (!head(text.front())) return false;
  return std::all_of(text.begin() + 1, text.end(), tail);
}

std::string simple_name(std::string_view fqn) {
  auto pos = fqn.rfind('.');
  return std::string(pos == std::string_view::npos ? fqn : fqn.substr(pos + 1));
}

std::string package_of(std::string_view fqn) {
  auto pos = fqn.rfind('.');
  return std::string(pos == std::string_view::npos ? std::string_view{} : fqn.substr(0, pos));
}

ClassModel ClassModel::from_classes(std::vector<ClassInfo> classes,
                                    std::vector<Diagnostic> diagnostics) {
  for (ClassInfo& cls : classes) {
    std::sort(cls.parents.begin(), cls.parents.end());
    cls.parents.erase(std::unique(cls.parents.begin(), cls.parents.end()), cls.parents.end());
    std::stable_sort(cls.fields.begin(), cls.fields.end(),
                     [](const FieldInfo& a, const FieldInfo& b) { return a.name < b.name; });
    std::stable_sort(cls.methods.begin(), cls.methods.end(),
                     [](const MethodInfo& a, const MethodInfo& b) {
                       return std::tie(a.name, a.arity) < std::tie(b.name, b.arity);
                     });
    for (MethodInfo& method : cls.methods) {
      std::sort(method.attributes_used.begin(), method.attributes_used.end());
      method.attributes_used.erase(
          std::unique(method.attributes_used.begin(), method.attributes_used.end()),
          method.attributes_used.end());
      std::sort(method.calls.begin(), method.calls.end());
      method.calls.erase(std::unique(method.calls.begin(), method.calls.end()),
                         method.calls.end());
    }
  }
  std::stable_sort(classes.begin(), classes.end(),
                   [](const ClassInfo& a, const ClassInfo& b) { return a.fqn < b.fqn; });
  std::sort(diagnostics.begin(), diagnostics.end(), diagnostic_order);

  ClassModel model;
  model.classes_ = std::move(classes);
  model.diagnostics_ = std::move(diagnostics);
  return model;
}

const ClassInfo* ClassModel::find(std::string_view fqn) const {
  auto it = std::lower_bound(classes_.begin(), classes_.end(), fqn,
                             [](const ClassInfo& cls, std::string_view key) { return cls.fqn < key; });
  if (it != classes_.end() && it->fqn == fqn) return &*it;
  return nullptr;
}

std::vector<std::string> ClassModel::packages() const {
  std::set<std::string> names;
  for (const ClassInfo& cls : classes_) {
    if (!cls.is_external) names.insert(cls.package);
  }
  return {names.begin(), names.end()};
}

std::vector<std::pair<std::string, std::string>> ClassModel::inheritance_edges() const {
  std::vector<std::pair<std::string, std::string>> edges;
  for (const ClassInfo& cls : classes_) {
    for (const std::string& parent : cls.parents) edges.emplace_back(cls.fqn, parent);
  }
  return edges;
}

std::vector<const ClassInfo*> ancestors_of(const ClassModel& model, std::string_view fqn) {
  std::vector<const ClassInfo*> result;
  std::unordered_set<std::string> visited{std::string(fqn)};
  std::deque<const ClassInfo*> queue;

  auto enqueue_parents = [&](const ClassInfo& cls) {
    for (const std::string& parent : cls.parents) {
      if (!visited.insert(parent).second) continue;
      if (const ClassInfo* p = model.find(parent)) queue.push_back(p);
    }
  };

  const ClassInfo* self = model.find(fqn);
  if (!self) return result;
  enqueue_parents(*self);
  while (!queue.empty()) {
    const ClassInfo* cls = queue.front();
    queue.pop_front();
    result.push_back(cls);
    enqueue_parents(*cls);
  }
  return result;
}

std::vector<std::string> visible_field_names(const ClassModel& model, const ClassInfo& cls) {
  std::set<std::string> names;
  for (const FieldInfo& field : cls.fields) names.insert(field.name);
  for (const ClassInfo* ancestor : ancestors_of(model, cls.fqn)) {
    for (const FieldInfo& field : ancestor->fields) names.insert(field.name);
  }
  return {names.begin(), names.end()};
}

bool method_visible(const ClassModel& model, std::string_view fqn, std::string_view name,
                    int arity) {
  auto declares = [&](const ClassInfo& cls) {
    return std::any_of(cls.methods.begin(), cls.methods.end(), [&](const MethodInfo& m) {
      return m.name == name && m.arity == arity;
    });
  };
  const ClassInfo* self = model.find(fqn);
  if (!self) return false;
  if (declares(*self)) return true;
  for (const ClassInfo* ancestor : ancestors_of(model, fqn)) {
    if (declares(*ancestor)) return true;
  }
  return false;
}

bool ancestry_has_external(const ClassModel& model, std::string_view fqn) {
  const ClassInfo* self = model.find(fqn);
  if (!self) return false;
  if (self->is_external) return true;
  for (const ClassInfo* ancestor : ancestors_of(model, fqn)) {
    if (ancestor->is_external) return true;
  }
  return false;
}

namespace {

bool fqn_well_formed(const std::string& fqn) {
  size_t start = 0;
  while (true) {
    size_t dot = fqn.find('.', start);
    std::string_view segment(fqn.data() + start,
                             (dot == std::string::npos ? fqn.size() : dot) - start);
    if (!is_identifier(segment)) return false;
    if (dot == std::string::npos) return true;
    start = dot + 1;
  }
}

void check_type_reference(const ClassModel& model, const std::string& type,
                          const std::string& context, std::vector<Diagnostic>& out) {
  if (is_primitive(type)) return;
  if (!model.find(type)) {
    out.push_back(violation("unknown type '" + type + "' referenced by " + context));
  }
}

// DFS cycle detection over in-model parent edges; one diagnostic per cycle.
class CycleFinder {
 public:
  explicit CycleFinder(const ClassModel& model) : model_(model) {}

  std::vector<Diagnostic> run() {
    for (const ClassInfo& cls : model_.classes()) visit(cls.fqn);
    return std::move(found_);
  }

 private:
  enum class Color { white, gray, black };

  void visit(const std::string& fqn) {
    Color& color = colors_[fqn];
    if (color != Color::white) return;
    color = Color::gray;
    stack_.push_back(fqn);
    if (const ClassInfo* cls = model_.find(fqn)) {
      for (const std::string& parent : cls->parents) {
        auto it = colors_.find(parent);
        if (it != colors_.end() && it->second == Color::gray) {
          report_cycle(parent);
        } else {
          visit(parent);
        }
      }
    }
    stack_.pop_back();
    colors_[fqn] = Color::black;
  }

  void report_cycle(const std::string& back_to) {
    auto start = std::find(stack_.begin(), stack_.end(), back_to);
    std::ostringstream msg;
    msg << "inheritance cycle: ";
    for (auto it = start; it != stack_.end(); ++it) msg << *it << " -> ";
    msg << back_to;
    found_.push_back(violation(msg.str()));
  }

  const ClassModel& model_;
  std::unordered_map<std::string, Color> colors_;
  std::vector<std::string> stack_;
  std::vector<Diagnostic> found_;
};

}  // namespace

std::vector<Diagnostic> validate(const ClassModel& model) {
  std::vector<Diagnostic> out;

  const std::vector<ClassInfo>& classes = model.classes();
  for (size_t i = 1; i < classes.size(); ++i) {
    if (classes[i].fqn == classes[i - 1].fqn) {
      out.push_back(violation("duplicate class '" + classes[i].fqn + "'"));
    }
  }

  for (const ClassInfo& cls : classes) {
    if (!fqn_well_formed(cls.fqn)) {
      out.push_back(violation("malformed class name '" + cls.fqn + "'"));
      continue;
    }
    if (package_of(cls.fqn) != cls.package) {
      out.push_back(violation("class '" + cls.fqn + "' declares package '" + cls.package +
                              "' inconsistent with its qualified name"));
    }
    if (cls.is_external && (!cls.fields.empty() || !cls.methods.empty())) {
      out.push_back(violation("external stub '" + cls.fqn + "' must not declare members"));
    }

    for (const std::string& parent : cls.parents) {
      if (!model.find(parent)) {
        out.push_back(violation("unknown parent '" + parent + "' of '" + cls.fqn + "'"));
      }
    }

    std::set<std::string> field_names;
    for (const FieldInfo& field : cls.fields) {
      if (!is_identifier(field.name)) {
        out.push_back(violation("malformed field name '" + field.name + "' in '" + cls.fqn + "'"));
        continue;
      }
      if (!field_names.insert(field.name).second) {
        out.push_back(violation("duplicate field '" + field.name + "' in '" + cls.fqn + "'"));
      }
      check_type_reference(model, field.declared_type,
                           "field '" + field.name + "' of '" + cls.fqn + "'", out);
    }

    std::vector<std::string> visible = visible_field_names(model, cls);
    std::set<std::pair<std::string, int>> method_ids;
    for (const MethodInfo& method : cls.methods) {
      std::string method_id = cls.fqn + "." + method.name + "/" + std::to_string(method.arity);
      if (!is_identifier(method.name)) {
        out.push_back(violation("malformed method name '" + method.name + "' in '" + cls.fqn + "'"));
        continue;
      }
      if (!method_ids.insert({method.name, method.arity}).second) {
        out.push_back(violation("duplicate method '" + method.name + "/" +
                                std::to_string(method.arity) + "' in '" + cls.fqn + "'"));
      }
      if (method.arity < 0 ||
          method.arity != static_cast<int>(method.param_types.size())) {
        out.push_back(violation("arity of '" + method_id + "' disagrees with its parameter list"));
      }
      for (const std::string& param : method.param_types) {
        check_type_reference(model, param, "parameter of '" + method_id + "'", out);
      }
      check_type_reference(model, method.return_type, "return type of '" + method_id + "'", out);

      for (const std::string& attribute : method.attributes_used) {
        if (!std::binary_search(visible.begin(), visible.end(), attribute)) {
          out.push_back(violation("attribute '" + attribute + "' used by '" + method_id +
                                  "' is not a field of '" + cls.fqn + "' or its ancestors"));
        }
      }

      for (const CallSite& call : method.calls) {
        if (call.arity < 0) {
          out.push_back(violation("negative arity call in '" + method_id + "'"));
          continue;
        }
        if (!call.target_class.empty() && !model.find(call.target_class)) {
          out.push_back(violation("call target '" + call.target_class + "' of '" + method_id +
                                  "' is not in the model"));
          continue;
        }
        if (call.resolved) {
          if (call.target_class.empty()) {
            out.push_back(violation("resolved call in '" + method_id + "' lacks a target class"));
          } else if (!method_visible(model, call.target_class, call.target_method, call.arity) &&
                     !ancestry_has_external(model, call.target_class)) {
            out.push_back(violation("resolved call '" + call.target_class + "." +
                                    call.target_method + "/" + std::to_string(call.arity) +
                                    "' in '" + method_id + "' has no such method"));
          }
        }
      }
    }
  }

  for (Diagnostic& diag : CycleFinder(model).run()) out.push_back(std::move(diag));

  for (const Diagnostic& diag : model.diagnostics()) {
    if (diag.location.line < 1 || diag.location.column < 1) {
      out.push_back(violation("diagnostic with out-of-range location: " + diag.message));
    }
  }

  return out;
}

}  // namespace ckm
