#include "ckm/model_io.hpp"

#include <json.hpp>

#include "ckm/errors.hpp"

namespace ckm {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json call_to_json(const CallSite& call) {
  ordered_json node;
  node["class"] = call.target_class;
  node["method"] = call.target_method;
  node["arity"] = call.arity;
  node["resolved"] = call.resolved;
  return node;
}

ordered_json method_to_json(const MethodInfo& method) {
  ordered_json node;
  node["name"] = method.name;
  node["arity"] = method.arity;
  node["params"] = method.param_types;
  node["returns"] = method.return_type;
  node["uses"] = method.attributes_used;
  ordered_json calls = ordered_json::array();
  for (const CallSite& call : method.calls) calls.push_back(call_to_json(call));
  node["calls"] = std::move(calls);
  return node;
}

ordered_json class_to_json(const ClassInfo& cls) {
  ordered_json node;
  node["fqn"] = cls.fqn;
  node["package"] = cls.package;
  node["kind"] = cls.kind == ClassKind::Interface ? "interface" : "class";
  node["external"] = cls.is_external;
  node["parents"] = cls.parents;
  ordered_json fields = ordered_json::array();
  for (const FieldInfo& field : cls.fields) {
    ordered_json f;
    f["name"] = field.name;
    f["type"] = field.declared_type;
    fields.push_back(std::move(f));
  }
  node["fields"] = std::move(fields);
  ordered_json methods = ordered_json::array();
  for (const MethodInfo& method : cls.methods) methods.push_back(method_to_json(method));
  node["methods"] = std::move(methods);
  return node;
}

[[noreturn]] void fail(const std::string& context, const std::string& what) {
  throw ModelParseError("model document: " + context + ": " + what);
}

void reject_unknown_keys(const ordered_json& node, std::initializer_list<const char*> known,
                         const std::string& context) {
  for (const auto& item : node.items()) {
    bool ok = false;
    for (const char* key : known) ok = ok || item.key() == key;
    if (!ok) fail(context, "unknown key '" + item.key() + "'");
  }
}

template <typename T>
T get_or(const ordered_json& node, const char* key, T fallback, const std::string& context) {
  if (!node.contains(key)) return fallback;
  try {
    return node.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(context, std::string("wrong type for '") + key + "'");
  }
}

template <typename T>
T require(const ordered_json& node, const char* key, const std::string& context) {
  if (!node.contains(key)) fail(context, std::string("missing key '") + key + "'");
  try {
    return node.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(context, std::string("wrong type for '") + key + "'");
  }
}

CallSite call_from_json(const ordered_json& node, const std::string& context) {
  if (!node.is_object()) fail(context, "call entry must be an object");
  reject_unknown_keys(node, {"class", "method", "arity", "resolved"}, context);
  CallSite call;
  call.target_class = get_or<std::string>(node, "class", "", context);
  call.target_method = require<std::string>(node, "method", context);
  call.arity = get_or<int>(node, "arity", 0, context);
  call.resolved = get_or<bool>(node, "resolved", false, context);
  return call;
}

MethodInfo method_from_json(const ordered_json& node, const std::string& context) {
  if (!node.is_object()) fail(context, "method entry must be an object");
  reject_unknown_keys(node, {"name", "arity", "params", "returns", "uses", "calls"}, context);
  MethodInfo method;
  method.name = require<std::string>(node, "name", context);
  const std::string method_context = context + ".methods['" + method.name + "']";
  method.param_types = get_or<std::vector<std::string>>(node, "params", {}, method_context);
  method.arity = get_or<int>(node, "arity", static_cast<int>(method.param_types.size()),
                             method_context);
  method.return_type = get_or<std::string>(node, "returns", "void", method_context);
  method.attributes_used = get_or<std::vector<std::string>>(node, "uses", {}, method_context);
  if (node.contains("calls")) {
    const ordered_json& calls = node.at("calls");
    if (!calls.is_array()) fail(method_context, "'calls' must be an array");
    for (const ordered_json& call : calls) {
      method.calls.push_back(call_from_json(call, method_context));
    }
  }
  return method;
}

ClassInfo class_from_json(const ordered_json& node, size_t index) {
  std::string context = "classes[" + std::to_string(index) + "]";
  if (!node.is_object()) fail(context, "class entry must be an object");
  reject_unknown_keys(node, {"fqn", "package", "kind", "external", "parents", "fields", "methods"},
                      context);
  ClassInfo cls;
  cls.fqn = require<std::string>(node, "fqn", context);
  context = "class '" + cls.fqn + "'";
  cls.package = require<std::string>(node, "package", context);
  std::string kind = require<std::string>(node, "kind", context);
  if (kind == "class") {
    cls.kind = ClassKind::Class;
  } else if (kind == "interface") {
    cls.kind = ClassKind::Interface;
  } else {
    fail(context, "kind must be 'class' or 'interface', got '" + kind + "'");
  }
  cls.is_external = get_or<bool>(node, "external", false, context);
  cls.parents = get_or<std::vector<std::string>>(node, "parents", {}, context);
  if (node.contains("fields")) {
    const ordered_json& fields = node.at("fields");
    if (!fields.is_array()) fail(context, "'fields' must be an array");
    for (const ordered_json& field : fields) {
      if (!field.is_object()) fail(context, "field entry must be an object");
      reject_unknown_keys(field, {"name", "type"}, context);
      cls.fields.push_back(FieldInfo{require<std::string>(field, "name", context),
                                     require<std::string>(field, "type", context)});
    }
  }
  if (node.contains("methods")) {
    const ordered_json& methods = node.at("methods");
    if (!methods.is_array()) fail(context, "'methods' must be an array");
    for (const ordered_json& method : methods) {
      cls.methods.push_back(method_from_json(method, context));
    }
  }
  return cls;
}

}  // namespace

std::string export_model(const ClassModel& model) {
  std::vector<Diagnostic> problems = validate(model);
  if (!problems.empty()) {
    // Read the count before the constructor argument moves the vector out:
    // argument evaluation order is unspecified.
    const std::size_t count = problems.size();
    throw ValidationError(
        "cannot export invalid model (" + std::to_string(count) + " invariant violations)",
        std::move(problems));
  }
  ordered_json doc;
  doc["version"] = 1;
  ordered_json classes = ordered_json::array();
  for (const ClassInfo& cls : model.classes()) classes.push_back(class_to_json(cls));
  doc["classes"] = std::move(classes);
  return doc.dump(2) + "\n";
}

ClassModel import_model(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelParseError(e.what());
  }
  if (!doc.is_object()) throw ModelParseError("model document: top level must be an object");
  reject_unknown_keys(doc, {"version", "classes"}, "document");
  int version = require<int>(doc, "version", "document");
  if (version != 1) {
    throw ModelParseError("model document: unsupported version " + std::to_string(version));
  }
  if (!doc.contains("classes")) {
    throw ModelParseError("model document: missing key 'classes'");
  }
  const ordered_json& array = doc.at("classes");
  if (!array.is_array()) throw ModelParseError("model document: 'classes' must be an array");
  std::vector<ClassInfo> classes;
  for (size_t i = 0; i < array.size(); ++i) {
    classes.push_back(class_from_json(array[i], i));
  }
  ClassModel model = ClassModel::from_classes(std::move(classes));
  std::vector<Diagnostic> problems = validate(model);
  if (!problems.empty()) {
    const std::size_t count = problems.size();
    throw ValidationError("model document violates " + std::to_string(count) + " invariant(s)",
                          std::move(problems));
  }
  return model;
}

}  // namespace ckm
