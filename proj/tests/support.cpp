#include "support.hpp"

#include <map>

namespace support {
namespace {

bool primitive_or_void(const std::string& name) { return ckm::is_primitive(name); }

std::string simple(const std::string& fqn) { return std::string(ckm::simple_name(fqn)); }

}  // namespace

ckm::ClassModel rename_model(const ckm::ClassModel& model, const std::string& class_prefix,
                             const std::string& member_prefix) {
    // New FQN: keep the package, prefix the simple name. Externals keep
    // their names (they model code outside the rename's reach).
    std::map<std::string, std::string> class_map;
    for (const ckm::ClassInfo& cls : model.classes()) {
        if (cls.is_external) {
            class_map[cls.fqn] = cls.fqn;
        } else {
            const std::string pkg = std::string(ckm::package_of(cls.fqn));
            class_map[cls.fqn] =
                (pkg.empty() ? "" : pkg + ".") + class_prefix + simple(cls.fqn);
        }
    }
    auto map_type = [&](const std::string& name) -> std::string {
        if (name.empty() || primitive_or_void(name)) {
            return name;
        }
        auto it = class_map.find(name);
        return it == class_map.end() ? name : it->second;
    };

    std::vector<ckm::ClassInfo> renamed;
    for (const ckm::ClassInfo& cls : model.classes()) {
        ckm::ClassInfo out = cls;
        out.fqn = class_map.at(cls.fqn);
        out.package = ckm::package_of(out.fqn);
        for (std::string& parent : out.parents) {
            parent = map_type(parent);
        }
        for (ckm::FieldInfo& field : out.fields) {
            field.name = member_prefix + field.name;
            field.declared_type = map_type(field.declared_type);
        }
        for (ckm::MethodInfo& method : out.methods) {
            const bool ctor = method.name == simple(cls.fqn);
            method.name = ctor ? simple(out.fqn) : member_prefix + method.name;
            for (std::string& param : method.param_types) {
                param = map_type(param);
            }
            method.return_type = map_type(method.return_type);
            for (std::string& attr : method.attributes_used) {
                attr = member_prefix + attr;
            }
            for (ckm::CallSite& call : method.calls) {
                const std::string old_target = call.target_class;
                call.target_class = map_type(call.target_class);
                if (!call.target_class.empty()) {
                    const ckm::ClassInfo* target = model.find(old_target);
                    const bool target_external = target != nullptr && target->is_external;
                    const bool ctor_call = target != nullptr &&
                                           call.target_method == simple(old_target);
                    if (ctor_call) {
                        call.target_method = simple(call.target_class);
                    } else if (!target_external) {
                        call.target_method = member_prefix + call.target_method;
                    }
                }
            }
        }
        renamed.push_back(std::move(out));
    }
    return ckm::ClassModel::from_classes(renamed, model.diagnostics());
}

ckm::ClassModel merge_prefixed(const std::vector<ckm::ClassModel>& models) {
    std::vector<ckm::ClassInfo> merged;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const std::string prefix = "s" + std::to_string(i) + ".";
        auto map_type = [&](const std::string& name) -> std::string {
            if (name.empty() || primitive_or_void(name)) {
                return name;
            }
            return prefix + name;
        };
        for (const ckm::ClassInfo& cls : models[i].classes()) {
            ckm::ClassInfo out = cls;
            out.fqn = prefix + cls.fqn;
            out.package = ckm::package_of(out.fqn);
            for (std::string& parent : out.parents) {
                parent = map_type(parent);
            }
            for (ckm::FieldInfo& field : out.fields) {
                field.declared_type = map_type(field.declared_type);
            }
            for (ckm::MethodInfo& method : out.methods) {
                // Constructors must keep tracking the class's simple name,
                // which the package-style prefix leaves untouched.
                for (std::string& param : method.param_types) {
                    param = map_type(param);
                }
                method.return_type = map_type(method.return_type);
                for (ckm::CallSite& call : method.calls) {
                    if (!call.target_class.empty()) {
                        call.target_class = map_type(call.target_class);
                    }
                }
            }
            merged.push_back(std::move(out));
        }
    }
    return ckm::ClassModel::from_classes(merged);
}

}  // namespace support
