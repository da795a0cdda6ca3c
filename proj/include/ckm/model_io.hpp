#pragma once

#include <string>
#include <string_view>

#include "ckm/model.hpp"

namespace ckm {

/// Serializes a valid model to its canonical JSON document. Equal models
/// produce byte-identical output. Throws ValidationError when the model
/// fails validate().
std::string export_model(const ClassModel& model);

/// Parses a model document. Throws ModelParseError for malformed or
/// schema-violating input (with position info for syntax errors) and
/// ValidationError when the content breaks a model invariant.
ClassModel import_model(std::string_view text);

}  // namespace ckm
