// Python bindings for the ckm core: model construction (parse, generate,
// import), the metric suite, and report assembly. The ClassModel is exposed
// as an opaque handle; rows and edges cross the boundary as plain dicts so
// downstream code can feed them straight into dataframes or JSON.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ckm/builder.hpp"
#include "ckm/errors.hpp"
#include "ckm/generator.hpp"
#include "ckm/metrics.hpp"
#include "ckm/model.hpp"
#include "ckm/model_io.hpp"
#include "ckm/report.hpp"

namespace py = pybind11;

namespace {

ckm::MetricsOptions options_for(bool include_constructors) {
  ckm::MetricsOptions options;
  options.include_constructors = include_constructors;
  return options;
}

py::dict row_to_dict(const ckm::MetricsRow& row) {
  py::dict d;
  d["class"] = row.class_fqn;
  d["ce"] = row.ce;
  d["ca"] = row.ca;
  d["dit"] = row.dit;
  d["cbo"] = row.cbo;
  d["rfc"] = row.rfc;
  d["lcom1"] = row.lcom1;
  d["lcom2"] = row.lcom2;
  d["lcom3"] = row.lcom3;
  d["lcom4"] = row.lcom4;
  d["method_count"] = row.method_count;
  d["field_count"] = row.field_count;
  return d;
}

std::vector<std::string> rendered(const std::vector<ckm::Diagnostic>& diagnostics) {
  std::vector<std::string> lines;
  lines.reserve(diagnostics.size());
  for (const ckm::Diagnostic& d : diagnostics) lines.push_back(ckm::to_string(d));
  return lines;
}

ckm::ReportFormat format_from(const std::string& name) {
  if (name == "table") return ckm::ReportFormat::table;
  if (name == "json") return ckm::ReportFormat::json;
  if (name == "csv") return ckm::ReportFormat::csv;
  throw ckm::ConfigError("unknown report format '" + name + "' (expected table, json, or csv)");
}

}  // namespace

PYBIND11_MODULE(_ckm, m) {
  m.doc() =
      "Class-model metrics core: parse or generate a class model, compute "
      "the coupling and cohesion suite (Ce, Ca, DIT, CBO, RFC, LCOM1-4), "
      "and assemble correlation and threshold reports.";
  m.attr("__version__") = "0.1.0";

  // Exception hierarchy: everything the core throws derives from Error.
  // Subclasses are registered after the base so their translators win.
  static py::exception<ckm::Error> error_type(m, "Error", PyExc_RuntimeError);
  py::register_exception<ckm::NotFoundError>(m, "NotFoundError", error_type);
  py::register_exception<ckm::ArgumentError>(m, "ArgumentError", error_type);
  py::register_exception<ckm::AnalysisError>(m, "AnalysisError", error_type);
  py::register_exception<ckm::ModelParseError>(m, "ModelParseError", error_type);
  py::register_exception<ckm::GenerationError>(m, "GenerationError", error_type);
  py::register_exception<ckm::ConfigError>(m, "ConfigError", error_type);
  static py::exception<ckm::ValidationError> validation_type(m, "ValidationError", error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ckm::ValidationError& e) {
      std::string text = e.what();
      for (const ckm::Diagnostic& d : e.diagnostics()) {
        text += "\n  ";
        text += ckm::to_string(d);
      }
      py::set_error(validation_type, text.c_str());
    }
  });

  py::class_<ckm::ClassModel>(m, "ClassModel",
                              "Immutable whole-program class graph. Obtain one from "
                              "analyze_paths(), generate(), or import_model().")
      .def(py::init<>())
      .def(
          "class_names",
          [](const ckm::ClassModel& model, bool include_external) {
            std::vector<std::string> names;
            for (const ckm::ClassInfo& cls : model.classes()) {
              if (include_external || !cls.is_external) names.push_back(cls.fqn);
            }
            return names;
          },
          py::arg("include_external") = false,
          "Sorted class FQNs; external stubs only when include_external is true.")
      .def("packages", &ckm::ClassModel::packages,
           "Distinct packages of in-corpus classes, sorted.")
      .def(
          "diagnostics",
          [](const ckm::ClassModel& model) { return rendered(model.diagnostics()); },
          "Parse/build diagnostics as 'file:line:col: severity: message' lines.")
      .def(
          "has_class",
          [](const ckm::ClassModel& model, const std::string& fqn) {
            return model.find(fqn) != nullptr;
          },
          py::arg("fqn"))
      .def(
          "inheritance_edges",
          [](const ckm::ClassModel& model) { return model.inheritance_edges(); },
          "(child, parent) pairs from every class's parent list.")
      .def("__len__",
           [](const ckm::ClassModel& model) {
             std::size_t n = 0;
             for (const ckm::ClassInfo& cls : model.classes())
               if (!cls.is_external) ++n;
             return n;
           })
      .def("__eq__",
           [](const ckm::ClassModel& a, const ckm::ClassModel& b) { return a == b; },
           py::is_operator())
      .def("__repr__", [](const ckm::ClassModel& model) {
        std::size_t in_corpus = 0;
        std::size_t external = 0;
        for (const ckm::ClassInfo& cls : model.classes())
          (cls.is_external ? external : in_corpus)++;
        return "<ckm.ClassModel: " + std::to_string(in_corpus) + " classes, " +
               std::to_string(external) + " external>";
      });

  m.def(
      "analyze_paths",
      [](const std::vector<std::string>& paths, int jobs, const std::string& suffix) {
        ckm::AnalyzeOptions options;
        options.jobs = jobs;
        options.suffix = suffix;
        return ckm::analyze_paths(paths, options);
      },
      py::arg("paths"), py::arg("jobs") = 1, py::arg("suffix") = ".java",
      py::call_guard<py::gil_scoped_release>(),
      "Parse every source file under the given files/directories into a ClassModel.");

  m.def(
      "generate",
      [](std::uint64_t seed, int n_classes, int n_packages, int max_methods, int max_fields,
         double inheritance_prob, double cross_class_call_prob, double attribute_sharing) {
        ckm::GenSpec spec;
        spec.seed = seed;
        spec.n_classes = n_classes;
        spec.n_packages = n_packages;
        spec.max_methods = max_methods;
        spec.max_fields = max_fields;
        spec.inheritance_prob = inheritance_prob;
        spec.cross_class_call_prob = cross_class_call_prob;
        spec.attribute_sharing = attribute_sharing;
        return ckm::generate(spec);
      },
      py::arg("seed") = 1, py::arg("n_classes") = 0, py::arg("n_packages") = 1,
      py::arg("max_methods") = 4, py::arg("max_fields") = 4, py::arg("inheritance_prob") = 0.3,
      py::arg("cross_class_call_prob") = 0.5, py::arg("attribute_sharing") = 0.5,
      "Deterministic seeded synthetic model; equal parameters replay identically.");

  m.def(
      "validate",
      [](const ckm::ClassModel& model) { return rendered(ckm::validate(model)); },
      py::arg("model"), "One rendered diagnostic per structural invariant violation.");

  m.def("export_model", &ckm::export_model, py::arg("model"),
        "Canonical model document (deterministic bytes). Raises ValidationError "
        "when the model violates its invariants.");
  m.def("import_model", &ckm::import_model, py::arg("text"),
        "Parse a model document. Raises ModelParseError on malformed input and "
        "ValidationError on invariant violations.");

  m.def(
      "compute_all",
      [](const ckm::ClassModel& model, bool include_constructors) {
        const std::vector<ckm::MetricsRow> rows =
            ckm::compute_all(model, options_for(include_constructors));
        py::list out;
        for (const ckm::MetricsRow& row : rows) out.append(row_to_dict(row));
        return out;
      },
      py::arg("model"), py::arg("include_constructors") = true,
      "One dict per in-corpus class (sorted by FQN) with every metric column.");

  m.def(
      "dependency_edges",
      [](const ckm::ClassModel& model) {
        py::list out;
        for (const ckm::DependencyEdge& edge : ckm::dependency_edges(model)) {
          py::dict d;
          d["from"] = edge.from_fqn;
          d["to"] = edge.to_fqn;
          py::list reasons;
          for (ckm::DependencyReason reason : edge.reasons)
            reasons.append(ckm::to_string(reason));
          d["reasons"] = reasons;
          out.append(d);
        }
        return out;
      },
      py::arg("model"),
      "Distinct (from, to) class dependencies with their reasons, sorted.");

  m.def("efferent_coupling", &ckm::efferent_coupling, py::arg("model"), py::arg("class_fqn"));
  m.def("afferent_coupling", &ckm::afferent_coupling, py::arg("model"), py::arg("class_fqn"));
  m.def("package_coupling", &ckm::package_coupling, py::arg("model"), py::arg("package"),
        "(efferent, afferent) pair for one package.");
  m.def("depth_of_inheritance", &ckm::depth_of_inheritance, py::arg("model"),
        py::arg("class_fqn"));
  m.def("coupling_between_objects", &ckm::coupling_between_objects, py::arg("model"),
        py::arg("class_fqn"));
  m.def(
      "response_for_class",
      [](const ckm::ClassModel& model, const std::string& fqn, bool include_constructors) {
        return ckm::response_for_class(model, fqn, options_for(include_constructors));
      },
      py::arg("model"), py::arg("class_fqn"), py::arg("include_constructors") = true);
  m.def(
      "lcom1",
      [](const ckm::ClassModel& model, const std::string& fqn, bool include_constructors) {
        return ckm::lcom1(model, fqn, options_for(include_constructors));
      },
      py::arg("model"), py::arg("class_fqn"), py::arg("include_constructors") = true);
  m.def(
      "lcom2",
      [](const ckm::ClassModel& model, const std::string& fqn, bool include_constructors) {
        return ckm::lcom2(model, fqn, options_for(include_constructors));
      },
      py::arg("model"), py::arg("class_fqn"), py::arg("include_constructors") = true);
  m.def(
      "lcom3",
      [](const ckm::ClassModel& model, const std::string& fqn, bool include_constructors) {
        return ckm::lcom3(model, fqn, options_for(include_constructors));
      },
      py::arg("model"), py::arg("class_fqn"), py::arg("include_constructors") = true);
  m.def(
      "lcom4",
      [](const ckm::ClassModel& model, const std::string& fqn, bool include_constructors) {
        return ckm::lcom4(model, fqn, options_for(include_constructors));
      },
      py::arg("model"), py::arg("class_fqn"), py::arg("include_constructors") = true);

  m.def("spearman", &ckm::spearman, py::arg("xs"), py::arg("ys"),
        "Rank correlation with average ranks for ties; None when a series has "
        "zero rank variance. Raises ArgumentError for mismatched or short input.");

  m.def(
      "report",
      [](const ckm::ClassModel& model, const std::string& format, bool include_constructors,
         bool correlate, const std::string& rules_json, int files, bool color) {
        const std::vector<ckm::ThresholdRule> rules =
            rules_json.empty() ? std::vector<ckm::ThresholdRule>{} : ckm::parse_rules(rules_json);
        const ckm::AnalysisReport report = ckm::assemble_report(
            model, options_for(include_constructors), correlate, rules, files);
        return ckm::render(report, format_from(format), color);
      },
      py::arg("model"), py::arg("format") = "json", py::arg("include_constructors") = true,
      py::arg("correlate") = false, py::arg("rules_json") = "", py::arg("files") = 0,
      py::arg("color") = false,
      "Assemble and render the full report (rows, package rollups, optional "
      "correlations, threshold verdicts) in table, json, or csv form.");
}
