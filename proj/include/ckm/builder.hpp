#pragma once

#include <string>
#include <vector>

#include "ckm/model.hpp"
#include "ckm/parser.hpp"

namespace ckm {

struct AnalyzeOptions {
  std::string suffix = ".java";  // files matched during directory walks
  int jobs = 1;                  // parallel parse workers
};

/// Merges parsed units into a resolved ClassModel: names are bound in the
/// order same file, explicit imports, same package, external stub; field
/// accesses and calls become model facts; failures become diagnostics.
/// The result is independent of the unit order. `extra_diagnostics` are
/// carried into the model (analyze_paths uses this for I/O problems).
ClassModel build_model(const std::vector<SyntaxUnit>& units,
                       std::vector<Diagnostic> extra_diagnostics = {});

/// Source files the given paths denote: explicit files as-is, directories
/// walked recursively for `suffix` files. Sorted and deduplicated, so the
/// result does not depend on the argument order. Throws ArgumentError for
/// a path that does not exist.
std::vector<std::string> list_source_files(const std::vector<std::string>& paths,
                                           const std::string& suffix = ".java");

/// End-to-end front end: list, read, tokenize, parse (optionally with
/// parallel workers), then build_model. Output is byte-stable for any
/// worker count. Unreadable files are skipped with a diagnostic; finding
/// no files at all yields an empty model plus a warning.
ClassModel analyze_paths(const std::vector<std::string>& paths,
                         const AnalyzeOptions& options = {});

}  // namespace ckm
