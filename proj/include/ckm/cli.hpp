#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ckm {

/// Runs the command-line interface on already-split arguments (program
/// name excluded). Reports and model documents go to `out`; errors and
/// usage problems go to `err`.
///
/// Exit codes: 0 success; 1 at least one fail-severity verdict fired;
/// 2 usage or configuration error; 3 parse errors with zero classes
/// recovered.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ckm
