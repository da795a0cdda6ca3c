#pragma once

#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "ckm/model.hpp"

namespace ckm {

struct MetricsOptions {
  /// Constructors participate in LCOM, RFC, and method_count by default;
  /// the --no-constructors mode drops them from those populations.
  bool include_constructors = true;
};

/// All per-class measurements for one non-external class.
struct MetricsRow {
  std::string class_fqn;
  int ce = 0;
  int ca = 0;
  int dit = 0;
  int cbo = 0;
  int rfc = 0;
  int lcom1 = 0;
  int lcom2 = 0;
  int lcom3 = 0;
  int lcom4 = 0;
  int method_count = 0;
  int field_count = 0;

  bool operator==(const MetricsRow&) const = default;
};

enum class DependencyReason { field_type, param_type, return_type, call, parent };

std::string to_string(DependencyReason reason);

/// One ordered class-pair dependency and every reason it exists.
struct DependencyEdge {
  std::string from_fqn;
  std::string to_fqn;
  std::vector<DependencyReason> reasons;  // sorted, unique

  bool operator==(const DependencyEdge&) const = default;
  bool operator<(const DependencyEdge& other) const {
    return std::tie(from_fqn, to_fqn) < std::tie(other.from_fqn, other.to_fqn);
  }
};

/// Distinct (from, to) dependencies across the whole model, collected from
/// field types, parameter types, return types, resolved call targets, and
/// parents. Self-references never form edges. Sorted by (from, to).
std::vector<DependencyEdge> dependency_edges(const ClassModel& model);

/// Distinct classes `class_fqn` depends on (externals included).
int efferent_coupling(const ClassModel& model, std::string_view class_fqn);

/// Distinct in-corpus classes depending on `class_fqn`.
int afferent_coupling(const ClassModel& model, std::string_view class_fqn);

/// Package rollup: distinct outside classes depended on by the package's
/// members, and distinct outside classes depending on them.
std::pair<int, int> package_coupling(const ClassModel& model, std::string_view package);

/// Longest in-corpus parent chain below the class; roots measure 0.
/// Throws AnalysisError naming the cycle if the class sits on one.
int depth_of_inheritance(const ClassModel& model, std::string_view class_fqn);

/// Distinct other classes whose methods are invoked or whose types appear
/// as parameters/returns/receivers in this class's methods. Inheritance
/// alone does not count.
int coupling_between_objects(const ClassModel& model, std::string_view class_fqn);

/// Size of the response set: own methods plus distinct resolved call
/// targets, one level deep.
int response_for_class(const ClassModel& model, std::string_view class_fqn,
                       const MetricsOptions& options = {});

/// Method pairs with disjoint attribute sets (empty sets are disjoint).
int lcom1(const ClassModel& model, std::string_view class_fqn,
          const MetricsOptions& options = {});

/// max(P - Q, 0) over disjoint (P) and sharing (Q) method pairs.
int lcom2(const ClassModel& model, std::string_view class_fqn,
          const MetricsOptions& options = {});

/// Connected components of the attribute-sharing graph over methods.
int lcom3(const ClassModel& model, std::string_view class_fqn,
          const MetricsOptions& options = {});

/// lcom3 with intra-class call edges added to the graph.
int lcom4(const ClassModel& model, std::string_view class_fqn,
          const MetricsOptions& options = {});

/// One row per non-external class, sorted by FQN; identical to calling
/// each metric individually.
std::vector<MetricsRow> compute_all(const ClassModel& model,
                                    const MetricsOptions& options = {});

}  // namespace ckm
