#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ckm/diagnostics.hpp"
#include "ckm/metrics.hpp"
#include "ckm/model.hpp"

namespace ckm {

/// The nine metric columns, in canonical (CSV header) order.
const std::array<std::string_view, 9>& metric_names();

/// Column accessor; the name must come from metric_names().
int metric_value(const MetricsRow& row, std::string_view name);

enum class RuleSeverity { warn, fail };

std::string to_string(RuleSeverity severity);

/// A gate: the verdict fires when `metric comparator limit` holds.
struct ThresholdRule {
  std::string metric;
  std::string comparator;  // one of >, >=, <, <=
  double limit = 0.0;
  RuleSeverity severity = RuleSeverity::warn;

  bool operator==(const ThresholdRule&) const = default;
};

struct Verdict {
  std::string class_fqn;
  ThresholdRule rule;
  double actual = 0.0;

  bool operator==(const Verdict&) const = default;
};

/// One Spearman cell; rho is empty when a series has zero rank variance
/// (undefined, deliberately distinct from 0).
struct CorrelationEntry {
  std::string a;
  std::string b;
  std::optional<double> rho;
  int n = 0;

  bool operator==(const CorrelationEntry&) const = default;
};

/// Pairwise Spearman over the nine metric columns; entries cover every
/// unordered pair (diagonal included) in canonical column order.
struct CorrelationMatrix {
  std::vector<CorrelationEntry> entries;

  /// Lookup in either argument order.
  const CorrelationEntry* find(std::string_view a, std::string_view b) const;

  bool operator==(const CorrelationMatrix&) const = default;
};

/// Per-package aggregate: coupling rollup plus column summaries.
struct PackageRollup {
  struct Stat {
    double mean = 0.0;
    double median = 0.0;
    int max = 0;

    bool operator==(const Stat&) const = default;
  };

  std::string package;
  int ce = 0;
  int ca = 0;
  std::map<std::string, Stat> stats;  // keyed by metric name

  bool operator==(const PackageRollup&) const = default;
};

struct GeneratedFrom {
  int files = 0;
  int classes = 0;
  int packages = 0;

  bool operator==(const GeneratedFrom&) const = default;
};

struct AnalysisReport {
  GeneratedFrom generated_from;
  std::vector<MetricsRow> rows;                   // sorted by class FQN
  std::vector<PackageRollup> package_rollups;     // sorted by package
  std::optional<CorrelationMatrix> correlations;  // engaged with --correlate
  std::vector<Verdict> verdicts;
  std::vector<Diagnostic> diagnostics;

  bool operator==(const AnalysisReport&) const = default;

  /// True when any fail-severity verdict fired (the exit-code-1 condition).
  bool failed() const;
};

/// Spearman rank correlation with average ranks for ties. Returns empty
/// when either series has zero rank variance. Throws ArgumentError for
/// mismatched lengths or fewer than two samples.
std::optional<double> spearman(const std::vector<double>& xs,
                               const std::vector<double>& ys);

/// All-pairs Spearman over the metric columns. Throws ArgumentError when
/// fewer than two rows are available.
CorrelationMatrix correlate(const std::vector<MetricsRow>& rows);

/// Applies every rule to every row; fired comparisons become verdicts in
/// row-major order. Unknown metric names or comparators throw ConfigError
/// before any evaluation happens.
std::vector<Verdict> evaluate_thresholds(const std::vector<MetricsRow>& rows,
                                         const std::vector<ThresholdRule>& rules);

/// Parses a rules document: a JSON array of {metric, op, limit, severity}
/// objects. Unknown keys, metrics, comparators, severities, or non-finite
/// limits are ConfigErrors.
std::vector<ThresholdRule> parse_rules(const std::string& text);

/// Everything the report carries, computed from one model. Correlations
/// are included only when requested. `files_analyzed` feeds generated_from.
AnalysisReport assemble_report(const ClassModel& model,
                               const MetricsOptions& options,
                               bool with_correlations,
                               const std::vector<ThresholdRule>& rules,
                               int files_analyzed);

enum class ReportFormat { table, json, csv };

/// Deterministic rendering. json is the canonical machine format; csv
/// carries the fixed header `class,ce,ca,dit,cbo,rfc,lcom1,lcom2,lcom3,lcom4`
/// with RFC-4180-style quoting; table is aligned text (ANSI-colored when
/// `color` is set).
std::string render(const AnalysisReport& report, ReportFormat format,
                   bool color = false);

/// Parses the canonical JSON form back into a report; render → parse →
/// render is byte-identical. Malformed documents throw ModelParseError.
AnalysisReport report_from_json(const std::string& text);

}  // namespace ckm
