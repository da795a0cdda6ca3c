#include "ckm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <initializer_list>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ckm/errors.hpp"

namespace ckm {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 9> kMetricNames = {
    "ce", "ca", "dit", "cbo", "rfc", "lcom1", "lcom2", "lcom3", "lcom4"};

constexpr std::array<std::string_view, 4> kComparators = {">", ">=", "<", "<="};

bool known_comparator(std::string_view op) {
  return std::find(kComparators.begin(), kComparators.end(), op) !=
         kComparators.end();
}

bool known_metric(std::string_view name) {
  return std::find(kMetricNames.begin(), kMetricNames.end(), name) !=
         kMetricNames.end();
}

bool compare(double value, std::string_view op, double limit) {
  if (op == ">") return value > limit;
  if (op == ">=") return value >= limit;
  if (op == "<") return value < limit;
  return value <= limit;  // "<=", validated upstream
}

/// Average ranks (1-based) with ties sharing the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& values) {
  std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

const std::array<std::string_view, 9>& metric_names() { return kMetricNames; }

int metric_value(const MetricsRow& row, std::string_view name) {
  if (name == "ce") return row.ce;
  if (name == "ca") return row.ca;
  if (name == "dit") return row.dit;
  if (name == "cbo") return row.cbo;
  if (name == "rfc") return row.rfc;
  if (name == "lcom1") return row.lcom1;
  if (name == "lcom2") return row.lcom2;
  if (name == "lcom3") return row.lcom3;
  if (name == "lcom4") return row.lcom4;
  throw ArgumentError("unknown metric '" + std::string(name) + "'");
}

std::string to_string(RuleSeverity severity) {
  return severity == RuleSeverity::fail ? "fail" : "warn";
}

const CorrelationEntry* CorrelationMatrix::find(std::string_view a,
                                                std::string_view b) const {
  for (const CorrelationEntry& entry : entries) {
    if ((entry.a == a && entry.b == b) || (entry.a == b && entry.b == a)) {
      return &entry;
    }
  }
  return nullptr;
}

bool AnalysisReport::failed() const {
  return std::any_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) {
    return v.rule.severity == RuleSeverity::fail;
  });
}

std::optional<double> spearman(const std::vector<double>& xs,
                               const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw ArgumentError("spearman: series lengths differ");
  }
  if (xs.size() < 2) {
    throw ArgumentError("spearman: at least two samples are required");
  }
  std::vector<double> rx = average_ranks(xs);
  std::vector<double> ry = average_ranks(ys);
  double n = static_cast<double>(rx.size());
  double mean = (n + 1.0) / 2.0;  // ranks always average to this
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    double dx = rx[i] - mean;
    double dy = ry[i] - mean;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;  // undefined, not zero
  double rho = sxy / std::sqrt(sxx * syy);
  return std::clamp(rho, -1.0, 1.0);
}

CorrelationMatrix correlate(const std::vector<MetricsRow>& rows) {
  if (rows.size() < 2) {
    throw ArgumentError("correlate: at least two rows are required");
  }
  std::array<std::vector<double>, 9> columns;
  for (std::size_t m = 0; m < kMetricNames.size(); ++m) {
    columns[m].reserve(rows.size());
    for (const MetricsRow& row : rows) {
      columns[m].push_back(static_cast<double>(metric_value(row, kMetricNames[m])));
    }
  }
  CorrelationMatrix matrix;
  for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
    for (std::size_t j = i; j < kMetricNames.size(); ++j) {
      CorrelationEntry entry;
      entry.a = std::string(kMetricNames[i]);
      entry.b = std::string(kMetricNames[j]);
      entry.rho = spearman(columns[i], columns[j]);
      entry.n = static_cast<int>(rows.size());
      matrix.entries.push_back(std::move(entry));
    }
  }
  return matrix;
}

std::vector<Verdict> evaluate_thresholds(const std::vector<MetricsRow>& rows,
                                         const std::vector<ThresholdRule>& rules) {
  for (const ThresholdRule& rule : rules) {
    if (!known_metric(rule.metric)) {
      throw ConfigError("unknown metric '" + rule.metric + "' in threshold rule");
    }
    if (!known_comparator(rule.comparator)) {
      throw ConfigError("unknown comparator '" + rule.comparator +
                        "' in threshold rule");
    }
    if (!std::isfinite(rule.limit)) {
      throw ConfigError("threshold limit must be finite");
    }
  }
  std::vector<Verdict> verdicts;
  for (const MetricsRow& row : rows) {
    for (const ThresholdRule& rule : rules) {
      double value = static_cast<double>(metric_value(row, rule.metric));
      if (compare(value, rule.comparator, rule.limit)) {
        verdicts.push_back({row.class_fqn, rule, value});
      }
    }
  }
  return verdicts;
}

namespace {

void reject_unknown_keys(const ordered_json& node,
                         std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& item : node.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

}  // namespace

std::vector<ThresholdRule> parse_rules(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("rules document: ") + e.what());
  }
  if (!doc.is_array()) {
    throw ConfigError("rules document must be a JSON array");
  }
  std::vector<ThresholdRule> rules;
  for (const ordered_json& node : doc) {
    if (!node.is_object()) {
      throw ConfigError("each rule must be a JSON object");
    }
    reject_unknown_keys(node, {"metric", "op", "limit", "severity"}, "rule");
    for (const char* key : {"metric", "op", "limit", "severity"}) {
      if (!node.contains(key)) {
        throw ConfigError(std::string("rule is missing key '") + key + "'");
      }
    }
    if (!node["metric"].is_string() || !node["op"].is_string() ||
        !node["severity"].is_string() || !node["limit"].is_number()) {
      throw ConfigError("rule fields have wrong types");
    }
    ThresholdRule rule;
    rule.metric = node["metric"].get<std::string>();
    rule.comparator = node["op"].get<std::string>();
    rule.limit = node["limit"].get<double>();
    std::string severity = node["severity"].get<std::string>();
    if (severity == "warn") {
      rule.severity = RuleSeverity::warn;
    } else if (severity == "fail") {
      rule.severity = RuleSeverity::fail;
    } else {
      throw ConfigError("rule severity must be 'warn' or 'fail'");
    }
    if (!known_metric(rule.metric)) {
      throw ConfigError("unknown metric '" + rule.metric + "' in threshold rule");
    }
    if (!known_comparator(rule.comparator)) {
      throw ConfigError("unknown comparator '" + rule.comparator +
                        "' in threshold rule");
    }
    if (!std::isfinite(rule.limit)) {
      throw ConfigError("threshold limit must be finite");
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

namespace {

PackageRollup::Stat column_stat(std::vector<int> values) {
  PackageRollup::Stat stat;
  if (values.empty()) return stat;
  std::sort(values.begin(), values.end());
  double sum = std::accumulate(values.begin(), values.end(), 0.0);
  stat.mean = sum / static_cast<double>(values.size());
  std::size_t mid = values.size() / 2;
  stat.median = values.size() % 2 == 1
                    ? static_cast<double>(values[mid])
                    : (static_cast<double>(values[mid - 1]) +
                       static_cast<double>(values[mid])) /
                          2.0;
  stat.max = values.back();
  return stat;
}

}  // namespace

AnalysisReport assemble_report(const ClassModel& model,
                               const MetricsOptions& options,
                               bool with_correlations,
                               const std::vector<ThresholdRule>& rules,
                               int files_analyzed) {
  AnalysisReport report;
  report.rows = compute_all(model, options);
  std::vector<std::string> packages = model.packages();
  report.generated_from = {files_analyzed, static_cast<int>(report.rows.size()),
                           static_cast<int>(packages.size())};

  for (const std::string& package : packages) {
    PackageRollup rollup;
    rollup.package = package;
    auto [ce, ca] = package_coupling(model, package);
    rollup.ce = ce;
    rollup.ca = ca;
    std::map<std::string, std::vector<int>> columns;
    for (const MetricsRow& row : report.rows) {
      const ClassInfo* cls = model.find(row.class_fqn);
      if (cls == nullptr || cls->package != package) continue;
      for (std::string_view name : kMetricNames) {
        columns[std::string(name)].push_back(metric_value(row, name));
      }
    }
    for (std::string_view name : kMetricNames) {
      rollup.stats[std::string(name)] = column_stat(columns[std::string(name)]);
    }
    report.package_rollups.push_back(std::move(rollup));
  }

  if (with_correlations) report.correlations = correlate(report.rows);
  report.verdicts = evaluate_thresholds(report.rows, rules);
  report.diagnostics = model.diagnostics();
  return report;
}

// ---- rendering -------------------------------------------------------------

namespace {

ordered_json row_to_json(const MetricsRow& row) {
  ordered_json node;
  node["class"] = row.class_fqn;
  node["ce"] = row.ce;
  node["ca"] = row.ca;
  node["dit"] = row.dit;
  node["cbo"] = row.cbo;
  node["rfc"] = row.rfc;
  node["lcom1"] = row.lcom1;
  node["lcom2"] = row.lcom2;
  node["lcom3"] = row.lcom3;
  node["lcom4"] = row.lcom4;
  node["method_count"] = row.method_count;
  node["field_count"] = row.field_count;
  return node;
}

ordered_json report_to_json(const AnalysisReport& report) {
  ordered_json doc;
  doc["version"] = 1;
  doc["generated_from"] = {{"files", report.generated_from.files},
                           {"classes", report.generated_from.classes},
                           {"packages", report.generated_from.packages}};
  doc["rows"] = ordered_json::array();
  for (const MetricsRow& row : report.rows) doc["rows"].push_back(row_to_json(row));

  ordered_json rollups = ordered_json::object();
  for (const PackageRollup& rollup : report.package_rollups) {
    ordered_json node;
    node["ce"] = rollup.ce;
    node["ca"] = rollup.ca;
    ordered_json stats = ordered_json::object();
    for (std::string_view name : kMetricNames) {
      auto it = rollup.stats.find(std::string(name));
      if (it == rollup.stats.end()) continue;
      stats[std::string(name)] = {{"mean", it->second.mean},
                                  {"median", it->second.median},
                                  {"max", it->second.max}};
    }
    node["metrics"] = std::move(stats);
    rollups[rollup.package] = std::move(node);
  }
  doc["package_rollups"] = std::move(rollups);

  if (report.correlations) {
    ordered_json pairs = ordered_json::array();
    for (const CorrelationEntry& entry : report.correlations->entries) {
      ordered_json node;
      node["a"] = entry.a;
      node["b"] = entry.b;
      if (entry.rho) {
        node["rho"] = *entry.rho;
      } else {
        node["rho"] = nullptr;  // undefined is not the same as zero
      }
      node["n"] = entry.n;
      pairs.push_back(std::move(node));
    }
    doc["correlations"] = ordered_json{{"pairs", std::move(pairs)}};
  } else {
    doc["correlations"] = nullptr;
  }

  doc["verdicts"] = ordered_json::array();
  for (const Verdict& verdict : report.verdicts) {
    ordered_json node;
    node["class"] = verdict.class_fqn;
    node["metric"] = verdict.rule.metric;
    node["op"] = verdict.rule.comparator;
    node["limit"] = verdict.rule.limit;
    node["severity"] = to_string(verdict.rule.severity);
    node["actual"] = verdict.actual;
    doc["verdicts"].push_back(std::move(node));
  }

  doc["diagnostics"] = ordered_json::array();
  for (const Diagnostic& diagnostic : report.diagnostics) {
    ordered_json node;
    node["severity"] = to_string(diagnostic.severity);
    node["file"] = diagnostic.location.file;
    node["line"] = diagnostic.location.line;
    node["column"] = diagnostic.location.column;
    node["message"] = diagnostic.message;
    doc["diagnostics"].push_back(std::move(node));
  }
  return doc;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string render_csv(const AnalysisReport& report) {
  std::string out = "class,ce,ca,dit,cbo,rfc,lcom1,lcom2,lcom3,lcom4\n";
  for (const MetricsRow& row : report.rows) {
    out += csv_field(row.class_fqn);
    for (std::string_view name : kMetricNames) {
      out += ',' + std::to_string(metric_value(row, name));
    }
    out += '\n';
  }
  return out;
}

std::string fixed(double value, int places) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", places, value);
  return buffer;
}

/// Minimal ANSI palette, enabled only for color output.
struct Palette {
  const char* bold = "";
  const char* red = "";
  const char* yellow = "";
  const char* reset = "";
};

std::string render_table(const AnalysisReport& report, bool color) {
  Palette p;
  if (color) p = {"\x1b[1m", "\x1b[31m", "\x1b[33m", "\x1b[0m"};
  std::ostringstream out;
  out << "classes: " << report.generated_from.classes
      << "  packages: " << report.generated_from.packages
      << "  files: " << report.generated_from.files << "\n\n";

  std::size_t name_width = 5;  // "class"
  for (const MetricsRow& row : report.rows) {
    name_width = std::max(name_width, row.class_fqn.size());
  }
  auto pad = [](const std::string& text, std::size_t width) {
    std::string padded = text;
    padded.resize(std::max(width, text.size()), ' ');
    return padded;
  };

  out << p.bold << pad("class", name_width);
  for (std::string_view name : kMetricNames) {
    out << "  " << pad(std::string(name), 5);
  }
  out << p.reset << "\n";
  out << std::string(name_width + 9 * 7, '-') << "\n";
  for (const MetricsRow& row : report.rows) {
    out << pad(row.class_fqn, name_width);
    for (std::string_view name : kMetricNames) {
      out << "  " << pad(std::to_string(metric_value(row, name)), 5);
    }
    out << "\n";
  }
  if (report.rows.empty()) out << "(no classes)\n";

  if (!report.package_rollups.empty()) {
    std::size_t pkg_width = 7;  // "package"
    for (const PackageRollup& rollup : report.package_rollups) {
      std::string shown = rollup.package.empty() ? "(default)" : rollup.package;
      pkg_width = std::max(pkg_width, shown.size());
    }
    out << "\n" << p.bold << pad("package", pkg_width) << "  ce     ca" << p.reset
        << "\n";
    for (const PackageRollup& rollup : report.package_rollups) {
      std::string shown = rollup.package.empty() ? "(default)" : rollup.package;
      out << pad(shown, pkg_width) << "  " << pad(std::to_string(rollup.ce), 5)
          << "  " << pad(std::to_string(rollup.ca), 5) << "\n";
    }
  }

  if (report.correlations) {
    int n = report.correlations->entries.empty()
                ? 0
                : report.correlations->entries.front().n;
    out << "\n" << p.bold << "spearman correlations (n=" << n << ")" << p.reset
        << "\n";
    out << pad("", 6);
    for (std::string_view name : kMetricNames) out << " " << pad(std::string(name), 6);
    out << "\n";
    for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
      out << pad(std::string(kMetricNames[i]), 6);
      for (std::size_t j = 0; j <= i; ++j) {
        const CorrelationEntry* entry = report.correlations->find(
            kMetricNames[i], kMetricNames[j]);
        std::string cell = "--";
        if (entry != nullptr && entry->rho) cell = fixed(*entry->rho, 2);
        out << " " << pad(cell, 6);
      }
      out << "\n";
    }
  }

  if (!report.verdicts.empty()) {
    out << "\n" << p.bold << "verdicts" << p.reset << "\n";
    for (const Verdict& verdict : report.verdicts) {
      bool fail = verdict.rule.severity == RuleSeverity::fail;
      out << "  " << (fail ? p.red : p.yellow) << (fail ? "FAIL" : "WARN")
          << p.reset << " " << verdict.class_fqn << ": " << verdict.rule.metric
          << " " << verdict.rule.comparator << " " << fixed(verdict.rule.limit, 2)
          << " (actual " << fixed(verdict.actual, 2) << ")\n";
    }
  }

  if (!report.diagnostics.empty()) {
    out << "\n" << p.bold << "diagnostics" << p.reset << "\n";
    for (const Diagnostic& diagnostic : report.diagnostics) {
      bool is_error = diagnostic.severity == Severity::error;
      out << "  " << (is_error ? p.red : p.yellow) << to_string(diagnostic)
          << p.reset << "\n";
    }
  }
  return std::move(out).str();
}

}  // namespace

std::string render(const AnalysisReport& report, ReportFormat format, bool color) {
  switch (format) {
    case ReportFormat::json:
      return report_to_json(report).dump(2) + "\n";
    case ReportFormat::csv:
      return render_csv(report);
    case ReportFormat::table:
      return render_table(report, color);
  }
  return {};
}

namespace {

int require_int(const ordered_json& node, const char* key, const std::string& where) {
  if (!node.contains(key) || !node[key].is_number_integer()) {
    throw ModelParseError("report document: missing integer '" + std::string(key) +
                          "' in " + where);
  }
  return node[key].get<int>();
}

double require_double(const ordered_json& node, const char* key,
                      const std::string& where) {
  if (!node.contains(key) || !node[key].is_number()) {
    throw ModelParseError("report document: missing number '" + std::string(key) +
                          "' in " + where);
  }
  return node[key].get<double>();
}

std::string require_string(const ordered_json& node, const char* key,
                           const std::string& where) {
  if (!node.contains(key) || !node[key].is_string()) {
    throw ModelParseError("report document: missing string '" + std::string(key) +
                          "' in " + where);
  }
  return node[key].get<std::string>();
}

}  // namespace

namespace {

AnalysisReport parse_report_document(const ordered_json& doc) {
  AnalysisReport report;
  const ordered_json& from = doc.at("generated_from");
  report.generated_from.files = require_int(from, "files", "generated_from");
  report.generated_from.classes = require_int(from, "classes", "generated_from");
  report.generated_from.packages = require_int(from, "packages", "generated_from");

  for (const ordered_json& node : doc.at("rows")) {
    MetricsRow row;
    row.class_fqn = require_string(node, "class", "row");
    row.ce = require_int(node, "ce", "row");
    row.ca = require_int(node, "ca", "row");
    row.dit = require_int(node, "dit", "row");
    row.cbo = require_int(node, "cbo", "row");
    row.rfc = require_int(node, "rfc", "row");
    row.lcom1 = require_int(node, "lcom1", "row");
    row.lcom2 = require_int(node, "lcom2", "row");
    row.lcom3 = require_int(node, "lcom3", "row");
    row.lcom4 = require_int(node, "lcom4", "row");
    row.method_count = require_int(node, "method_count", "row");
    row.field_count = require_int(node, "field_count", "row");
    report.rows.push_back(std::move(row));
  }

  for (const auto& item : doc.at("package_rollups").items()) {
    PackageRollup rollup;
    rollup.package = item.key();
    rollup.ce = require_int(item.value(), "ce", "package rollup");
    rollup.ca = require_int(item.value(), "ca", "package rollup");
    for (const auto& stat_item : item.value().at("metrics").items()) {
      PackageRollup::Stat stat;
      stat.mean = require_double(stat_item.value(), "mean", "rollup stat");
      stat.median = require_double(stat_item.value(), "median", "rollup stat");
      stat.max = require_int(stat_item.value(), "max", "rollup stat");
      rollup.stats[stat_item.key()] = stat;
    }
    report.package_rollups.push_back(std::move(rollup));
  }

  const ordered_json& correlations = doc.at("correlations");
  if (!correlations.is_null()) {
    CorrelationMatrix matrix;
    for (const ordered_json& node : correlations.at("pairs")) {
      CorrelationEntry entry;
      entry.a = require_string(node, "a", "correlation pair");
      entry.b = require_string(node, "b", "correlation pair");
      if (!node.contains("rho")) {
        throw ModelParseError("report document: correlation pair lacks rho");
      }
      if (!node["rho"].is_null()) entry.rho = node["rho"].get<double>();
      entry.n = require_int(node, "n", "correlation pair");
      matrix.entries.push_back(std::move(entry));
    }
    report.correlations = std::move(matrix);
  }

  for (const ordered_json& node : doc.at("verdicts")) {
    Verdict verdict;
    verdict.class_fqn = require_string(node, "class", "verdict");
    verdict.rule.metric = require_string(node, "metric", "verdict");
    verdict.rule.comparator = require_string(node, "op", "verdict");
    verdict.rule.limit = require_double(node, "limit", "verdict");
    std::string severity = require_string(node, "severity", "verdict");
    if (severity == "warn") {
      verdict.rule.severity = RuleSeverity::warn;
    } else if (severity == "fail") {
      verdict.rule.severity = RuleSeverity::fail;
    } else {
      throw ModelParseError("report document: bad verdict severity");
    }
    verdict.actual = require_double(node, "actual", "verdict");
    report.verdicts.push_back(std::move(verdict));
  }

  for (const ordered_json& node : doc.at("diagnostics")) {
    Diagnostic diagnostic;
    std::string severity = require_string(node, "severity", "diagnostic");
    if (severity == "warning") {
      diagnostic.severity = Severity::warning;
    } else if (severity == "error") {
      diagnostic.severity = Severity::error;
    } else {
      throw ModelParseError("report document: bad diagnostic severity");
    }
    diagnostic.location.file = require_string(node, "file", "diagnostic");
    diagnostic.location.line = require_int(node, "line", "diagnostic");
    diagnostic.location.column = require_int(node, "column", "diagnostic");
    diagnostic.message = require_string(node, "message", "diagnostic");
    report.diagnostics.push_back(std::move(diagnostic));
  }
  return report;
}

}  // namespace

AnalysisReport report_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelParseError(std::string("report document: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ModelParseError("report document: top level must be an object");
  }
  if (!doc.contains("version") || doc["version"] != 1) {
    throw ModelParseError("report document: unsupported version");
  }
  try {
    return parse_report_document(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ModelParseError(std::string("report document: ") + e.what());
  }
}

}  // namespace ckm
