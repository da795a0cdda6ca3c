#include "ckm/cli.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ckm/builder.hpp"
#include "ckm/errors.hpp"
#include "ckm/generator.hpp"
#include "ckm/metrics.hpp"
#include "ckm/model_io.hpp"
#include "ckm/report.hpp"

namespace ckm {
namespace {

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string slurp_stdin() {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write '" + path + "'");
    }
    out << text;
    out.flush();
    if (!out) {
        throw ConfigError("cannot write '" + path + "'");
    }
}

/// Emits `text` either to the --out file or to the stream the caller gave us.
void deliver(const std::string& out_path, std::ostream& fallback, const std::string& text) {
    if (out_path.empty()) {
        fallback << text;
    } else {
        write_file(out_path, text);
    }
}

/// Color resolution for table output. CKM_COLOR=always|never wins; the
/// default ("auto", or an unrecognized value) enables color only when the
/// report goes to an interactive stdout.
bool use_color(const std::string& out_path, const std::ostream& out) {
    const char* env = std::getenv("CKM_COLOR");
    const std::string mode = env == nullptr ? "auto" : env;
    if (mode == "always") {
        return true;
    }
    if (mode == "never") {
        return false;
    }
    return out_path.empty() && &out == &std::cout && ::isatty(::fileno(stdout)) != 0;
}

bool has_error_diagnostic(const std::vector<Diagnostic>& diagnostics) {
    for (const Diagnostic& d : diagnostics) {
        if (d.severity == Severity::error) {
            return true;
        }
    }
    return false;
}

/// Shared report-emission path for `analyze` and `metrics-from-model`.
/// Returns the process exit code.
int emit_report(const ClassModel& model,
                const MetricsOptions& metric_options,
                bool with_correlations,
                const std::string& rules_path,
                std::size_t files_analyzed,
                ReportFormat format,
                const std::string& out_path,
                std::ostream& out,
                std::ostream& err) {
    std::vector<ThresholdRule> rules;
    if (!rules_path.empty()) {
        rules = parse_rules(slurp_file(rules_path));
    }
    const AnalysisReport report =
        assemble_report(model, metric_options, with_correlations, rules, files_analyzed);
    const bool color = format == ReportFormat::table && use_color(out_path, out);
    deliver(out_path, out, render(report, format, color));

    // Diagnostics always reach the console, even when the report itself went
    // to a file or was rendered in a machine format that embeds them.
    if (format != ReportFormat::table || !out_path.empty()) {
        for (const Diagnostic& d : report.diagnostics) {
            err << to_string(d) << '\n';
        }
    }
    if (report.rows.empty() && has_error_diagnostic(report.diagnostics)) {
        return 3;
    }
    return report.failed() ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ckm: class cohesion and coupling metrics for Java-like sources"};
    app.require_subcommand(1);

    const std::map<std::string, ReportFormat> format_names{
        {"table", ReportFormat::table},
        {"json", ReportFormat::json},
        {"csv", ReportFormat::csv},
    };

    // --- analyze ---------------------------------------------------------
    std::vector<std::string> analyze_paths_arg;
    ReportFormat analyze_format = ReportFormat::table;
    std::string analyze_rules;
    bool analyze_correlate = false;
    std::string analyze_export_model;
    bool analyze_no_constructors = false;
    unsigned analyze_jobs = 1;
    std::string analyze_out;
    std::string analyze_suffix = ".java";

    CLI::App* analyze = app.add_subcommand("analyze", "Parse sources and report class metrics");
    analyze->add_option("paths", analyze_paths_arg, "Source files or directories to scan")
        ->required();
    analyze->add_option("--format", analyze_format, "Report format (table, json, csv)")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
    analyze->add_option("--rules", analyze_rules, "Threshold rules file (JSON)");
    analyze->add_flag("--correlate", analyze_correlate,
                      "Include Spearman correlations between metrics");
    analyze->add_option("--export-model", analyze_export_model,
                        "Also write the extracted class model to this file");
    analyze->add_flag("--no-constructors", analyze_no_constructors,
                      "Exclude constructors from method-based metrics");
    analyze->add_option("--jobs", analyze_jobs, "Number of parser threads")
        ->check(CLI::Range(1u, 256u));
    analyze->add_option("--out", analyze_out, "Write the report to this file instead of stdout");
    analyze->add_option("--suffix", analyze_suffix, "File suffix to match when scanning directories");

    // --- generate --------------------------------------------------------
    GenSpec gen_spec;
    gen_spec.n_classes = 10;
    std::string generate_out;

    CLI::App* generate_cmd =
        app.add_subcommand("generate", "Emit a synthetic class model document");
    generate_cmd->add_option("--seed", gen_spec.seed, "Random seed");
    generate_cmd->add_option("--classes", gen_spec.n_classes, "Number of classes to generate");
    generate_cmd->add_option("--packages", gen_spec.n_packages, "Number of packages");
    generate_cmd->add_option("--max-methods", gen_spec.max_methods, "Maximum methods per class");
    generate_cmd->add_option("--max-fields", gen_spec.max_fields, "Maximum fields per class");
    generate_cmd->add_option("--inheritance-prob", gen_spec.inheritance_prob,
                             "Probability that a class gets a parent");
    generate_cmd->add_option("--call-prob", gen_spec.cross_class_call_prob,
                             "Probability of cross-class calls per method");
    generate_cmd->add_option("--sharing", gen_spec.attribute_sharing,
                             "Degree of attribute sharing between methods");
    generate_cmd->add_option("--out", generate_out,
                             "Write the model to this file instead of stdout");

    // --- metrics-from-model ------------------------------------------------
    std::string model_path;
    ReportFormat model_format = ReportFormat::table;
    std::string model_rules;
    bool model_correlate = false;
    bool model_no_constructors = false;
    std::string model_out;

    CLI::App* from_model = app.add_subcommand(
        "metrics-from-model", "Compute metrics from a class model document");
    from_model->add_option("model", model_path, "Model document ('-' reads stdin)")->required();
    from_model->add_option("--format", model_format, "Report format (table, json, csv)")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
    from_model->add_option("--rules", model_rules, "Threshold rules file (JSON)");
    from_model->add_flag("--correlate", model_correlate,
                         "Include Spearman correlations between metrics");
    from_model->add_flag("--no-constructors", model_no_constructors,
                         "Exclude constructors from method-based metrics");
    from_model->add_option("--out", model_out, "Write the report to this file instead of stdout");

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("ckm");
        for (const std::string& arg : args) {
            argv.push_back(arg.c_str());
        }
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends land here.
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (analyze->parsed()) {
            AnalyzeOptions options;
            options.suffix = analyze_suffix;
            options.jobs = analyze_jobs;
            const std::vector<std::string> files =
                list_source_files(analyze_paths_arg, analyze_suffix);
            const ClassModel model = analyze_paths(analyze_paths_arg, options);
            if (!analyze_export_model.empty()) {
                write_file(analyze_export_model, export_model(model));
            }
            MetricsOptions metric_options;
            metric_options.include_constructors = !analyze_no_constructors;
            return emit_report(model, metric_options, analyze_correlate, analyze_rules,
                               files.size(), analyze_format, analyze_out, out, err);
        }
        if (generate_cmd->parsed()) {
            const ClassModel model = generate(gen_spec);
            deliver(generate_out, out, export_model(model));
            return 0;
        }
        // metrics-from-model
        const std::string text = model_path == "-" ? slurp_stdin() : slurp_file(model_path);
        const ClassModel model = import_model(text);
        MetricsOptions metric_options;
        metric_options.include_constructors = !model_no_constructors;
        return emit_report(model, metric_options, model_correlate, model_rules,
                           /*files_analyzed=*/1, model_format, model_out, out, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        for (const Diagnostic& d : e.diagnostics()) {
            err << to_string(d) << '\n';
        }
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace ckm
