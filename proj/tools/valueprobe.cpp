// valueprobe: administer the 19-value portrait questionnaire to response
// providers and quantify how human-like the resulting value structure is.
//
// Subcommands: collect, analyze, figures, tables, synth.
// Exit codes: 0 ok, 2 config error, 3 provider error, 4 analysis error.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vp/errors.hpp"
#include "vp/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitProvider = 3;
constexpr int kExitAnalysis = 4;

int run(int argc, char** argv) {
    CLI::App app{"value structure probe for language-model endpoints"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir;
    app.add_option("--config", config_path, "JSON run configuration")->envname("VALUE_PROBE_CONFIG");
    app.add_option("--seed", seed, "override the run seed")->each([&](const std::string&) { seed_set = true; });
    app.add_option("--out", out_dir, "override the output directory");

    // collect ----------------------------------------------------------------
    auto* collect = app.add_subcommand("collect", "run sessions against a provider");

    // synth ------------------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset without a gateway");
    std::string synth_strategy = "value_anchor";
    int synth_sessions = 300;
    std::string synth_mode = "batch";
    double synth_amplitude = 1.5, synth_baseline = 3.5, synth_sigma = 0.5;
    double synth_temperature = 0.0;
    std::string synth_questionnaire = "data/pvq_rr_synthetic.json";
    std::string synth_occupations = "data/occupations.txt";
    std::string synth_hobbies = "data/hobbies.txt";
    std::string synth_names = "data/names.csv";
    synth->add_option("--strategy", synth_strategy, "prompt strategy kind");
    synth->add_option("--sessions", synth_sessions, "session count");
    synth->add_option("--mode", synth_mode, "batch or serial");
    synth->add_option("--amplitude", synth_amplitude, "persona cosine amplitude");
    synth->add_option("--baseline", synth_baseline, "persona baseline score");
    synth->add_option("--noise-sigma", synth_sigma, "persona noise sigma");
    synth->add_option("--temperature", synth_temperature, "recorded temperature");
    synth->add_option("--questionnaire", synth_questionnaire, "questionnaire JSON path");
    synth->add_option("--occupations", synth_occupations, "occupation list (demographic)");
    synth->add_option("--hobbies", synth_hobbies, "hobby list (demographic)");
    synth->add_option("--names", synth_names, "names CSV (names strategy)");
    bool synth_animal_welfare = false;
    synth->add_flag("--include-animal-welfare", synth_animal_welfare,
                    "rotate the 20th anchor phrase into value_anchor plans");

    // analyze ----------------------------------------------------------------
    auto* analyze = app.add_subcommand("analyze", "build structure reports from transcript stores");
    std::vector<std::string> store_paths;
    std::string human_reference;
    bool no_prescale = false;
    bool strict_parsing = false;
    std::string dissimilarity = "chord";
    std::string analyze_questionnaire = "data/pvq_rr_synthetic.json";
    analyze->add_option("stores", store_paths, "transcripts.jsonl paths")->required();
    analyze->add_option("--human-config", human_reference, "19x2 human reference CSV (acronym,x,y)");
    analyze->add_flag("--no-prescale", no_prescale, "skip unit-RMS normalization before Procrustes");
    analyze->add_flag("--strict", strict_parsing, "accept only the numbered 'n. s' answer format");
    analyze->add_option("--dissimilarity", dissimilarity,
                        "MDS dissimilarity: chord (sqrt(2(1-r))) or one-minus-r");
    analyze->add_option("--questionnaire", analyze_questionnaire, "questionnaire JSON path");

    // figures ----------------------------------------------------------------
    auto* figures = app.add_subcommand("figures", "render SVG figures from reports");
    std::string figure_kind;
    std::vector<std::string> figure_reports;
    std::string figure_out = "figure.svg";
    figures->add_option("--kind", figure_kind,
                        "rank-heatmap | mds-scatter | anchored-curve | value-ranking-sort")
        ->required();
    figures->add_option("--report", figure_reports, "report.json inputs")->required();
    figures->add_option("--output", figure_out, "output SVG path");

    // tables -----------------------------------------------------------------
    auto* tables = app.add_subcommand("tables", "export CSV tables from reports");
    std::vector<std::string> table_reports;
    bool check_ordering = false;
    std::vector<std::string> wilcoxon_pair;
    tables->add_option("--report", table_reports, "report.json inputs");
    tables->add_flag("--assert-anchor-beats-names", check_ordering,
                     "fail unless the value_anchor SSD is below the names SSD");
    tables->add_option("--wilcoxon", wilcoxon_pair,
                       "two report.json paths; signed-rank test on their mean profiles")
        ->expected(2);

    CLI11_PARSE(app, argc, argv);

    try {
        if (collect->parsed() || synth->parsed()) {
            vp::RunConfig config;
            if (!config_path.empty()) {
                config = vp::load_run_config(config_path);
            } else if (collect->parsed()) {
                throw vp::ConfigError("collect requires --config");
            }
            if (synth->parsed()) {
                config.provider.kind = vp::ProviderKind::synthetic;
                config.provider.synthetic = {synth_amplitude, synth_baseline, synth_sigma};
                config.strategy = vp::strategy_kind_from_string(synth_strategy);
                config.sessions = synth_sessions;
                config.mode = vp::session_mode_from_string(synth_mode);
                config.temperature = synth_temperature;
                config.include_animal_welfare = synth_animal_welfare;
                if (config_path.empty()) {
                    config.questionnaire_path = synth_questionnaire;
                    config.occupations_path = synth_occupations;
                    config.hobbies_path = synth_hobbies;
                    config.names_path = synth_names;
                }
            }
            if (seed_set) config.seed = seed;
            if (!out_dir.empty()) config.out_dir = out_dir;

            const vp::CollectResult result = vp::cmd_collect(config);
            std::printf("store: %s\ncollected: %d  skipped: %d  failed: %d\n",
                        result.store_path.c_str(), result.collected, result.skipped, result.failed);
            return kExitOk;
        }

        if (analyze->parsed()) {
            vp::AnalyzeConfig config;
            config.seed = seed;
            config.out_dir = out_dir.empty() ? "out" : out_dir;
            config.questionnaire_path = analyze_questionnaire;
            config.prescale = !no_prescale;
            config.strict_parsing = strict_parsing;
            config.dissimilarity = dissimilarity;
            if (!human_reference.empty()) config.human_reference_path = human_reference;

            const auto outputs = vp::cmd_analyze(store_paths, config);
            for (const auto& o : outputs) {
                std::printf("%s  rho=%.4f  ssd=%.4f  stress1=%.4f\n", o.report_path.c_str(),
                            o.report.spearman_vs_human, o.report.procrustes_ssd, o.report.stress1);
            }
            return kExitOk;
        }

        if (figures->parsed()) {
            vp::FigureSpec spec;
            spec.kind = figure_kind;
            spec.report_paths = figure_reports;
            spec.output_path = figure_out;
            vp::cmd_figures(spec);
            std::printf("wrote %s\n", figure_out.c_str());
            return kExitOk;
        }

        if (tables->parsed()) {
            if (!wilcoxon_pair.empty()) {
                const auto a = vp::load_report(wilcoxon_pair[0]);
                const auto b = vp::load_report(wilcoxon_pair[1]);
                const auto w = vp::wilcoxon_signed_rank(
                    std::span<const double>(a.mean_profile.data(), a.mean_profile.size()),
                    std::span<const double>(b.mean_profile.data(), b.mean_profile.size()));
                std::printf("wilcoxon: n=%d W+=%.1f z=%.3f p=%.4f (%s)\n", w.n, w.w_plus, w.z, w.p,
                            w.exact ? "exact" : "normal approx");
            }
            vp::TablesConfig config;
            config.report_paths = table_reports;
            config.out_dir = out_dir.empty() ? "tables" : out_dir;
            config.assert_anchor_beats_names = check_ordering;
            const auto result = vp::cmd_tables(config);
            std::printf("wrote %s\nwrote %s\nwrote %s\n", result.values_table_path.c_str(),
                        result.ssd_table_path.c_str(), result.curves_table_path.c_str());
            if (result.ordering_checked) {
                std::printf("value_anchor SSD < names SSD: %s\n",
                            result.ordering_holds ? "yes" : "NO");
                if (!result.ordering_holds) return kExitAnalysis;
            }
            return kExitOk;
        }
    } catch (const vp::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const vp::ProviderError& e) {
        std::fprintf(stderr, "provider error: %s\n", e.what());
        return kExitProvider;
    } catch (const vp::Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", e.kind().c_str(), e.what());
        return kExitAnalysis;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
