#pragma once
// Command implementations behind the CLI: collect datasets, analyze them into
// reports, render figures, export tables. Kept CLI-free so tests can drive
// full pipelines in-process.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vp/gateway.hpp"
#include "vp/prompts.hpp"
#include "vp/report.hpp"

namespace vp {

struct RunConfig {
    ProviderConfig provider;
    StrategyKind strategy = StrategyKind::basic;
    int sessions = 0;
    SessionMode mode = SessionMode::batch;
    double temperature = 0.0;
    std::uint64_t seed = 0;
    int parallelism = 1;
    bool include_animal_welfare = false;
    std::string questionnaire_path = "data/pvq_rr_synthetic.json";
    std::string occupations_path = "data/occupations.txt";
    std::string hobbies_path = "data/hobbies.txt";
    std::string names_path = "data/names.csv";
    std::string out_dir = "out";
    bool flat_out = false;  // write into out_dir directly, no per-dataset subdir
};

RunConfig load_run_config(const std::string& path);

struct CollectResult {
    std::string store_path;       // transcripts.jsonl
    std::string exclusions_path;  // transport failures
    int collected = 0;
    int skipped = 0;  // already present (resume)
    int failed = 0;
};

// plan -> render -> administer for every session; transcripts persisted in
// session_id order; rerunning skips session ids already on disk. Throws
// ConfigError up front; provider errors surface after partial progress is
// written.
CollectResult cmd_collect(const RunConfig& config);

struct AnalyzeOutputs {
    std::string report_path;
    std::string dataset_csv_path;
    std::string exclusions_csv_path;
    StructureReport report;
};

struct AnalyzeConfig {
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    std::string questionnaire_path = "data/pvq_rr_synthetic.json";
    bool prescale = true;
    bool strict_parsing = false;
    std::string dissimilarity = "chord";  // chord | one-minus-r
    std::optional<std::string> human_reference_path;  // 19x2 CSV: acronym,x,y
};

std::vector<AnalyzeOutputs> cmd_analyze(const std::vector<std::string>& store_paths,
                                        const AnalyzeConfig& config);

Embedding2D load_human_reference(const std::string& path);

struct FigureSpec {
    std::string kind;  // rank-heatmap | mds-scatter | anchored-curve | value-ranking-sort
    std::vector<std::string> report_paths;
    std::string output_path;
};

void cmd_figures(const FigureSpec& spec);

struct TablesConfig {
    std::vector<std::string> report_paths;
    std::string out_dir = "tables";
    bool assert_anchor_beats_names = false;
};

struct TablesResult {
    std::string values_table_path;
    std::string ssd_table_path;
    std::string curves_table_path;
    bool ordering_checked = false;
    bool ordering_holds = false;
};

TablesResult cmd_tables(const TablesConfig& config);

}  // namespace vp
