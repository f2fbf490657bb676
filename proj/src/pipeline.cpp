#include "vp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "vp/analysis.hpp"
#include "vp/dataset.hpp"
#include "vp/errors.hpp"
#include "vp/svg.hpp"

namespace fs = std::filesystem;

namespace vp {

namespace {

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) {
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')
                   ? c
                   : '_';
    }
    return out.empty() ? std::string("dataset") : out;
}

std::string fmt_temp(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", t);
    return buf;
}

std::string dataset_tag(const std::string& model, StrategyKind strategy, double temperature,
                        SessionMode mode) {
    return sanitize(model) + "_" + std::string(to_string(strategy)) + "_t" + fmt_temp(temperature) +
           "_" + std::string(to_string(mode));
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for write");
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

std::optional<ValueId> anchor_of(const PromptStrategy& strategy) {
    if (const auto* anchored = std::get_if<ValueAnchorStrategy>(&strategy)) {
        return anchored->anchor.value;
    }
    return std::nullopt;
}

struct SessionOutcome {
    std::optional<SessionTranscript> transcript;
    std::string error_kind;
    std::string error_detail;
};

}  // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    RunConfig config;
    try {
        if (j.contains("provider")) {
            const auto& p = j["provider"];
            config.provider.kind = provider_kind_from_string(p.value("kind", std::string("synthetic")));
            config.provider.endpoint_url = p.value("endpoint_url", std::string());
            config.provider.model_name = p.value("model", config.provider.model_name);
            config.provider.credential_env = p.value("credential_env", config.provider.credential_env);
            config.provider.timeout_seconds = p.value("timeout_seconds", config.provider.timeout_seconds);
            config.provider.max_retries = p.value("max_retries", config.provider.max_retries);
            config.provider.retry_backoff_seconds =
                p.value("retry_backoff_seconds", config.provider.retry_backoff_seconds);
            config.provider.replay_store_path = p.value("replay_store", std::string());
            if (p.contains("synthetic")) {
                const auto& s = p["synthetic"];
                config.provider.synthetic.amplitude = s.value("amplitude", 1.5);
                config.provider.synthetic.baseline = s.value("baseline", 3.5);
                config.provider.synthetic.noise_sigma = s.value("noise_sigma", 0.0);
            }
        }
        config.strategy = strategy_kind_from_string(j.value("strategy", std::string("basic")));
        config.sessions = j.value("sessions", 0);
        config.mode = session_mode_from_string(j.value("mode", std::string("batch")));
        config.temperature = j.value("temperature", 0.0);
        config.seed = j.value("seed", static_cast<std::uint64_t>(0));
        config.parallelism = j.value("parallelism", 1);
        config.include_animal_welfare = j.value("include_animal_welfare", false);
        config.questionnaire_path = j.value("questionnaire", config.questionnaire_path);
        config.occupations_path = j.value("occupations", config.occupations_path);
        config.hobbies_path = j.value("hobbies", config.hobbies_path);
        config.names_path = j.value("names", config.names_path);
        config.out_dir = j.value("out", config.out_dir);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
    return config;
}

CollectResult cmd_collect(const RunConfig& config) {
    if (config.sessions < 0) throw ConfigError("sessions must be >= 0");
    if (config.parallelism < 1) throw ConfigError("parallelism must be >= 1");

    const Questionnaire questionnaire = load_questionnaire(config.questionnaire_path);

    ProviderConfig provider_config = config.provider;
    provider_config.temperature = config.temperature;
    provider_config.seed = config.seed;
    auto provider = make_provider(provider_config);  // throws ConfigError for missing credentials

    const fs::path out_dir =
        config.flat_out
            ? fs::path(config.out_dir)
            : fs::path(config.out_dir) /
                  dataset_tag(provider_config.model_name, config.strategy, config.temperature, config.mode);
    fs::create_directories(out_dir);
    const std::string store_path = (out_dir / "transcripts.jsonl").string();
    const std::string exclusions_path = (out_dir / "exclusions.csv").string();

    PlanInputs inputs;
    inputs.include_animal_welfare = config.include_animal_welfare;
    if (config.strategy == StrategyKind::demographic || config.strategy == StrategyKind::names) {
        inputs = load_plan_inputs(config.occupations_path, config.hobbies_path, config.names_path);
        inputs.include_animal_welfare = config.include_animal_welfare;
    } else if (config.strategy == StrategyKind::generated_persona) {
        // Personas persist next to the plan; a rerun reuses them verbatim.
        const std::string personas_path = (out_dir / "personas.txt").string();
        if (fs::exists(personas_path)) {
            std::ifstream in(personas_path);
            std::string line;
            while (std::getline(in, line)) {
                if (!line.empty()) inputs.personas.push_back(line);
            }
        }
        if (static_cast<int>(inputs.personas.size()) < config.sessions) {
            inputs.personas = generate_personas(config.sessions, *provider, config.seed);
            std::ostringstream buf;
            for (const auto& p : inputs.personas) {
                std::string flat = p;
                std::replace(flat.begin(), flat.end(), '\n', ' ');
                buf << flat << '\n';
            }
            write_file(personas_path, buf.str());
        }
    }

    const RunPlan plan =
        plan_run_set(config.strategy, config.sessions, config.seed, config.temperature, inputs);

    // Resume: skip session ids already persisted.
    std::set<int> done;
    std::vector<SessionTranscript> existing;
    if (fs::exists(store_path)) {
        existing = load_transcripts(store_path);
        for (const auto& t : existing) done.insert(t.session_id);
    }

    std::vector<const SessionSpec*> pending;
    for (const auto& spec : plan.sessions) {
        if (!done.count(spec.session_id)) pending.push_back(&spec);
    }

    std::vector<SessionOutcome> outcomes(pending.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pending.size()) break;
            const SessionSpec& spec = *pending[i];
            AdminContext ctx;
            ctx.session_id = spec.session_id;
            ctx.temperature = spec.temperature;
            ctx.strategy_descriptor = strategy_descriptor(spec.strategy);
            ctx.anchor_value = anchor_of(spec.strategy);
            ctx.model_name = provider_config.model_name;
            ctx.max_retries = provider_config.max_retries;
            ctx.retry_backoff_seconds = provider_config.retry_backoff_seconds;
            try {
                const std::string prompt = render_prompt(spec.strategy);
                outcomes[i].transcript =
                    config.mode == SessionMode::batch
                        ? administer_batch(*provider, prompt, questionnaire, spec.gender_version, ctx)
                        : administer_serial(*provider, prompt, questionnaire, spec.gender_version, ctx);
            } catch (const Error& e) {
                outcomes[i].error_kind = e.kind();
                outcomes[i].error_detail = e.what();
            }
        }
    };

    const int threads = std::max(1, std::min<int>(config.parallelism, static_cast<int>(pending.size())));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    CollectResult result;
    result.store_path = store_path;
    result.exclusions_path = exclusions_path;
    result.skipped = static_cast<int>(done.size());

    std::vector<ExclusionRecord> failures;
    {
        std::ofstream out(store_path, std::ios::app | std::ios::binary);
        if (!out) throw IoError("cannot open " + store_path + " for append");
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            if (outcomes[i].transcript) {
                out << transcript_to_json_line(*outcomes[i].transcript) << '\n';
                ++result.collected;
            } else {
                failures.push_back(
                    {pending[i]->session_id, outcomes[i].error_kind, outcomes[i].error_detail});
                ++result.failed;
            }
        }
    }
    write_file(exclusions_path, exclusions_to_csv(failures));

    if (result.failed > 0) {
        throw ProviderError("ProviderError",
                            std::to_string(result.failed) + " sessions failed; progress kept in " +
                                store_path);
    }
    return result;
}

Embedding2D load_human_reference(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingInput(path);
    Embedding2D reference;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.rfind("acronym", 0) == 0 || line.rfind("value", 0) == 0) continue;
        std::stringstream ss(line);
        std::string code, xs, ys;
        if (!std::getline(ss, code, ',') || !std::getline(ss, xs, ',') || !std::getline(ss, ys)) {
            throw MalformedReport(path + " line " + std::to_string(lineno) + ": expected code,x,y");
        }
        const auto v = value_from_acronym(code);
        if (!v) throw MalformedReport(path + " line " + std::to_string(lineno) + ": unknown value " + code);
        reference.labels.push_back(*v);
        try {
            reference.points.push_back({std::stod(xs), std::stod(ys)});
        } catch (const std::exception&) {
            throw MalformedReport(path + " line " + std::to_string(lineno) + ": bad coordinate");
        }
    }
    if (reference.labels.size() != kValueCount) {
        throw MalformedReport(path + ": expected 19 rows, found " +
                              std::to_string(reference.labels.size()));
    }
    return reference;
}

std::vector<AnalyzeOutputs> cmd_analyze(const std::vector<std::string>& store_paths,
                                        const AnalyzeConfig& config) {
    if (store_paths.empty()) throw ConfigError("no transcript stores given");
    const Questionnaire questionnaire = load_questionnaire(config.questionnaire_path);
    fs::create_directories(config.out_dir);

    AnalyzeOptions options;
    options.seed = config.seed;
    options.prescale = config.prescale;
    if (config.dissimilarity == "chord") {
        options.mds.transform = DissimilarityTransform::chord;
    } else if (config.dissimilarity == "one-minus-r") {
        options.mds.transform = DissimilarityTransform::one_minus_r;
    } else {
        throw ConfigError("unknown dissimilarity '" + config.dissimilarity + "'");
    }
    if (config.human_reference_path) {
        options.human_reference = load_human_reference(*config.human_reference_path);
    }

    std::vector<AnalyzeOutputs> outputs;
    std::vector<std::string> failures;
    for (const auto& store_path : store_paths) {
        try {
            const auto transcripts = load_transcripts(store_path);
            if (transcripts.empty()) throw EmptyDataset(store_path + " is empty");
            const AssembledDataset assembled = assemble_dataset(transcripts, questionnaire,
                                                                config.strict_parsing);

            const auto& first = assembled.matrix.session(0);
            DatasetDescriptor descriptor;
            descriptor.model = transcripts.front().model_name;
            descriptor.strategy = first.kind;
            descriptor.temperature = first.temperature;
            descriptor.mode = first.mode;
            descriptor.excluded = static_cast<int>(assembled.exclusions.size());
            descriptor.name =
                dataset_tag(descriptor.model, descriptor.strategy, descriptor.temperature, descriptor.mode);

            const StructureReport report = analyze_dataset(assembled.matrix, descriptor, options);

            AnalyzeOutputs out;
            const fs::path base = fs::path(config.out_dir) / descriptor.name;
            fs::create_directories(base);
            out.report_path = (base / "report.json").string();
            out.dataset_csv_path = (base / "dataset.csv").string();
            out.exclusions_csv_path = (base / "exclusions.csv").string();
            save_report(out.report_path, report);
            write_file(out.dataset_csv_path, dataset_to_csv(assembled.matrix, questionnaire));
            write_file(out.exclusions_csv_path, exclusions_to_csv(assembled.exclusions));
            out.report = report;
            outputs.push_back(std::move(out));
        } catch (const Error& e) {
            failures.push_back(store_path + ": " + e.what());
            std::fprintf(stderr, "analyze failed for %s: %s\n", store_path.c_str(), e.what());
        }
    }
    if (outputs.empty()) {
        throw AnalysisError("AnalysisError", "every dataset failed: " +
                                                 (failures.empty() ? std::string("none given")
                                                                   : failures.front()));
    }
    return outputs;
}

void cmd_figures(const FigureSpec& spec) {
    for (const auto& p : spec.report_paths) {
        if (!fs::exists(p)) throw MissingInput(p);
    }
    std::vector<StructureReport> reports;
    reports.reserve(spec.report_paths.size());
    for (const auto& p : spec.report_paths) reports.push_back(load_report(p));
    if (reports.empty()) throw MissingInput("no reports given");

    std::string svg;
    if (spec.kind == "rank-heatmap") {
        // Rows: model/temperature pairs in first-seen order. Columns: strategies.
        const std::array<StrategyKind, 5> strategies = {
            StrategyKind::basic, StrategyKind::value_anchor, StrategyKind::demographic,
            StrategyKind::generated_persona, StrategyKind::names};
        std::vector<std::string> rows;
        std::vector<std::string> row_keys;
        for (const auto& r : reports) {
            const std::string key = r.dataset.model + " t" + fmt_temp(r.dataset.temperature);
            if (std::find(row_keys.begin(), row_keys.end(), key) == row_keys.end()) {
                row_keys.push_back(key);
                rows.push_back(key);
            }
        }
        std::vector<std::string> cols;
        for (auto s : strategies) cols.emplace_back(to_string(s));
        std::vector<std::vector<HeatmapCell>> cells(
            rows.size(), std::vector<HeatmapCell>(cols.size(), HeatmapCell{0.0, false}));
        for (const auto& r : reports) {
            const std::string key = r.dataset.model + " t" + fmt_temp(r.dataset.temperature);
            const auto row = static_cast<std::size_t>(
                std::find(row_keys.begin(), row_keys.end(), key) - row_keys.begin());
            const auto col = static_cast<std::size_t>(
                std::find(strategies.begin(), strategies.end(), r.dataset.strategy) -
                strategies.begin());
            cells[row][col] = HeatmapCell{r.spearman_vs_human, true};
        }
        svg = render_rank_heatmap(rows, cols, cells);
    } else if (spec.kind == "mds-scatter") {
        svg = render_mds_scatter(reports.front());
    } else if (spec.kind == "anchored-curve") {
        const auto& r = reports.front();
        if (!r.anchored_curve || !r.sine_fit) {
            throw MalformedReport(spec.report_paths.front() + " has no anchored curve section");
        }
        svg = render_anchored_curve(*r.anchored_curve, *r.sine_fit);
    } else if (spec.kind == "value-ranking-sort") {
        svg = render_value_ranking(reports);
    } else {
        throw ConfigError("unknown figure kind '" + spec.kind + "'");
    }

    if (const fs::path parent = fs::path(spec.output_path).parent_path(); !parent.empty()) {
        fs::create_directories(parent);
    }
    write_file(spec.output_path, svg);
}

TablesResult cmd_tables(const TablesConfig& config) {
    std::vector<StructureReport> reports;
    for (const auto& p : config.report_paths) reports.push_back(load_report(p));
    fs::create_directories(config.out_dir);

    TablesResult result;
    const HumanBenchmark& human = human_benchmark_profile();

    // (a) value means and ranks next to the human benchmark, human rank order.
    {
        std::ostringstream out;
        out << "value,human_rank,human_mean";
        for (const auto& r : reports) out << ',' << r.dataset.name << "_mean," << r.dataset.name << "_rank";
        out << "\n";
        std::vector<ValueId> order(static_cast<std::size_t>(kValueCount), ValueId::SDT);
        for (const auto& e : human.entries) order[static_cast<std::size_t>(e.rank - 1)] = e.value;
        char buf[64];
        for (ValueId v : order) {
            const auto& entry = human[v];
            std::snprintf(buf, sizeof(buf), "%.2f", entry.mean_centered);
            out << acronym(v) << ',' << entry.rank << ',' << buf;
            for (const auto& r : reports) {
                const auto pos = static_cast<std::size_t>(circle_position(v));
                std::snprintf(buf, sizeof(buf), "%.4f", r.mean_profile[pos]);
                out << ',' << buf;
                std::snprintf(buf, sizeof(buf), "%g", r.ranks[pos]);
                out << ',' << buf;
            }
            out << "\n";
        }
        result.values_table_path = (fs::path(config.out_dir) / "values_table.csv").string();
        write_file(result.values_table_path, out.str());
    }

    // (b) SSD matrix: rows model, sub-rows temperature, columns prompts.
    {
        const std::array<StrategyKind, 5> strategies = {
            StrategyKind::basic, StrategyKind::value_anchor, StrategyKind::demographic,
            StrategyKind::generated_persona, StrategyKind::names};
        std::ostringstream out;
        out << "model,temperature";
        for (auto s : strategies) out << ',' << to_string(s);
        out << "\n";
        std::vector<std::pair<std::string, double>> row_keys;
        for (const auto& r : reports) {
            const std::pair<std::string, double> key{r.dataset.model, r.dataset.temperature};
            if (std::find(row_keys.begin(), row_keys.end(), key) == row_keys.end()) {
                row_keys.push_back(key);
            }
        }
        char buf[64];
        for (const auto& [model, temp] : row_keys) {
            out << model << ',' << fmt_temp(temp);
            for (auto s : strategies) {
                out << ',';
                for (const auto& r : reports) {
                    if (r.dataset.model == model && r.dataset.temperature == temp &&
                        r.dataset.strategy == s) {
                        std::snprintf(buf, sizeof(buf), "%.4f", r.procrustes_ssd);
                        out << buf;
                        break;
                    }
                }
            }
            out << "\n";
        }
        result.ssd_table_path = (fs::path(config.out_dir) / "ssd_table.csv").string();
        write_file(result.ssd_table_path, out.str());
    }

    // (c) anchored curves, one column per report; empty when absent.
    {
        std::ostringstream out;
        out << "offset";
        for (const auto& r : reports) out << ',' << r.dataset.name;
        out << "\n";
        char buf[64];
        for (int o = 0; o < kValueCount; ++o) {
            out << o;
            for (const auto& r : reports) {
                out << ',';
                if (r.anchored_curve) {
                    std::snprintf(buf, sizeof(buf), "%.4f",
                                  r.anchored_curve->mean[static_cast<std::size_t>(o)]);
                    out << buf;
                }
            }
            out << "\n";
        }
        result.curves_table_path = (fs::path(config.out_dir) / "anchored_curves.csv").string();
        write_file(result.curves_table_path, out.str());
    }

    if (config.assert_anchor_beats_names) {
        const StructureReport* anchor = nullptr;
        const StructureReport* names = nullptr;
        for (const auto& r : reports) {
            if (r.dataset.strategy == StrategyKind::value_anchor && !anchor) anchor = &r;
            if (r.dataset.strategy == StrategyKind::names && !names) names = &r;
        }
        if (!anchor || !names) {
            throw ConfigError("ordering check needs one value_anchor and one names report");
        }
        result.ordering_checked = true;
        result.ordering_holds = anchor_beats_names(*anchor, *names);
    }
    return result;
}

}  // namespace vp
