#include "vp/report.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vp/errors.hpp"

namespace vp {

namespace {

nlohmann::json labels_json() {
    nlohmann::json labels = nlohmann::json::array();
    for (ValueId v : all_values()) labels.push_back(std::string(acronym(v)));
    return labels;
}

nlohmann::json embedding_json(const Embedding2D& e) {
    nlohmann::json j;
    j["labels"] = nlohmann::json::array();
    j["points"] = nlohmann::json::array();
    for (std::size_t i = 0; i < e.labels.size(); ++i) {
        j["labels"].push_back(std::string(acronym(e.labels[i])));
        j["points"].push_back({e.points[i][0], e.points[i][1]});
    }
    j["stress1"] = e.stress1;
    return j;
}

Embedding2D embedding_from_json(const nlohmann::json& j) {
    Embedding2D e;
    const auto& labels = j.at("labels");
    const auto& points = j.at("points");
    if (labels.size() != points.size()) throw MalformedReport("embedding labels/points mismatch");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto v = value_from_acronym(labels[i].get<std::string>());
        if (!v) throw MalformedReport("unknown value label " + labels[i].get<std::string>());
        e.labels.push_back(*v);
        e.points.push_back({points[i][0].get<double>(), points[i][1].get<double>()});
    }
    e.stress1 = j.value("stress1", 0.0);
    return e;
}

}  // namespace

StructureReport analyze_dataset(const ResponseMatrix& matrix, const DatasetDescriptor& descriptor,
                                const AnalyzeOptions& options) {
    StructureReport report;
    report.dataset = descriptor;
    report.dataset.sessions = matrix.sessions();

    report.mean_profile = mean_profile(matrix);
    report.ranks = rank_profile(report.mean_profile);

    const auto human = human_benchmark_profile().means();
    report.spearman_vs_human =
        spearman_rho(std::span<const double>(report.mean_profile.data(), report.mean_profile.size()),
                     std::span<const double>(human.data(), human.size()));

    report.correlation_matrix = correlation_matrix(matrix);

    MdsOptions mds_options = options.mds;
    mds_options.seed = options.seed;
    report.embedding = mds_embed(report.correlation_matrix, mds_options);
    report.stress1 = report.embedding.stress1;

    const Embedding2D reference =
        options.human_reference ? *options.human_reference : ideal_circumplex_reference(mds_options);

    // Align on the values present in both embeddings, row-matched by ValueId.
    std::vector<std::array<double, 2>> source, target;
    for (std::size_t i = 0; i < report.embedding.labels.size(); ++i) {
        if (const auto* ref_point = reference.point_of(report.embedding.labels[i])) {
            source.push_back(report.embedding.points[i]);
            target.push_back(*ref_point);
        }
    }
    report.procrustes = procrustes_align(source, target, options.prescale);
    report.procrustes_ssd = report.procrustes.ssd;

    bool any_anchored = false;
    for (const auto& info : matrix.session_meta()) {
        if (info.anchor_value) {
            any_anchored = true;
            break;
        }
    }
    if (any_anchored) {
        report.anchored_curve = anchored_curve(matrix);
        report.sine_fit = fit_sine(*report.anchored_curve);
    }
    return report;
}

std::string report_to_json(const StructureReport& report) {
    nlohmann::json j;
    j["dataset"] = {
        {"name", report.dataset.name},
        {"model", report.dataset.model},
        {"strategy", std::string(to_string(report.dataset.strategy))},
        {"temperature", report.dataset.temperature},
        {"mode", std::string(to_string(report.dataset.mode))},
        {"sessions", report.dataset.sessions},
        {"excluded", report.dataset.excluded},
    };
    j["value_labels"] = labels_json();
    j["mean_profile"] = report.mean_profile;
    j["ranks"] = report.ranks;
    j["spearman_vs_human"] = report.spearman_vs_human;

    nlohmann::json cm;
    cm["labels"] = labels_json();
    cm["rows"] = nlohmann::json::array();
    for (const auto& row : report.correlation_matrix.c) cm["rows"].push_back(row);
    cm["valid"] = report.correlation_matrix.valid;
    j["correlation_matrix"] = cm;

    j["embedding"] = embedding_json(report.embedding);
    j["stress1"] = report.stress1;

    nlohmann::json pj;
    pj["ssd"] = report.procrustes.ssd;
    pj["rotation"] = {{report.procrustes.rotation[0][0], report.procrustes.rotation[0][1]},
                      {report.procrustes.rotation[1][0], report.procrustes.rotation[1][1]}};
    pj["aligned"] = nlohmann::json::array();
    for (const auto& p : report.procrustes.aligned) pj["aligned"].push_back({p[0], p[1]});
    pj["target"] = nlohmann::json::array();
    for (const auto& p : report.procrustes.target) pj["target"].push_back({p[0], p[1]});
    j["procrustes"] = pj;
    j["procrustes_ssd"] = report.procrustes_ssd;

    if (report.anchored_curve) {
        j["anchored_curve"] = {{"mean", report.anchored_curve->mean},
                               {"counts", report.anchored_curve->counts}};
    } else {
        j["anchored_curve"] = nullptr;
    }
    if (report.sine_fit) {
        j["sine_fit"] = {{"amplitude", report.sine_fit->amplitude},
                         {"phase", report.sine_fit->phase},
                         {"offset", report.sine_fit->offset},
                         {"r_squared", report.sine_fit->r_squared}};
    } else {
        j["sine_fit"] = nullptr;
    }
    return j.dump(2);
}

StructureReport report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedReport(std::string("invalid JSON: ") + e.what());
    }
    try {
        StructureReport report;
        const auto& d = j.at("dataset");
        report.dataset.name = d.value("name", std::string());
        report.dataset.model = d.value("model", std::string());
        report.dataset.strategy = strategy_kind_from_string(d.value("strategy", std::string("basic")));
        report.dataset.temperature = d.value("temperature", 0.0);
        report.dataset.mode = session_mode_from_string(d.value("mode", std::string("batch")));
        report.dataset.sessions = d.value("sessions", 0);
        report.dataset.excluded = d.value("excluded", 0);

        const auto mp = j.at("mean_profile").get<std::vector<double>>();
        const auto rk = j.at("ranks").get<std::vector<double>>();
        if (mp.size() != kValueCount || rk.size() != kValueCount) {
            throw MalformedReport("profile length mismatch");
        }
        std::copy(mp.begin(), mp.end(), report.mean_profile.begin());
        std::copy(rk.begin(), rk.end(), report.ranks.begin());
        report.spearman_vs_human = j.at("spearman_vs_human").get<double>();

        const auto& cm = j.at("correlation_matrix");
        const auto rows = cm.at("rows");
        if (rows.size() != kValueCount) throw MalformedReport("correlation matrix row count");
        for (std::size_t i = 0; i < kValueCount; ++i) {
            const auto row = rows[i].get<std::vector<double>>();
            if (row.size() != kValueCount) throw MalformedReport("correlation matrix column count");
            std::copy(row.begin(), row.end(), report.correlation_matrix.c[i].begin());
        }
        const auto valid = cm.at("valid").get<std::vector<bool>>();
        for (std::size_t i = 0; i < kValueCount && i < valid.size(); ++i) {
            report.correlation_matrix.valid[i] = valid[i];
        }

        report.embedding = embedding_from_json(j.at("embedding"));
        report.stress1 = j.value("stress1", report.embedding.stress1);

        const auto& pj = j.at("procrustes");
        report.procrustes.ssd = pj.at("ssd").get<double>();
        const auto& rot = pj.at("rotation");
        report.procrustes.rotation = {{{rot[0][0].get<double>(), rot[0][1].get<double>()},
                                       {rot[1][0].get<double>(), rot[1][1].get<double>()}}};
        for (const auto& p : pj.at("aligned")) {
            report.procrustes.aligned.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        for (const auto& p : pj.at("target")) {
            report.procrustes.target.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        report.procrustes_ssd = j.value("procrustes_ssd", report.procrustes.ssd);

        if (j.contains("anchored_curve") && !j["anchored_curve"].is_null()) {
            AnchoredCurve curve;
            const auto mean = j["anchored_curve"].at("mean").get<std::vector<double>>();
            const auto counts = j["anchored_curve"].at("counts").get<std::vector<long>>();
            if (mean.size() != kValueCount || counts.size() != kValueCount) {
                throw MalformedReport("anchored curve length mismatch");
            }
            std::copy(mean.begin(), mean.end(), curve.mean.begin());
            std::copy(counts.begin(), counts.end(), curve.counts.begin());
            report.anchored_curve = curve;
        }
        if (j.contains("sine_fit") && !j["sine_fit"].is_null()) {
            SineFit fit;
            fit.amplitude = j["sine_fit"].at("amplitude").get<double>();
            fit.phase = j["sine_fit"].at("phase").get<double>();
            fit.offset = j["sine_fit"].at("offset").get<double>();
            fit.r_squared = j["sine_fit"].at("r_squared").get<double>();
            report.sine_fit = fit;
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedReport(e.what());
    }
}

void save_report(const std::string& path, const StructureReport& report) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for write");
    out << report_to_json(report) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

StructureReport load_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInput(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return report_from_json(buf.str());
}

bool anchor_beats_names(const StructureReport& value_anchor, const StructureReport& names) {
    return value_anchor.procrustes_ssd < names.procrustes_ssd;
}

}  // namespace vp
