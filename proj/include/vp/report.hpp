#pragma once
// StructureReport: the per-dataset analysis bundle and its JSON round-trip.

#include <optional>
#include <string>

#include "vp/analysis.hpp"
#include "vp/dataset.hpp"

namespace vp {

struct DatasetDescriptor {
    std::string name;          // e.g. "synthetic-circumplex_value_anchor_t0.0_batch"
    std::string model;
    StrategyKind strategy = StrategyKind::basic;
    double temperature = 0.0;
    SessionMode mode = SessionMode::batch;
    int sessions = 0;
    int excluded = 0;
};

struct StructureReport {
    DatasetDescriptor dataset;
    Profile mean_profile{};
    std::array<double, kValueCount> ranks{};
    double spearman_vs_human = 0.0;
    CorrelationMatrix correlation_matrix;
    Embedding2D embedding;
    double stress1 = 0.0;
    ProcrustesResult procrustes;
    double procrustes_ssd = 0.0;
    std::optional<AnchoredCurve> anchored_curve;
    std::optional<SineFit> sine_fit;
};

struct AnalyzeOptions {
    std::uint64_t seed = 0;
    MdsOptions mds;
    bool prescale = true;
    // Procrustes target; the ideal circumplex embedding when absent.
    std::optional<Embedding2D> human_reference;
};

// Runs the full structural analysis for one dataset. The anchored curve and
// sine fit are present only when the dataset contains anchored sessions.
StructureReport analyze_dataset(const ResponseMatrix& matrix, const DatasetDescriptor& descriptor,
                                const AnalyzeOptions& options = {});

std::string report_to_json(const StructureReport& report);
StructureReport report_from_json(const std::string& text);

void save_report(const std::string& path, const StructureReport& report);
StructureReport load_report(const std::string& path);

// True when the value-anchor report fits the reference more closely (lower
// SSD) than the names report; the ordering regression applied to real data.
bool anchor_beats_names(const StructureReport& value_anchor, const StructureReport& names);

}  // namespace vp
