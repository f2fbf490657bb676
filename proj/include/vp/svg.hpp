#pragma once
// Static SVG figures mirroring the analysis outputs: rank-correlation
// heatmaps, aligned MDS scatters, anchored score curves, and human-rank-order
// value plots. Hand-rolled markup with fixed-precision numbers so identical
// inputs give identical bytes.

#include <string>
#include <vector>

#include "vp/analysis.hpp"
#include "vp/report.hpp"

namespace vp {

// Grid of Spearman rho values; rows are models, columns prompt strategies.
struct HeatmapCell {
    double value = 0.0;
    bool present = true;  // absent cells render as grey "NA"
};
std::string render_rank_heatmap(const std::vector<std::string>& row_labels,
                                const std::vector<std::string>& column_labels,
                                const std::vector<std::vector<HeatmapCell>>& cells);

// Reference configuration (circles) overlaid with the aligned embedding
// (crosses), acronym labels on both.
std::string render_mds_scatter(const StructureReport& report);

// The 19-offset curve with the fitted sine sampled densely on top.
std::string render_anchored_curve(const AnchoredCurve& curve, const SineFit& fit);

// Mean centered scores per value, x-axis ordered by the human ranking, one
// polyline per dataset plus the human benchmark in red.
std::string render_value_ranking(const std::vector<StructureReport>& reports);

}  // namespace vp
