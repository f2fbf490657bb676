#pragma once
// Statistics over response tensors: ipsative centering, rankings, rank
// correlation, internal consistency, the 19x19 correlation structure, SMACOF
// MDS, Procrustes alignment, the anchored score curve with its sine fit, and
// the Wilcoxon signed-rank comparison.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "vp/dataset.hpp"
#include "vp/parser.hpp"
#include "vp/questionnaire.hpp"
#include "vp/values.hpp"

namespace vp {

// Centered per-session value scores, indexed by circle position.
using Profile = std::array<double, kValueCount>;

// v_i = mean of the value's three items minus the grand mean of all 57.
Profile center_session(const ScoreVector& scores, const Questionnaire& questionnaire);
Profile center_session(const ResponseMatrix& matrix, int session);

// Per-value mean of the centered per-session profiles.
Profile mean_profile(const ResponseMatrix& matrix);

// Descending ranks, 1 = highest value; ties get average ranks.
std::array<double, kValueCount> rank_profile(const Profile& profile);
std::vector<double> average_ranks_descending(std::span<const double> values);

// Pearson correlation of tie-averaged ranks. Throws DegenerateInput when
// either side has zero rank variance.
double spearman_rho(std::span<const double> a, std::span<const double> b);

// item_series: one score series per item, all of equal length N >= 2.
// alpha = (k/(k-1)) * (1 - sum(var_j) / var(sum)). Throws ZeroVariance when
// the per-observation sums do not vary.
double cronbach_alpha(const std::vector<std::vector<double>>& item_series);

struct CorrelationMatrix {
    std::array<std::array<double, kValueCount>, kValueCount> c{};
    std::array<bool, kValueCount> valid{};  // false marks a zero-variance value

    int valid_count() const {
        int n = 0;
        for (bool v : valid) n += v ? 1 : 0;
        return n;
    }
};

// Pearson correlations across sessions of centered value scores.
CorrelationMatrix correlation_matrix(const ResponseMatrix& matrix);

struct Embedding2D {
    std::vector<ValueId> labels;  // embedded values, circle order
    std::vector<std::array<double, 2>> points;
    double stress1 = 0.0;

    const std::array<double, 2>* point_of(ValueId v) const;
};

// chord: delta = sqrt(2(1-r)), the distance between unit vectors correlating
// at r; a perfect circumplex embeds exactly. one_minus_r: delta = 1 - r, kept
// as a config alternative (its dissimilarities are not flat-embeddable, so a
// perfect circumplex bottoms out near stress-1 0.2).
enum class DissimilarityTransform { chord, one_minus_r };

struct MdsOptions {
    std::uint64_t seed = 0;
    int restarts = 8;       // classical-scaling start plus restarts-1 random starts
    int max_iterations = 512;
    double tolerance = 1e-9;
    DissimilarityTransform transform = DissimilarityTransform::chord;
    // When set, receives each restart's per-iteration raw stress sequence.
    std::vector<std::vector<double>>* stress_traces = nullptr;
};

// SMACOF majorization over dissimilarities delta = 1 - C. Deterministic given
// (C, seed, restarts); lowest stress-1 wins, ties broken by restart index.
Embedding2D mds_embed(const CorrelationMatrix& correlations, const MdsOptions& options = {});

// The embedding a perfect circumplex produces; Procrustes target when no
// external human configuration is supplied.
Embedding2D ideal_circumplex_reference(const MdsOptions& options = {});

struct ProcrustesResult {
    std::vector<std::array<double, 2>> aligned;      // source, normalized frame
    std::vector<std::array<double, 2>> target;       // target, normalized frame
    std::array<std::array<double, 2>, 2> rotation{};  // orthogonal, reflection allowed
    std::array<double, 2> source_centroid{};
    std::array<double, 2> target_centroid{};
    double source_scale = 1.0;
    double target_scale = 1.0;
    double ssd = 0.0;
};

// Mean-centers both configurations, rescales each to unit RMS radius (unless
// prescale is false), then applies the SSD-minimizing orthogonal transform.
ProcrustesResult procrustes_align(const std::vector<std::array<double, 2>>& source,
                                  const std::vector<std::array<double, 2>>& target,
                                  bool prescale = true);

struct AnchoredCurve {
    std::array<double, kValueCount> mean{};  // by circular offset from the anchor
    std::array<long, kValueCount> counts{};
};

// Shifts every anchored session's centered profile so the anchor sits at
// offset 0, then averages per offset across sessions and anchors.
AnchoredCurve anchored_curve(const ResponseMatrix& matrix);

struct SineFit {
    double amplitude = 0.0;  // >= 0
    double phase = 0.0;      // radians
    double offset = 0.0;
    double r_squared = 0.0;
};

// Least squares on the cos/sin basis at the curve's period:
// y(o) ~ offset + amplitude * cos(2*pi*o/n - phase).
SineFit fit_sine(std::span<const double> curve);
SineFit fit_sine(const AnchoredCurve& curve);

enum class Alternative { two_sided, less, greater };

struct WilcoxonResult {
    double w_plus = 0.0;
    int n = 0;            // non-zero differences
    double z = 0.0;       // normal approximation with continuity correction
    double p = 1.0;
    bool exact = false;   // exact enumeration used (n <= 20)
};

// Signed-rank test on paired samples; zero differences dropped, ties get
// average ranks. Exact enumeration for n <= 20, normal approximation beyond.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    Alternative alternative = Alternative::two_sided);

double normal_cdf(double x);

}  // namespace vp
