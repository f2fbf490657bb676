#include "vp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vp/errors.hpp"
#include "vp/rng.hpp"

namespace vp {

namespace {

// Variance floor separating true zero-variance data from double rounding dust.
constexpr double kVarianceFloor = 1e-18;

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double population_variance(std::span<const double> xs) {
    const double m = mean_of(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return acc / static_cast<double>(xs.size());
}

double pearson(std::span<const double> a, std::span<const double> b) {
    const double ma = mean_of(a);
    const double mb = mean_of(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= kVarianceFloor || sbb <= kVarianceFloor) {
        throw DegenerateInput("zero variance in correlation input");
    }
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace

Profile center_session(const ScoreVector& scores, const Questionnaire& questionnaire) {
    double grand = 0.0;
    for (int idx = 1; idx <= Questionnaire::kItemCount; ++idx) grand += scores[idx];
    grand /= Questionnaire::kItemCount;

    Profile profile{};
    for (ValueId v : all_values()) {
        const auto items = questionnaire.items_of(v);
        double m = 0.0;
        for (int idx : items) m += scores[idx];
        m /= static_cast<double>(items.size());
        profile[static_cast<std::size_t>(circle_position(v))] = m - grand;
    }
    return profile;
}

Profile center_session(const ResponseMatrix& matrix, int session) {
    double grand = 0.0;
    Profile profile{};
    for (ValueId v : all_values()) {
        double m = 0.0;
        for (int variant = 1; variant <= ResponseMatrix::kVariants; ++variant) {
            m += matrix.at(v, variant, session);
        }
        m /= ResponseMatrix::kVariants;
        profile[static_cast<std::size_t>(circle_position(v))] = m;
        grand += m;
    }
    grand /= kValueCount;  // equal item counts per value make this the grand mean
    for (double& x : profile) x -= grand;
    return profile;
}

Profile mean_profile(const ResponseMatrix& matrix) {
    Profile acc{};
    for (int k = 0; k < matrix.sessions(); ++k) {
        const Profile p = center_session(matrix, k);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += p[i];
    }
    for (double& x : acc) x /= matrix.sessions();
    return acc;
}

std::vector<double> average_ranks_descending(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

std::array<double, kValueCount> rank_profile(const Profile& profile) {
    const auto ranks = average_ranks_descending(std::span<const double>(profile.data(), profile.size()));
    std::array<double, kValueCount> out{};
    std::copy(ranks.begin(), ranks.end(), out.begin());
    return out;
}

double spearman_rho(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw DegenerateInput("spearman needs two equal-length series of >= 2");
    }
    const auto ra = average_ranks_descending(a);
    const auto rb = average_ranks_descending(b);
    try {
        return pearson(ra, rb);
    } catch (const DegenerateInput&) {
        throw DegenerateInput("all-tied input has no rank variance");
    }
}

double cronbach_alpha(const std::vector<std::vector<double>>& item_series) {
    const std::size_t k = item_series.size();
    if (k < 2) throw DegenerateInput("cronbach alpha needs >= 2 item series");
    const std::size_t n = item_series.front().size();
    if (n < 2) throw DegenerateInput("cronbach alpha needs >= 2 observations");
    for (const auto& s : item_series) {
        if (s.size() != n) throw DegenerateInput("item series lengths differ");
    }

    double item_var_sum = 0.0;
    for (const auto& s : item_series) item_var_sum += population_variance(s);

    std::vector<double> totals(n, 0.0);
    for (const auto& s : item_series) {
        for (std::size_t i = 0; i < n; ++i) totals[i] += s[i];
    }
    const double total_var = population_variance(totals);
    if (total_var <= kVarianceFloor) {
        throw ZeroVariance("per-observation sums do not vary");
    }
    const double kk = static_cast<double>(k);
    return (kk / (kk - 1.0)) * (1.0 - item_var_sum / total_var);
}

CorrelationMatrix correlation_matrix(const ResponseMatrix& matrix) {
    const int n = matrix.sessions();
    if (n < 3) throw TooFewSessions(static_cast<std::size_t>(n));

    std::array<std::vector<double>, kValueCount> series;
    for (auto& s : series) s.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Profile p = center_session(matrix, k);
        for (int i = 0; i < kValueCount; ++i) series[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(i)];
    }

    CorrelationMatrix out;
    for (int i = 0; i < kValueCount; ++i) {
        out.valid[static_cast<std::size_t>(i)] =
            population_variance(series[static_cast<std::size_t>(i)]) > kVarianceFloor;
    }
    for (int i = 0; i < kValueCount; ++i) {
        for (int j = 0; j < kValueCount; ++j) {
            if (!out.valid[static_cast<std::size_t>(i)] || !out.valid[static_cast<std::size_t>(j)]) {
                out.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0.0;
            } else if (i == j) {
                out.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1.0;
            } else if (j < i) {
                out.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    out.c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            } else {
                out.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    pearson(series[static_cast<std::size_t>(i)], series[static_cast<std::size_t>(j)]);
            }
        }
    }
    return out;
}

const std::array<double, 2>* Embedding2D::point_of(ValueId v) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == v) return &points[i];
    }
    return nullptr;
}

namespace {

using Matrix = std::vector<std::vector<double>>;
using Points = std::vector<std::array<double, 2>>;

double point_distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

// Jacobi eigendecomposition for small symmetric matrices. Eigenvalues land on
// the diagonal; columns of V are the eigenvectors.
void jacobi_eigen(Matrix a, std::vector<double>& eigenvalues, Matrix& eigenvectors) {
    const std::size_t n = a.size();
    eigenvectors.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) eigenvectors[i][i] = 1.0;

    for (int sweep = 0; sweep < 128; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        }
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-30) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = eigenvectors[k][p], vkq = eigenvectors[k][q];
                    eigenvectors[k][p] = c * vkp - s * vkq;
                    eigenvectors[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a[i][i];
}

// Torgerson initialization: double-center the squared dissimilarities and
// project on the two leading eigenvectors.
Points classical_scaling(const Matrix& delta) {
    const std::size_t n = delta.size();
    Matrix b(n, std::vector<double>(n, 0.0));
    std::vector<double> row_mean(n, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d2 = delta[i][j] * delta[i][j];
            b[i][j] = d2;
            row_mean[i] += d2;
            grand += d2;
        }
        row_mean[i] /= static_cast<double>(n);
    }
    grand /= static_cast<double>(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            b[i][j] = -0.5 * (b[i][j] - row_mean[i] - row_mean[j] + grand);
        }
    }

    std::vector<double> eigenvalues;
    Matrix eigenvectors;
    jacobi_eigen(b, eigenvalues, eigenvectors);

    std::array<std::size_t, 2> top{0, 0};
    double best1 = -std::numeric_limits<double>::infinity();
    double best2 = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (eigenvalues[i] > best1) {
            best2 = best1;
            top[1] = top[0];
            best1 = eigenvalues[i];
            top[0] = i;
        } else if (eigenvalues[i] > best2) {
            best2 = eigenvalues[i];
            top[1] = i;
        }
    }

    Points x(n, {0.0, 0.0});
    for (std::size_t dim = 0; dim < 2; ++dim) {
        const double lambda = dim == 0 ? best1 : best2;
        if (lambda <= 0.0) continue;
        const double scale = std::sqrt(lambda);
        for (std::size_t i = 0; i < n; ++i) x[i][dim] = scale * eigenvectors[i][top[dim]];
    }
    return x;
}

double raw_stress(const Matrix& delta, const Points& x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const double d = point_distance(x[i], x[j]);
            acc += (delta[i][j] - d) * (delta[i][j] - d);
        }
    }
    return acc;
}

double stress1_of(const Matrix& delta, const Points& x) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const double d = point_distance(x[i], x[j]);
            num += (delta[i][j] - d) * (delta[i][j] - d);
            den += d * d;
        }
    }
    if (den <= 0.0) return num <= 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

// One Guttman transform: X <- (1/n) B(X) X with unit weights.
Points guttman_update(const Matrix& delta, const Points& x) {
    const std::size_t n = x.size();
    Points out(n, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        double diag = 0.0;
        double sx = 0.0, sy = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double d = point_distance(x[i], x[j]);
            const double bij = d > 1e-15 ? -delta[i][j] / d : 0.0;
            sx += bij * x[j][0];
            sy += bij * x[j][1];
            diag -= bij;
        }
        out[i][0] = (diag * x[i][0] + sx) / static_cast<double>(n);
        out[i][1] = (diag * x[i][1] + sy) / static_cast<double>(n);
    }
    return out;
}

struct SmacofRun {
    Points points;
    double stress1 = std::numeric_limits<double>::infinity();
};

SmacofRun smacof(const Matrix& delta, Points x, int max_iterations, double tolerance,
                 std::vector<double>* trace) {
    double prev = raw_stress(delta, x);
    if (trace) trace->push_back(prev);
    for (int it = 0; it < max_iterations; ++it) {
        x = guttman_update(delta, x);
        const double cur = raw_stress(delta, x);
        if (trace) trace->push_back(cur);
        if (prev - cur < tolerance) {
            prev = cur;
            break;
        }
        prev = cur;
    }
    return SmacofRun{std::move(x), 0.0};
}

}  // namespace

Embedding2D mds_embed(const CorrelationMatrix& correlations, const MdsOptions& options) {
    std::vector<ValueId> labels;
    for (ValueId v : all_values()) {
        if (correlations.valid[static_cast<std::size_t>(circle_position(v))]) labels.push_back(v);
    }
    const std::size_t n = labels.size();
    if (n < 3) {
        throw DegenerateDissimilarity("valid submatrix is " + std::to_string(n) + "x" +
                                      std::to_string(n) + ", need >= 3");
    }

    Matrix delta(n, std::vector<double>(n, 0.0));
    bool all_zero = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double r = correlations.c[static_cast<std::size_t>(circle_position(labels[i]))]
                                           [static_cast<std::size_t>(circle_position(labels[j]))];
            double d = options.transform == DissimilarityTransform::chord
                           ? std::sqrt(std::max(0.0, 2.0 * (1.0 - r)))
                           : 1.0 - r;
            if (i == j) d = 0.0;
            delta[i][j] = d;
            if (d != 0.0) all_zero = false;
        }
    }

    Embedding2D out;
    out.labels = labels;
    if (all_zero) {
        out.points.assign(n, {0.0, 0.0});
        out.stress1 = 0.0;
        return out;
    }

    SmacofRun best;
    int best_restart = -1;
    const int restarts = std::max(1, options.restarts);
    for (int restart = 0; restart < restarts; ++restart) {
        Points start;
        if (restart == 0) {
            start = classical_scaling(delta);
        } else {
            Rng rng = Rng::child(options.seed, 0x6d647300ULL + static_cast<std::uint64_t>(restart));
            start.resize(n);
            for (auto& p : start) p = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        }
        std::vector<double>* trace = nullptr;
        if (options.stress_traces) {
            options.stress_traces->emplace_back();
            trace = &options.stress_traces->back();
        }
        SmacofRun run = smacof(delta, std::move(start), options.max_iterations, options.tolerance, trace);
        run.stress1 = stress1_of(delta, run.points);
        if (run.stress1 < best.stress1) {
            best = std::move(run);
            best_restart = restart;
        }
    }
    (void)best_restart;

    out.points = std::move(best.points);
    out.stress1 = best.stress1;
    return out;
}

Embedding2D ideal_circumplex_reference(const MdsOptions& options) {
    CorrelationMatrix c;
    c.valid.fill(true);
    for (int i = 0; i < kValueCount; ++i) {
        for (int j = 0; j < kValueCount; ++j) {
            c.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::cos(circle_angle(value_at_position(i)) - circle_angle(value_at_position(j)));
        }
    }
    return mds_embed(c, options);
}

ProcrustesResult procrustes_align(const std::vector<std::array<double, 2>>& source,
                                  const std::vector<std::array<double, 2>>& target,
                                  bool prescale) {
    if (source.size() != target.size() || source.size() < 2) {
        throw DegenerateConfiguration("configurations must share a row count >= 2");
    }
    const std::size_t n = source.size();

    auto centroid = [n](const Points& pts) {
        std::array<double, 2> c{0.0, 0.0};
        for (const auto& p : pts) {
            c[0] += p[0];
            c[1] += p[1];
        }
        c[0] /= static_cast<double>(n);
        c[1] /= static_cast<double>(n);
        return c;
    };
    auto rms_radius = [n](const Points& pts) {
        double acc = 0.0;
        for (const auto& p : pts) acc += p[0] * p[0] + p[1] * p[1];
        return std::sqrt(acc / static_cast<double>(n));
    };

    ProcrustesResult result;
    result.source_centroid = centroid(source);
    result.target_centroid = centroid(target);

    Points s(n), t(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = {source[i][0] - result.source_centroid[0], source[i][1] - result.source_centroid[1]};
        t[i] = {target[i][0] - result.target_centroid[0], target[i][1] - result.target_centroid[1]};
    }

    result.source_scale = rms_radius(s);
    result.target_scale = rms_radius(t);
    if (result.source_scale <= 0.0 || result.target_scale <= 0.0) {
        throw DegenerateConfiguration("configuration has zero RMS radius");
    }
    if (prescale) {
        for (auto& p : s) {
            p[0] /= result.source_scale;
            p[1] /= result.source_scale;
        }
        for (auto& p : t) {
            p[0] /= result.target_scale;
            p[1] /= result.target_scale;
        }
    }

    // Best pure rotation has angle atan2(sum cross, sum dot). The reflected
    // candidate flips the source's y first; the lower SSD wins.
    auto best_rotation = [&](bool reflect) {
        double dot = 0.0, cross = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sx = s[i][0];
            const double sy = reflect ? -s[i][1] : s[i][1];
            dot += sx * t[i][0] + sy * t[i][1];
            cross += sx * t[i][1] - sy * t[i][0];
        }
        const double angle = std::atan2(cross, dot);
        const double c = std::cos(angle), sn = std::sin(angle);
        // Row-vector convention: aligned = p * R, with optional reflection first.
        std::array<std::array<double, 2>, 2> rot{{{c, sn}, {-sn, c}}};
        if (reflect) {
            rot = {{{c, sn}, {sn, -c}}};
        }
        double ssd = 0.0;
        Points aligned(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = s[i][0] * rot[0][0] + s[i][1] * rot[1][0];
            const double y = s[i][0] * rot[0][1] + s[i][1] * rot[1][1];
            aligned[i] = {x, y};
            ssd += (x - t[i][0]) * (x - t[i][0]) + (y - t[i][1]) * (y - t[i][1]);
        }
        return std::tuple<double, Points, std::array<std::array<double, 2>, 2>>{ssd, std::move(aligned), rot};
    };

    auto [ssd_rot, aligned_rot, rot] = best_rotation(false);
    auto [ssd_ref, aligned_ref, ref] = best_rotation(true);

    if (ssd_ref < ssd_rot) {
        result.ssd = ssd_ref;
        result.aligned = std::move(aligned_ref);
        result.rotation = ref;
    } else {
        result.ssd = ssd_rot;
        result.aligned = std::move(aligned_rot);
        result.rotation = rot;
    }
    result.target = std::move(t);
    return result;
}

AnchoredCurve anchored_curve(const ResponseMatrix& matrix) {
    AnchoredCurve curve;
    std::array<double, kValueCount> sums{};
    long anchored_sessions = 0;

    for (int k = 0; k < matrix.sessions(); ++k) {
        const SessionInfo& info = matrix.session(k);
        if (!info.anchor_value) continue;
        ++anchored_sessions;
        const Profile p = center_session(matrix, k);
        for (ValueId v : all_values()) {
            const int offset = circle_offset(*info.anchor_value, v);
            sums[static_cast<std::size_t>(offset)] += p[static_cast<std::size_t>(circle_position(v))];
            curve.counts[static_cast<std::size_t>(offset)] += 1;
        }
    }
    if (anchored_sessions == 0) throw NoAnchoredSessions();

    for (std::size_t o = 0; o < kValueCount; ++o) {
        curve.mean[o] = curve.counts[o] > 0 ? sums[o] / static_cast<double>(curve.counts[o]) : 0.0;
    }
    return curve;
}

SineFit fit_sine(std::span<const double> curve) {
    const std::size_t n = curve.size();
    if (n < 3) throw DegenerateInput("sine fit needs >= 3 points");

    // cos/sin at the fundamental period are orthogonal on the regular grid, so
    // the normal equations collapse to projections.
    double b0 = 0.0, b_cos = 0.0, b_sin = 0.0;
    for (std::size_t o = 0; o < n; ++o) {
        const double w = 2.0 * M_PI * static_cast<double>(o) / static_cast<double>(n);
        b0 += curve[o];
        b_cos += curve[o] * std::cos(w);
        b_sin += curve[o] * std::sin(w);
    }
    b0 /= static_cast<double>(n);
    b_cos *= 2.0 / static_cast<double>(n);
    b_sin *= 2.0 / static_cast<double>(n);

    SineFit fit;
    fit.offset = b0;
    fit.amplitude = std::hypot(b_cos, b_sin);
    fit.phase = fit.amplitude > 0.0 ? std::atan2(b_sin, b_cos) : 0.0;

    double sse = 0.0, sst = 0.0;
    for (std::size_t o = 0; o < n; ++o) {
        const double w = 2.0 * M_PI * static_cast<double>(o) / static_cast<double>(n);
        const double fitted = b0 + fit.amplitude * std::cos(w - fit.phase);
        sse += (curve[o] - fitted) * (curve[o] - fitted);
        sst += (curve[o] - b0) * (curve[o] - b0);
    }
    fit.r_squared = sst > 0.0 ? 1.0 - sse / sst : 0.0;
    return fit;
}

SineFit fit_sine(const AnchoredCurve& curve) {
    return fit_sine(std::span<const double>(curve.mean.data(), curve.mean.size()));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    Alternative alternative) {
    if (a.size() != b.size()) throw DegenerateInput("paired samples differ in length");

    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    if (diffs.empty()) throw AllZeroDifferences();

    const std::size_t n = diffs.size();
    std::vector<double> abs_diffs(n);
    for (std::size_t i = 0; i < n; ++i) abs_diffs[i] = std::abs(diffs[i]);

    // Ascending average ranks of |d|.
    std::vector<double> neg_abs(n);
    for (std::size_t i = 0; i < n; ++i) neg_abs[i] = -abs_diffs[i];
    const std::vector<double> ranks = average_ranks_descending(neg_abs);

    WilcoxonResult result;
    result.n = static_cast<int>(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (diffs[i] > 0.0) result.w_plus += ranks[i];
    }

    const double nn = static_cast<double>(n);
    const double mu = nn * (nn + 1.0) / 4.0;
    double tie_correction = 0.0;
    {
        std::vector<double> sorted_abs = abs_diffs;
        std::sort(sorted_abs.begin(), sorted_abs.end());
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && sorted_abs[j + 1] == sorted_abs[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            tie_correction += t * t * t - t;
            i = j + 1;
        }
    }
    const double sigma2 = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_correction / 48.0;
    const double sigma = std::sqrt(std::max(0.0, sigma2));

    if (sigma > 0.0) {
        const double shift = result.w_plus - mu;
        const double cc = shift > 0.0 ? -0.5 : (shift < 0.0 ? 0.5 : 0.0);
        result.z = (shift + cc) / sigma;
    }

    if (n <= 20) {
        // Exact enumeration over every sign assignment of the tie-averaged ranks.
        result.exact = true;
        const std::uint64_t total = 1ULL << n;
        std::uint64_t count_le = 0, count_ge = 0;
        const double eps = 1e-9;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            double w = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1ULL << i)) w += ranks[i];
            }
            if (w <= result.w_plus + eps) ++count_le;
            if (w >= result.w_plus - eps) ++count_ge;
        }
        const double p_less = static_cast<double>(count_le) / static_cast<double>(total);
        const double p_greater = static_cast<double>(count_ge) / static_cast<double>(total);
        switch (alternative) {
            case Alternative::less: result.p = p_less; break;
            case Alternative::greater: result.p = p_greater; break;
            case Alternative::two_sided: result.p = std::min(1.0, 2.0 * std::min(p_less, p_greater)); break;
        }
    } else {
        result.exact = false;
        if (sigma <= 0.0) {
            result.p = 1.0;
            return result;
        }
        const double p_less = normal_cdf((result.w_plus - mu + 0.5) / sigma);
        const double p_greater = 1.0 - normal_cdf((result.w_plus - mu - 0.5) / sigma);
        switch (alternative) {
            case Alternative::less: result.p = p_less; break;
            case Alternative::greater: result.p = p_greater; break;
            case Alternative::two_sided: result.p = std::min(1.0, 2.0 * std::min(p_less, p_greater)); break;
        }
    }
    return result;
}

}  // namespace vp
