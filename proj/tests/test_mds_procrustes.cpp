#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "vp/analysis.hpp"
#include "vp/errors.hpp"

using namespace vp;

namespace {

CorrelationMatrix ideal_circumplex_matrix() {
    CorrelationMatrix c;
    c.valid.fill(true);
    for (int i = 0; i < kValueCount; ++i) {
        for (int j = 0; j < kValueCount; ++j) {
            c.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::cos(circle_angle(value_at_position(i)) - circle_angle(value_at_position(j)));
        }
    }
    return c;
}

double dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

std::vector<std::array<double, 2>> random_config(Rng& rng, std::size_t n) {
    std::vector<std::array<double, 2>> pts(n);
    for (auto& p : pts) p = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    return pts;
}

std::vector<std::array<double, 2>> transform(const std::vector<std::array<double, 2>>& pts,
                                             double angle, bool reflect, double scale, double tx,
                                             double ty) {
    std::vector<std::array<double, 2>> out;
    out.reserve(pts.size());
    const double c = std::cos(angle), s = std::sin(angle);
    for (const auto& p : pts) {
        double x = p[0];
        double y = reflect ? -p[1] : p[1];
        out.push_back({scale * (x * c - y * s) + tx, scale * (x * s + y * c) + ty});
    }
    return out;
}

}  // namespace

TEST_CASE("three equidistant values embed as an equilateral triangle") {
    CorrelationMatrix c;
    c.valid.fill(false);
    const std::array<ValueId, 3> chosen{ValueId::SDT, ValueId::AC, ValueId::HUM};
    for (ValueId v : chosen) c.valid[static_cast<std::size_t>(circle_position(v))] = true;
    for (ValueId a : chosen) {
        for (ValueId b : chosen) {
            c.c[static_cast<std::size_t>(circle_position(a))][static_cast<std::size_t>(circle_position(b))] =
                a == b ? 1.0 : 0.25;
        }
    }
    const Embedding2D e = mds_embed(c, MdsOptions{.seed = 5});
    REQUIRE(e.labels.size() == 3);
    const double d01 = dist(e.points[0], e.points[1]);
    const double d02 = dist(e.points[0], e.points[2]);
    const double d12 = dist(e.points[1], e.points[2]);
    CHECK(std::abs(d01 - d02) < 1e-6);
    CHECK(std::abs(d01 - d12) < 1e-6);
    CHECK(e.stress1 < 1e-6);
}

TEST_CASE("all-zero dissimilarities collapse to coincident points, not an error") {
    CorrelationMatrix c;
    c.valid.fill(true);
    for (auto& row : c.c) row.fill(1.0);
    const Embedding2D e = mds_embed(c);
    CHECK(e.labels.size() == 19);
    CHECK(e.stress1 == 0.0);
    for (const auto& p : e.points) {
        CHECK(p[0] == 0.0);
        CHECK(p[1] == 0.0);
    }
}

TEST_CASE("a sub-3x3 valid block cannot be embedded") {
    CorrelationMatrix c;
    c.valid.fill(false);
    c.valid[0] = c.valid[1] = true;
    CHECK_THROWS_AS(mds_embed(c), DegenerateDissimilarity);
}

TEST_CASE("ideal circumplex embeds at low stress in circle order") {
    const Embedding2D e = mds_embed(ideal_circumplex_matrix(), MdsOptions{.seed = 1});
    REQUIRE(e.labels.size() == 19);
    CHECK(e.stress1 <= 0.05);
    CHECK(testkit::neighbour_matches(e) >= 17);
    for (const auto& p : e.points) {
        CHECK(std::isfinite(p[0]));
        CHECK(std::isfinite(p[1]));
    }
}

TEST_CASE("mds is deterministic given seed and restarts") {
    const auto c = ideal_circumplex_matrix();
    const Embedding2D a = mds_embed(c, MdsOptions{.seed = 9, .restarts = 4});
    const Embedding2D b = mds_embed(c, MdsOptions{.seed = 9, .restarts = 4});
    REQUIRE(a.points.size() == b.points.size());
    CHECK(a.stress1 == b.stress1);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i][0] == b.points[i][0]);
        CHECK(a.points[i][1] == b.points[i][1]);
    }
}

TEST_CASE("smacof stress is monotonically non-increasing") {
    std::vector<std::vector<double>> traces;
    MdsOptions options;
    options.seed = 3;
    options.restarts = 5;
    options.stress_traces = &traces;
    mds_embed(ideal_circumplex_matrix(), options);
    REQUIRE(traces.size() == 5);
    for (const auto& trace : traces) {
        REQUIRE(trace.size() >= 2);
        for (std::size_t i = 1; i < trace.size(); ++i) {
            CHECK(trace[i] <= trace[i - 1] + 1e-12);
        }
    }
}

TEST_CASE("chord transform embeds the perfect circumplex exactly") {
    const Embedding2D e = mds_embed(ideal_circumplex_matrix(), MdsOptions{.seed = 2});
    CHECK(e.stress1 < 1e-4);
}

TEST_CASE("the 1-r transform still recovers circular order at its higher floor") {
    MdsOptions options;
    options.seed = 2;
    options.transform = DissimilarityTransform::one_minus_r;
    const Embedding2D e = mds_embed(ideal_circumplex_matrix(), options);
    CHECK(testkit::neighbour_matches(e) >= 17);
    // 1-cos dissimilarities are not flat-embeddable; the optimum sits near 0.2.
    CHECK(e.stress1 > 0.15);
    CHECK(e.stress1 < 0.25);
}

TEST_CASE("procrustes on identical configurations is zero") {
    Rng rng(7);
    const auto pts = random_config(rng, 19);
    const ProcrustesResult r = procrustes_align(pts, pts);
    CHECK(r.ssd < 1e-18);
}

TEST_CASE("a rotated translated copy aligns exactly") {
    Rng rng(8);
    const auto target = random_config(rng, 19);
    const auto source = transform(target, 37.0 * M_PI / 180.0, false, 1.0, 0.3, -0.8);
    const ProcrustesResult r = procrustes_align(source, target);
    CHECK(r.ssd < 1e-10);
}

TEST_CASE("reflections are inside the alignment group") {
    Rng rng(9);
    const auto target = random_config(rng, 19);
    const auto source = transform(target, 1.1, true, 1.0, 0.0, 0.0);
    const ProcrustesResult r = procrustes_align(source, target);
    CHECK(r.ssd < 1e-10);
    // Row-vector transform matrix must be orthogonal.
    const auto& m = r.rotation;
    CHECK(std::abs(m[0][0] * m[0][1] + m[1][0] * m[1][1]) < 1e-9);
    CHECK(std::abs(m[0][0] * m[0][0] + m[1][0] * m[1][0] - 1.0) < 1e-9);
}

TEST_CASE("ssd is invariant to pre-applied similarity transforms of the source") {
    Rng rng(10);
    const auto target = random_config(rng, 19);
    const auto source = random_config(rng, 19);
    const double base = procrustes_align(source, target).ssd;
    for (int trial = 0; trial < 20; ++trial) {
        const auto moved = transform(source, rng.uniform(0.0, 2.0 * M_PI), rng.uniform01() < 0.5,
                                     rng.uniform(0.25, 4.0), rng.uniform(-5.0, 5.0),
                                     rng.uniform(-5.0, 5.0));
        CHECK(std::abs(procrustes_align(moved, target).ssd - base) < 1e-9);
    }
}

TEST_CASE("random transforms re-align to numerical zero") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto target = random_config(rng, 19);
        const auto source = transform(target, rng.uniform(0.0, 2.0 * M_PI), rng.uniform01() < 0.5,
                                      rng.uniform(0.5, 2.0), rng.uniform(-3.0, 3.0),
                                      rng.uniform(-3.0, 3.0));
        CHECK(procrustes_align(source, target).ssd < 1e-9);
    }
}

TEST_CASE("coincident configurations are degenerate") {
    std::vector<std::array<double, 2>> flat(19, {1.0, 1.0});
    Rng rng(12);
    const auto target = random_config(rng, 19);
    CHECK_THROWS_AS(procrustes_align(flat, target), DegenerateConfiguration);
}

TEST_CASE("no-prescale mode still aligns same-scale configurations") {
    Rng rng(13);
    const auto target = random_config(rng, 19);
    const auto source = transform(target, 0.6, false, 1.0, 1.0, -2.0);
    const ProcrustesResult r = procrustes_align(source, target, false);
    CHECK(r.ssd < 1e-10);
}

TEST_CASE("the ideal circumplex reference is reproducible and circular") {
    const Embedding2D a = ideal_circumplex_reference();
    const Embedding2D b = ideal_circumplex_reference();
    REQUIRE(a.points.size() == 19);
    CHECK(testkit::neighbour_matches(a) == 19);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i][0] == b.points[i][0]);
        CHECK(a.points[i][1] == b.points[i][1]);
    }
}
