#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "vp/analysis.hpp"
#include "vp/errors.hpp"

using namespace vp;
using testkit::make_matrix;
using testkit::questionnaire;

namespace {

ScoreVector constant_vector(int score) {
    ScoreVector v;
    v.scores.fill(score);
    return v;
}

std::span<const double> span_of(const Profile& p) { return {p.data(), p.size()}; }

}  // namespace

TEST_CASE("constant responder centers to zero") {
    const Profile p = center_session(constant_vector(4), questionnaire());
    for (double x : p) CHECK(x == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("a single boosted value centers to 6 - 180/57") {
    ScoreVector v = constant_vector(3);
    for (int idx : questionnaire().items_of(ValueId::BEC)) {
        v.scores[static_cast<std::size_t>(idx - 1)] = 6;
    }
    const Profile p = center_session(v, questionnaire());
    const double grand = 180.0 / 57.0;
    CHECK(p[static_cast<std::size_t>(circle_position(ValueId::BEC))] ==
          doctest::Approx(6.0 - grand).epsilon(1e-9));
    for (ValueId other : all_values()) {
        if (other == ValueId::BEC) continue;
        CHECK(p[static_cast<std::size_t>(circle_position(other))] ==
              doctest::Approx(3.0 - grand).epsilon(1e-9));
    }
}

TEST_CASE("value scored (1,2,3) lands at its item mean minus the grand mean") {
    ScoreVector v = constant_vector(4);
    const auto items = questionnaire().items_of(ValueId::HE);
    for (int i = 0; i < 3; ++i) v.scores[static_cast<std::size_t>(items[static_cast<std::size_t>(i)] - 1)] = i + 1;
    const Profile p = center_session(v, questionnaire());
    const double grand = (54.0 * 4.0 + 6.0) / 57.0;
    CHECK(p[static_cast<std::size_t>(circle_position(ValueId::HE))] ==
          doctest::Approx(2.0 - grand).epsilon(1e-9));
}

TEST_CASE("centering identity: weighted profile sums vanish") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        ScoreVector v;
        for (auto& s : v.scores) s = static_cast<int>(rng.uniform_int(1, 6));
        const Profile p = center_session(v, questionnaire());
        double weighted = 0.0;
        for (double x : p) weighted += x * 3.0 / 57.0;
        CHECK(std::abs(weighted) < 1e-9);
    }
}

TEST_CASE("tensor path and score-vector path agree") {
    Rng rng(12);
    ScoreVector v;
    for (auto& s : v.scores) s = static_cast<int>(rng.uniform_int(1, 6));
    const auto m = make_matrix(1, [&](ValueId value, int variant, int) {
        return v[questionnaire().items_of(value)[static_cast<std::size_t>(variant - 1)]];
    });
    const Profile a = center_session(v, questionnaire());
    const Profile b = center_session(m, 0);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("mean profile basics") {
    // Two sessions p and -p built from 4 +/- 2 on one value's items.
    const auto m = make_matrix(2, [&](ValueId value, int, int k) {
        if (value == ValueId::AC) return k == 0 ? 6 : 2;
        return 4;
    });
    const Profile mean = mean_profile(m);
    for (double x : mean) CHECK(x == doctest::Approx(0.0).epsilon(1e-12));

    const auto single = make_matrix(1, [](ValueId value, int, int) {
        return value == ValueId::TR ? 6 : 3;
    });
    const Profile p = mean_profile(single);
    const Profile s = center_session(single, 0);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] == doctest::Approx(s[i]).epsilon(1e-12));
}

TEST_CASE("synthetic theta=0 population peaks at SDT and dips opposite") {
    const SyntheticParams params{1.5, 3.5, 0.0};
    const auto m = make_matrix(10, [&](ValueId v, int, int) {
        return synthetic_respond(v, circle_angle(ValueId::SDT), params, 0.0);
    });
    const Profile mean = mean_profile(m);
    int argmax = 0;
    double min_value = mean[0];
    for (int i = 1; i < kValueCount; ++i) {
        if (mean[static_cast<std::size_t>(i)] > mean[static_cast<std::size_t>(argmax)]) argmax = i;
        min_value = std::min(min_value, mean[static_cast<std::size_t>(i)]);
    }
    CHECK(value_at_position(argmax) == ValueId::SDT);
    // Rounding at sigma 0 ties the far side; SES and TR sit at the minimum.
    CHECK(mean[static_cast<std::size_t>(circle_position(ValueId::SES))] ==
          doctest::Approx(min_value).epsilon(1e-12));
    CHECK(mean[static_cast<std::size_t>(circle_position(ValueId::TR))] ==
          doctest::Approx(min_value).epsilon(1e-12));
}

TEST_CASE("rank profile handles full ties and pair ties") {
    Profile flat{};
    flat.fill(1.25);
    for (double r : rank_profile(flat)) CHECK(r == doctest::Approx(10.0));

    Profile two_top{};
    two_top.fill(0.0);
    two_top[3] = 5.0;
    two_top[7] = 5.0;
    const auto ranks = rank_profile(two_top);
    CHECK(ranks[3] == doctest::Approx(1.5));
    CHECK(ranks[7] == doctest::Approx(1.5));
}

TEST_CASE("rank profile matches the counting oracle on random data") {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        Profile p{};
        for (double& x : p) x = static_cast<double>(rng.uniform_int(-3, 3));  // force ties
        const auto got = rank_profile(p);
        const auto want = oracle::ranks_descending(span_of(p));
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
}

TEST_CASE("rank profile is invariant under positive affine maps") {
    Rng rng(22);
    Profile p{};
    for (double& x : p) x = rng.uniform(-2.0, 2.0);
    Profile q{};
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = 3.5 * p[i] + 0.75;
    const auto rp = rank_profile(p);
    const auto rq = rank_profile(q);
    for (std::size_t i = 0; i < rp.size(); ++i) CHECK(rp[i] == doctest::Approx(rq[i]));
}

TEST_CASE("spearman identities") {
    std::vector<double> x{0.5, 1.5, -2.0, 3.25, 0.0};
    CHECK(spearman_rho(x, x) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> rev(x.rbegin(), x.rend());
    std::vector<double> mono{1, 2, 3, 4, 5};
    std::vector<double> mono_rev(mono.rbegin(), mono.rend());
    CHECK(spearman_rho(mono, mono_rev) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("spearman with a tie matches the brute-force oracle") {
    const std::vector<double> a{1.0, 2.0, 2.0, 4.0, 5.0};
    const std::vector<double> b{2.0, 1.0, 4.0, 3.0, 5.0};
    CHECK(spearman_rho(a, b) == doctest::Approx(oracle::spearman(a, b)).epsilon(1e-12));
}

TEST_CASE("spearman is invariant under strictly increasing transforms") {
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> a(19), b(19), a2(19);
        for (std::size_t i = 0; i < 19; ++i) {
            a[i] = rng.uniform(-3.0, 3.0);
            b[i] = rng.uniform(-3.0, 3.0);
            a2[i] = std::exp(a[i]) * 2.0 + 1.0;
        }
        CHECK(spearman_rho(a, b) == doctest::Approx(spearman_rho(a2, b)).epsilon(1e-12));
    }
}

TEST_CASE("spearman rejects all-tied input") {
    std::vector<double> flat(19, 1.0), other(19);
    for (std::size_t i = 0; i < 19; ++i) other[i] = static_cast<double>(i);
    CHECK_THROWS_AS(spearman_rho(flat, other), DegenerateInput);
}

TEST_CASE("cronbach alpha identities and hand case") {
    const std::vector<double> base{1, 5, 2, 4, 3, 6, 2, 5};
    CHECK(cronbach_alpha({base, base, base}) == doctest::Approx(1.0).epsilon(1e-12));

    // Four sessions answering two items (1,2),(1,3),(2,3),(2,4).
    const std::vector<std::vector<double>> items{{1, 1, 2, 2}, {2, 3, 3, 4}};
    CHECK(cronbach_alpha(items) == doctest::Approx(oracle::cronbach(items)).epsilon(1e-12));

    const std::vector<double> constant(6, 4.0);
    CHECK_THROWS_AS(cronbach_alpha({constant, constant, constant}), ZeroVariance);
}

TEST_CASE("cronbach alpha matches the direct-formula oracle on random data") {
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = static_cast<int>(rng.uniform_int(2, 4));
        const int n = static_cast<int>(rng.uniform_int(3, 12));
        std::vector<std::vector<double>> items(static_cast<std::size_t>(k));
        for (auto& s : items) {
            s.resize(static_cast<std::size_t>(n));
            for (double& x : s) x = static_cast<double>(rng.uniform_int(1, 6));
        }
        try {
            const double got = cronbach_alpha(items);
            CHECK(got == doctest::Approx(oracle::cronbach(items)).epsilon(1e-9));
        } catch (const ZeroVariance&) {
            // Legal for degenerate draws; the oracle would divide by zero here.
        }
    }
}

TEST_CASE("perfectly coupled values correlate at one") {
    Rng rng(51);
    std::vector<int> noise(40);
    for (auto& x : noise) x = static_cast<int>(rng.uniform_int(-1, 1));
    const auto m = make_matrix(40, [&](ValueId v, int, int k) {
        if (v == ValueId::HE || v == ValueId::ST) return 4 + noise[static_cast<std::size_t>(k)];
        return 4;
    });
    const CorrelationMatrix c = correlation_matrix(m);
    const auto he = static_cast<std::size_t>(circle_position(ValueId::HE));
    const auto st = static_cast<std::size_t>(circle_position(ValueId::ST));
    CHECK(c.valid[he]);
    CHECK(c.c[he][st] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("too few sessions is an error") {
    const auto m = make_matrix(2, [](ValueId, int, int k) { return 3 + k; });
    CHECK_THROWS_AS(correlation_matrix(m), TooFewSessions);
}

TEST_CASE("independent responses settle near the centering-induced baseline") {
    // Ipsative centering couples otherwise independent values at -1/18.
    Rng rng(61);
    const auto m = make_matrix(10000, [&](ValueId, int, int) {
        return static_cast<int>(rng.uniform_int(1, 6));
    });
    const CorrelationMatrix c = correlation_matrix(m);
    const double expected = -1.0 / 18.0;
    for (int i = 0; i < kValueCount; ++i) {
        for (int j = i + 1; j < kValueCount; ++j) {
            CHECK(std::abs(c.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] - expected) <
                  0.035);
        }
    }
}

TEST_CASE("zero-variance centered values are masked invalid") {
    // HE and ST trade scores session to session while the grand mean stays
    // fixed, so every other value is constant after centering.
    const auto m = make_matrix(12, [](ValueId v, int, int k) {
        if (v == ValueId::HE) return k % 2 == 0 ? 5 : 3;
        if (v == ValueId::ST) return k % 2 == 0 ? 3 : 5;
        return 4;
    });
    const CorrelationMatrix c = correlation_matrix(m);
    CHECK_FALSE(c.valid[static_cast<std::size_t>(circle_position(ValueId::POD))]);
    CHECK(c.valid[static_cast<std::size_t>(circle_position(ValueId::HE))]);
    CHECK(c.valid[static_cast<std::size_t>(circle_position(ValueId::ST))]);
    CHECK(c.valid_count() == 2);
    const auto he = static_cast<std::size_t>(circle_position(ValueId::HE));
    const auto st = static_cast<std::size_t>(circle_position(ValueId::ST));
    CHECK(c.c[he][st] == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("the reduced valid block feeds a reduced embedding") {
    // Three values rotate scores so the grand mean is constant; the remaining
    // sixteen freeze and drop out of the embedding.
    const auto m = make_matrix(12, [](ValueId v, int, int k) {
        const std::array<int, 3> wheel{3, 4, 5};
        if (v == ValueId::HE) return wheel[static_cast<std::size_t>(k % 3)];
        if (v == ValueId::ST) return wheel[static_cast<std::size_t>((k + 1) % 3)];
        if (v == ValueId::AC) return wheel[static_cast<std::size_t>((k + 2) % 3)];
        return 4;
    });
    const CorrelationMatrix c = correlation_matrix(m);
    CHECK(c.valid_count() == 3);
    const Embedding2D e = mds_embed(c, MdsOptions{.seed = 19});
    CHECK(e.labels.size() == 3);
}

TEST_CASE("circumplex population correlations decay with circle distance") {
    const auto m = testkit::circumplex_population(300, 1.5, 3.5, 0.5, 7);
    const CorrelationMatrix c = correlation_matrix(m);
    std::vector<double> entries, neg_distance;
    for (int i = 0; i < kValueCount; ++i) {
        for (int j = i + 1; j < kValueCount; ++j) {
            entries.push_back(c.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            neg_distance.push_back(
                -static_cast<double>(circle_distance(value_at_position(i), value_at_position(j))));
        }
    }
    CHECK(spearman_rho(entries, neg_distance) > 0.9);
}

TEST_CASE("anchored curve from the cosine oracle") {
    const auto m = testkit::circumplex_population(38, 1.5, 3.5, 0.0, 3);
    const AnchoredCurve curve = anchored_curve(m);

    long total = 0;
    for (long c : curve.counts) total += c;
    CHECK(total == 38L * 19L);

    int argmax = 0;
    double min_value = curve.mean[0];
    for (int o = 1; o < kValueCount; ++o) {
        if (curve.mean[static_cast<std::size_t>(o)] > curve.mean[static_cast<std::size_t>(argmax)]) argmax = o;
        min_value = std::min(min_value, curve.mean[static_cast<std::size_t>(o)]);
    }
    CHECK(argmax == 0);
    // Rounding at sigma 0 flattens the trough; offsets 9 and 10 share the minimum.
    CHECK(curve.mean[9] == doctest::Approx(min_value).epsilon(1e-12));
    CHECK(curve.mean[10] == doctest::Approx(min_value).epsilon(1e-12));

    // sigma=0 curve tracks cos(2*pi*o/19) up to rounding.
    for (int o = 0; o < kValueCount; ++o) {
        const double ideal = 1.5 * std::cos(2.0 * M_PI * o / 19.0);
        CHECK(std::abs(curve.mean[static_cast<std::size_t>(o)] - ideal) <= 0.55);
    }
}

TEST_CASE("constant responders yield the zero curve") {
    const auto m = make_matrix(
        19, [](ValueId, int, int) { return 4; },
        [](int k) { return std::optional<ValueId>(value_at_position(k % kValueCount)); });
    const AnchoredCurve curve = anchored_curve(m);
    for (double y : curve.mean) CHECK(y == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("curve is unchanged when every anchor rotates one step") {
    auto rotated_population = [](int shift) {
        const SyntheticParams params{1.5, 3.5, 0.0};
        return make_matrix(
            38,
            [params, shift](ValueId v, int, int k) {
                const ValueId anchor = value_at_position((k + shift) % kValueCount);
                return synthetic_respond(v, circle_angle(anchor), params, 0.0);
            },
            [shift](int k) {
                return std::optional<ValueId>(value_at_position((k + shift) % kValueCount));
            });
    };
    const AnchoredCurve a = anchored_curve(rotated_population(0));
    const AnchoredCurve b = anchored_curve(rotated_population(1));
    for (int o = 0; o < kValueCount; ++o) {
        CHECK(a.mean[static_cast<std::size_t>(o)] ==
              doctest::Approx(b.mean[static_cast<std::size_t>(o)]).epsilon(1e-9));
    }
}

TEST_CASE("no anchored sessions is an error") {
    const auto m = make_matrix(5, [](ValueId, int, int) { return 4; });
    CHECK_THROWS_AS(anchored_curve(m), NoAnchoredSessions);
}

TEST_CASE("unanchored sessions are left out of the curve") {
    // Half the sessions carry no anchor (e.g. the animal-welfare phrase).
    const auto m = make_matrix(
        20, [](ValueId, int, int) { return 4; },
        [](int k) {
            return k % 2 == 0 ? std::optional<ValueId>(value_at_position(k % kValueCount))
                              : std::nullopt;
        });
    const AnchoredCurve curve = anchored_curve(m);
    long total = 0;
    for (long c : curve.counts) total += c;
    CHECK(total == 10L * 19L);
}

TEST_CASE("sine fit recovers an exact basis curve") {
    std::vector<double> y(19);
    for (int o = 0; o < 19; ++o) y[static_cast<std::size_t>(o)] = 2.0 * std::cos(2.0 * M_PI * o / 19.0);
    const SineFit fit = fit_sine(y);
    CHECK(fit.amplitude == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(fit.phase) < 1e-9);
    CHECK(std::abs(fit.offset) < 1e-9);
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("flat curves have amplitude zero and defined r2") {
    std::vector<double> flat(19, 0.5);
    const SineFit fit = fit_sine(flat);
    CHECK(fit.amplitude == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.offset == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.r_squared == 0.0);
}

TEST_CASE("sine fit under seeded noise stays near the truth") {
    Rng rng(77);
    std::vector<double> y(19);
    for (int o = 0; o < 19; ++o) {
        y[static_cast<std::size_t>(o)] = 1.5 * std::cos(2.0 * M_PI * o / 19.0) + rng.normal(0.0, 0.1);
    }
    const SineFit fit = fit_sine(y);
    CHECK(fit.amplitude > 1.3);
    CHECK(fit.amplitude < 1.7);
    CHECK(fit.r_squared >= 0.9);
}

TEST_CASE("sine fit residuals are orthogonal to the basis") {
    Rng rng(78);
    std::vector<double> y(19);
    for (double& v : y) v = rng.uniform(-2.0, 2.0);
    const SineFit fit = fit_sine(y);
    double dot_cos = 0.0, dot_sin = 0.0, dot_one = 0.0;
    for (int o = 0; o < 19; ++o) {
        const double w = 2.0 * M_PI * o / 19.0;
        const double resid = y[static_cast<std::size_t>(o)] -
                             (fit.offset + fit.amplitude * std::cos(w - fit.phase));
        dot_cos += resid * std::cos(w);
        dot_sin += resid * std::sin(w);
        dot_one += resid;
    }
    CHECK(std::abs(dot_cos) < 1e-9);
    CHECK(std::abs(dot_sin) < 1e-9);
    CHECK(std::abs(dot_one) < 1e-9);
}

TEST_CASE("wilcoxon rejects identical samples") {
    std::vector<double> a{1, 2, 3, 4, 5, 6, 7};
    CHECK_THROWS_AS(wilcoxon_signed_rank(a, a), AllZeroDifferences);
}

TEST_CASE("wilcoxon eight-pair hand case against exhaustive enumeration") {
    const std::vector<double> a{12.1, 9.5, 14.2, 10.0, 8.8, 13.3, 11.1, 9.9};
    const std::vector<double> b{10.0, 9.9, 12.0, 10.4, 8.1, 11.0, 10.0, 9.1};
    const WilcoxonResult got = wilcoxon_signed_rank(a, b);
    const auto want = oracle::wilcoxon_exact(a, b);
    CHECK(got.exact);
    CHECK(got.w_plus == doctest::Approx(want.w_plus).epsilon(1e-12));
    CHECK(got.p == doctest::Approx(want.p_two_sided).epsilon(1e-9));

    const WilcoxonResult less = wilcoxon_signed_rank(a, b, Alternative::less);
    CHECK(less.p == doctest::Approx(want.p_less).epsilon(1e-9));
    const WilcoxonResult greater = wilcoxon_signed_rank(a, b, Alternative::greater);
    CHECK(greater.p == doctest::Approx(want.p_greater).epsilon(1e-9));
}

TEST_CASE("wilcoxon matches the oracle on random small instances") {
    Rng rng(91);
    int tested = 0;
    while (tested < 200) {
        const int n = static_cast<int>(rng.uniform_int(6, 12));
        std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            a[static_cast<std::size_t>(i)] = static_cast<double>(rng.uniform_int(1, 6));
            b[static_cast<std::size_t>(i)] = static_cast<double>(rng.uniform_int(1, 6));
        }
        try {
            const WilcoxonResult got = wilcoxon_signed_rank(a, b);
            const auto want = oracle::wilcoxon_exact(a, b);
            CHECK(got.w_plus == doctest::Approx(want.w_plus).epsilon(1e-12));
            CHECK(std::abs(got.p - want.p_two_sided) <= 1e-6);
            ++tested;
        } catch (const AllZeroDifferences&) {
            // Draw again.
        }
    }
}

TEST_CASE("wilcoxon normal approximation for large n") {
    Rng rng(92);
    std::vector<double> a(40), b(40);
    for (std::size_t i = 0; i < 40; ++i) {
        a[i] = rng.uniform(0.0, 1.0) + 0.15;
        b[i] = rng.uniform(0.0, 1.0);
    }
    const WilcoxonResult r = wilcoxon_signed_rank(a, b);
    CHECK_FALSE(r.exact);
    CHECK(r.z > 0.0);
    CHECK(r.p < 0.5);
    CHECK(r.p > 0.0);
}
