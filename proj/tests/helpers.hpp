#pragma once
// Shared fixtures: bundled data paths and synthetic dataset builders.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vp/analysis.hpp"
#include "vp/dataset.hpp"
#include "vp/gateway.hpp"
#include "vp/questionnaire.hpp"
#include "vp/rng.hpp"
#include "vp/values.hpp"

namespace testkit {

inline std::string data_path(const std::string& name) {
    return std::string(VP_DATA_DIR) + "/" + name;
}

inline const vp::Questionnaire& questionnaire() {
    static const vp::Questionnaire q = vp::load_questionnaire(data_path("pvq_rr_synthetic.json"));
    return q;
}

// Builds a ResponseMatrix directly from a per-cell score function.
inline vp::ResponseMatrix make_matrix(
    int sessions, const std::function<int(vp::ValueId, int variant, int session)>& score,
    const std::function<std::optional<vp::ValueId>(int session)>& anchor = {}) {
    std::vector<std::array<std::array<int, 3>, vp::kValueCount>> cells;
    std::vector<vp::SessionInfo> meta;
    for (int k = 0; k < sessions; ++k) {
        std::array<std::array<int, 3>, vp::kValueCount> cell{};
        for (vp::ValueId v : vp::all_values()) {
            for (int variant = 1; variant <= 3; ++variant) {
                cell[static_cast<std::size_t>(vp::circle_position(v))]
                    [static_cast<std::size_t>(variant - 1)] = score(v, variant, k);
            }
        }
        cells.push_back(cell);
        vp::SessionInfo info;
        info.session_id = k;
        if (anchor) {
            info.anchor_value = anchor(k);
            if (info.anchor_value) info.kind = vp::StrategyKind::value_anchor;
        }
        meta.push_back(info);
    }
    return vp::ResponseMatrix(std::move(cells), std::move(meta));
}

// Cosine personas anchored round-robin, the oracle population used across the
// structural tests.
inline vp::ResponseMatrix circumplex_population(int sessions, double amplitude, double baseline,
                                                double noise_sigma, std::uint64_t seed) {
    std::vector<vp::Rng> streams;
    streams.reserve(static_cast<std::size_t>(sessions));
    for (int k = 0; k < sessions; ++k) {
        streams.push_back(vp::Rng::child(seed, static_cast<std::uint64_t>(k)));
    }
    const vp::SyntheticParams params{amplitude, baseline, noise_sigma};
    return make_matrix(
        sessions,
        [&](vp::ValueId v, int, int k) {
            const vp::ValueId anchor = vp::value_at_position(k % vp::kValueCount);
            const double noise = noise_sigma > 0.0 ? streams[static_cast<std::size_t>(k)].normal(0.0, noise_sigma) : 0.0;
            return vp::synthetic_respond(v, vp::circle_angle(anchor), params, noise);
        },
        [](int k) { return vp::value_at_position(k % vp::kValueCount); });
}

// Counts embedded values whose two angular neighbours (around the centroid)
// are exactly their circle neighbours; 19 means perfect order recovery up to
// rotation/reflection.
inline int neighbour_matches(const vp::Embedding2D& embedding) {
    const std::size_t n = embedding.labels.size();
    if (n < 3) return 0;
    double cx = 0.0, cy = 0.0;
    for (const auto& p : embedding.points) {
        cx += p[0];
        cy += p[1];
    }
    cx /= static_cast<double>(n);
    cy /= static_cast<double>(n);

    std::vector<std::pair<double, vp::ValueId>> by_angle;
    for (std::size_t i = 0; i < n; ++i) {
        by_angle.emplace_back(std::atan2(embedding.points[i][1] - cy, embedding.points[i][0] - cx),
                              embedding.labels[i]);
    }
    std::sort(by_angle.begin(), by_angle.end());

    int matches = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const vp::ValueId v = by_angle[i].second;
        const vp::ValueId prev = by_angle[(i + n - 1) % n].second;
        const vp::ValueId next = by_angle[(i + 1) % n].second;
        const int pos = vp::circle_position(v);
        const vp::ValueId circle_prev = vp::value_at_position((pos + vp::kValueCount - 1) % vp::kValueCount);
        const vp::ValueId circle_next = vp::value_at_position((pos + 1) % vp::kValueCount);
        const bool direct = prev == circle_prev && next == circle_next;
        const bool mirrored = prev == circle_next && next == circle_prev;
        if (direct || mirrored) ++matches;
    }
    return matches;
}

}  // namespace testkit
