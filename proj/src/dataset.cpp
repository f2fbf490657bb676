#include "vp/dataset.hpp"

#include <algorithm>
#include <sstream>

#include "vp/errors.hpp"

namespace vp {

ResponseMatrix::ResponseMatrix(std::vector<std::array<std::array<int, kVariants>, kValues>> cells,
                               std::vector<SessionInfo> sessions)
    : cells_(std::move(cells)), meta_(std::move(sessions)) {
    if (cells_.size() != meta_.size() || cells_.empty()) {
        throw EmptyDataset("response matrix needs at least one session");
    }
    for (const auto& session : cells_) {
        for (const auto& row : session) {
            for (int score : row) {
                if (score < Questionnaire::kScaleMin || score > Questionnaire::kScaleMax) {
                    throw SchemaViolation("tensor entry " + std::to_string(score) + " outside 1..6");
                }
            }
        }
    }
}

int ResponseMatrix::at(ValueId value, int variant, int session) const {
    return cells_[static_cast<std::size_t>(session)][static_cast<std::size_t>(circle_position(value))]
                 [static_cast<std::size_t>(variant - 1)];
}

namespace {

ScoreVector scores_from_transcript(const SessionTranscript& t, bool strict) {
    if (t.mode == SessionMode::batch) {
        if (t.exchanges.size() != 1) {
            throw ModeMismatch("batch transcript has " + std::to_string(t.exchanges.size()) +
                               " exchanges");
        }
        return parse_scores(t.exchanges[0].completion, Questionnaire::kItemCount, strict);
    }
    if (t.exchanges.size() != Questionnaire::kItemCount) {
        throw ModeMismatch("serial transcript has " + std::to_string(t.exchanges.size()) +
                           " exchanges");
    }
    ScoreVector v;
    for (int idx = 1; idx <= Questionnaire::kItemCount; ++idx) {
        v.scores[static_cast<std::size_t>(idx - 1)] =
            parse_single_score(t.exchanges[static_cast<std::size_t>(idx - 1)].completion, idx);
    }
    return v;
}

SessionInfo info_from_transcript(const SessionTranscript& t) {
    SessionInfo info;
    info.session_id = t.session_id;
    info.gender_version = t.gender_version;
    info.mode = t.mode;
    info.temperature = t.temperature;
    const PromptStrategy strategy = strategy_from_descriptor(t.strategy_descriptor);
    info.kind = kind_of(strategy);
    if (const auto* anchored = std::get_if<ValueAnchorStrategy>(&strategy)) {
        info.anchor_value = anchored->anchor.value;
    }
    return info;
}

}  // namespace

AssembledDataset assemble_dataset(const std::vector<SessionTranscript>& transcripts,
                                  const Questionnaire& questionnaire, bool strict) {
    std::vector<const SessionTranscript*> ordered;
    ordered.reserve(transcripts.size());
    for (const auto& t : transcripts) ordered.push_back(&t);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const SessionTranscript* a, const SessionTranscript* b) {
                         return a->session_id < b->session_id;
                     });

    std::vector<std::array<std::array<int, ResponseMatrix::kVariants>, ResponseMatrix::kValues>> cells;
    std::vector<SessionInfo> meta;
    std::vector<ExclusionRecord> exclusions;

    for (const SessionTranscript* t : ordered) {
        try {
            const ScoreVector v = scores_from_transcript(*t, strict);
            std::array<std::array<int, ResponseMatrix::kVariants>, ResponseMatrix::kValues> cell{};
            for (const auto& item : questionnaire.items()) {
                cell[static_cast<std::size_t>(circle_position(item.value))]
                    [static_cast<std::size_t>(item.variant - 1)] = v[item.index];
            }
            cells.push_back(cell);
            meta.push_back(info_from_transcript(*t));
        } catch (const Error& e) {
            exclusions.push_back({t->session_id, e.kind(), e.what()});
        }
    }

    if (cells.empty()) {
        throw EmptyDataset("all " + std::to_string(transcripts.size()) + " sessions failed to parse");
    }
    return AssembledDataset{ResponseMatrix(std::move(cells), std::move(meta)), std::move(exclusions)};
}

std::string dataset_to_csv(const ResponseMatrix& matrix, const Questionnaire& questionnaire) {
    std::ostringstream out;
    out << "session_id,strategy,anchor,gender,mode,temperature";
    for (int i = 1; i <= Questionnaire::kItemCount; ++i) out << ",q" << i;
    out << "\n";
    for (int k = 0; k < matrix.sessions(); ++k) {
        const SessionInfo& info = matrix.session(k);
        out << info.session_id << ',' << to_string(info.kind) << ','
            << (info.anchor_value ? std::string(acronym(*info.anchor_value)) : std::string()) << ','
            << to_string(info.gender_version) << ',' << to_string(info.mode) << ','
            << info.temperature;
        for (const auto& item : questionnaire.items()) {
            out << ',' << matrix.at(item.value, item.variant, k);
        }
        out << "\n";
    }
    return out.str();
}

std::string exclusions_to_csv(const std::vector<ExclusionRecord>& records) {
    std::ostringstream out;
    out << "session_id,error_kind,detail\n";
    for (const auto& r : records) {
        std::string detail = r.detail;
        std::replace(detail.begin(), detail.end(), ',', ';');
        std::replace(detail.begin(), detail.end(), '\n', ' ');
        out << r.session_id << ',' << r.error_kind << ',' << detail << "\n";
    }
    return out.str();
}

}  // namespace vp
