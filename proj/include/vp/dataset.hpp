#pragma once
// Transcript collections -> the V x R x N score tensor plus the exclusion
// report for sessions that failed to parse.

#include <optional>
#include <string>
#include <vector>

#include "vp/gateway.hpp"
#include "vp/parser.hpp"
#include "vp/questionnaire.hpp"
#include "vp/values.hpp"

namespace vp {

struct SessionInfo {
    int session_id = 0;
    StrategyKind kind = StrategyKind::basic;
    std::optional<ValueId> anchor_value;
    GenderVersion gender_version = GenderVersion::male;
    SessionMode mode = SessionMode::batch;
    double temperature = 0.0;
};

class ResponseMatrix {
public:
    static constexpr int kValues = kValueCount;             // V
    static constexpr int kVariants = Questionnaire::kVariantsPerValue;  // R

    ResponseMatrix(std::vector<std::array<std::array<int, kVariants>, kValues>> cells,
                   std::vector<SessionInfo> sessions);

    int sessions() const { return static_cast<int>(meta_.size()); }  // N
    int at(ValueId value, int variant, int session) const;           // variant 1..3, session 0-based
    const SessionInfo& session(int k) const { return meta_[static_cast<std::size_t>(k)]; }
    const std::vector<SessionInfo>& session_meta() const { return meta_; }

private:
    std::vector<std::array<std::array<int, kVariants>, kValues>> cells_;  // [k][value pos][variant-1]
    std::vector<SessionInfo> meta_;
};

struct ExclusionRecord {
    int session_id = 0;
    std::string error_kind;
    std::string detail;
};

struct AssembledDataset {
    ResponseMatrix matrix;
    std::vector<ExclusionRecord> exclusions;
};

// Re-parses each transcript's raw exchanges, routes item scores through the
// questionnaire's value/variant mapping, and excludes whole sessions on any
// parse failure. Sessions are ordered by session_id. Throws EmptyDataset when
// nothing parses.
AssembledDataset assemble_dataset(const std::vector<SessionTranscript>& transcripts,
                                  const Questionnaire& questionnaire, bool strict = false);

// One row per session: metadata columns then q1..q57.
std::string dataset_to_csv(const ResponseMatrix& matrix, const Questionnaire& questionnaire);

// session_id,error_kind,detail
std::string exclusions_to_csv(const std::vector<ExclusionRecord>& records);

}  // namespace vp
