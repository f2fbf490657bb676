#pragma once
// Raw completion text -> validated 57-score vectors.

#include <array>
#include <string>

#include "vp/questionnaire.hpp"

namespace vp {

struct ScoreVector {
    std::array<int, Questionnaire::kItemCount> scores{};  // item order, each 1..6

    int operator[](int item_index) const { return scores[static_cast<std::size_t>(item_index - 1)]; }
    bool operator==(const ScoreVector&) const = default;
};

// Accepted formats: "n. s" / "n) s" / "n: s" numbered lines, a bare run of 57
// integers separated by whitespace or commas, and one unnumbered score per
// line. strict limits acceptance to the numbered "n. s" form.
ScoreVector parse_scores(const std::string& raw, int expected_count = Questionnaire::kItemCount,
                         bool strict = false);

// Serial-mode completions carry one score. A single integer wins; with several
// integers, exactly one in 1..6 wins; anything else is an error.
int parse_single_score(const std::string& raw, int item_index);

// Canonical renderings used by the synthetic provider and round-trip tests.
std::string format_numbered(const ScoreVector& v, char separator = '.');
std::string format_bare(const ScoreVector& v, const std::string& delimiter = " ");
std::string format_lines(const ScoreVector& v);

}  // namespace vp
