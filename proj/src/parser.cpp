#include "vp/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "vp/errors.hpp"

namespace vp {

namespace {

bool is_integer_token(const std::string& tok) {
    if (tok.empty()) return false;
    std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size()) return false;
    for (; i < tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
    }
    return true;
}

// stoll without exceptions; absurdly long digit runs read as "no value".
std::optional<long long> checked_int(const std::string& tok) {
    if (!is_integer_token(tok)) return std::nullopt;
    const std::size_t digits = tok.size() - ((tok[0] == '-' || tok[0] == '+') ? 1 : 0);
    if (digits > 18) return std::nullopt;
    return std::stoll(tok);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_lines(const std::string& raw) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(raw);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

struct NumberedLine {
    int index;
    std::string payload;
};

// Matches "<idx><sep> <payload>" where sep is '.', ')' or ':' (just '.' when
// strict). Returns nothing when the line is not a numbered answer at all.
std::optional<NumberedLine> match_numbered(const std::string& line, bool strict) {
    const std::string t = trim(line);
    std::size_t i = 0;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (i == 0 || i >= t.size()) return std::nullopt;
    const char sep = t[i];
    if (strict ? sep != '.' : (sep != '.' && sep != ')' && sep != ':')) return std::nullopt;
    const auto index = checked_int(t.substr(0, i));
    if (!index || *index < 1 || *index > 1000000) return std::nullopt;
    NumberedLine out;
    out.index = static_cast<int>(*index);
    out.payload = trim(t.substr(i + 1));
    return out;
}

int score_in_range(int item_index, long long value) {
    if (value < Questionnaire::kScaleMin || value > Questionnaire::kScaleMax) {
        throw OutOfRange(item_index, value);
    }
    return static_cast<int>(value);
}

std::vector<std::string> tokenize(const std::string& raw) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

bool contains_digit(const std::string& s) {
    for (char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c))) return true;
    }
    return false;
}

}  // namespace

ScoreVector parse_scores(const std::string& raw, int expected_count, bool strict) {
    if (!contains_digit(raw)) throw RefusalDetected();

    const auto lines = split_lines(raw);

    std::map<int, int> numbered;
    bool any_numbered = false;
    for (const auto& line : lines) {
        const auto m = match_numbered(line, strict);
        if (!m) continue;
        any_numbered = true;
        const auto score = checked_int(m->payload);
        if (!score) throw NonNumeric(m->index);
        if (numbered.count(m->index)) {
            throw AmbiguousScore("item " + std::to_string(m->index) + " answered more than once");
        }
        numbered[m->index] = score_in_range(m->index, *score);
    }

    ScoreVector out;
    if (any_numbered || strict) {
        if (static_cast<int>(numbered.size()) != expected_count) throw CountMismatch(numbered.size());
        for (int idx = 1; idx <= expected_count; ++idx) {
            auto it = numbered.find(idx);
            if (it == numbered.end()) throw CountMismatch(numbered.size());
            out.scores[static_cast<std::size_t>(idx - 1)] = it->second;
        }
        return out;
    }

    // Unnumbered fallback: the payload must be a plain run of integers.
    const auto tokens = tokenize(raw);
    int position = 0;
    for (const auto& tok : tokens) {
        ++position;
        const int item = std::min(position, expected_count);
        const auto score = checked_int(tok);
        if (!score) throw NonNumeric(item);
        if (position <= expected_count) {
            out.scores[static_cast<std::size_t>(position - 1)] = score_in_range(item, *score);
        }
    }
    if (static_cast<int>(tokens.size()) != expected_count) throw CountMismatch(tokens.size());
    return out;
}

int parse_single_score(const std::string& raw, int item_index) {
    if (!contains_digit(raw)) throw RefusalDetected();

    std::vector<long long> integers;
    const auto tokens = tokenize(raw);
    for (const auto& tok : tokens) {
        // Strip common punctuation stuck to the number ("5.", "(4)").
        std::string bare;
        for (char c : tok) {
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') bare.push_back(c);
        }
        if (const auto value = checked_int(bare)) integers.push_back(*value);
    }
    if (integers.empty()) throw NonNumeric(item_index);
    if (integers.size() == 1) return score_in_range(item_index, integers[0]);

    std::vector<long long> in_range;
    for (long long v : integers) {
        if (v >= Questionnaire::kScaleMin && v <= Questionnaire::kScaleMax) in_range.push_back(v);
    }
    if (in_range.size() == 1) return static_cast<int>(in_range[0]);
    if (in_range.empty()) throw OutOfRange(item_index, integers[0]);
    throw AmbiguousScore("item " + std::to_string(item_index) + ": " +
                         std::to_string(in_range.size()) + " candidate scores");
}

std::string format_numbered(const ScoreVector& v, char separator) {
    std::string out;
    for (int i = 1; i <= Questionnaire::kItemCount; ++i) {
        out += std::to_string(i);
        out += separator;
        out += ' ';
        out += std::to_string(v[i]);
        out += '\n';
    }
    return out;
}

std::string format_bare(const ScoreVector& v, const std::string& delimiter) {
    std::string out;
    for (int i = 1; i <= Questionnaire::kItemCount; ++i) {
        if (i > 1) out += delimiter;
        out += std::to_string(v[i]);
    }
    return out;
}

std::string format_lines(const ScoreVector& v) {
    std::string out;
    for (int i = 1; i <= Questionnaire::kItemCount; ++i) {
        out += std::to_string(v[i]);
        out += '\n';
    }
    return out;
}

}  // namespace vp
