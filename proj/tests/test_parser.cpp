#include <doctest.h>

#include <string>

#include "vp/errors.hpp"
#include "vp/parser.hpp"
#include "vp/rng.hpp"

using namespace vp;

namespace {

ScoreVector random_vector(Rng& rng) {
    ScoreVector v;
    for (auto& s : v.scores) s = static_cast<int>(rng.uniform_int(1, 6));
    return v;
}

}  // namespace

TEST_CASE("canonical numbered format parses in order") {
    ScoreVector expected;
    std::string raw;
    for (int i = 1; i <= 57; ++i) {
        const int score = 1 + (i * 3) % 6;
        expected.scores[static_cast<std::size_t>(i - 1)] = score;
        raw += std::to_string(i) + ". " + std::to_string(score) + "\n";
    }
    CHECK(parse_scores(raw) == expected);
}

TEST_CASE("numbered lines may arrive shuffled") {
    std::string raw;
    for (int i = 57; i >= 1; --i) raw += std::to_string(i) + ". 4\n";
    const ScoreVector v = parse_scores(raw);
    for (int i = 1; i <= 57; ++i) CHECK(v[i] == 4);
}

TEST_CASE("a preamble line without numbering is tolerated") {
    std::string raw = "Here are my answers:\n";
    for (int i = 1; i <= 57; ++i) raw += std::to_string(i) + ". 3\n";
    CHECK(parse_scores(raw)[1] == 3);
}

TEST_CASE("56 parseable lines is a count mismatch") {
    std::string raw;
    for (int i = 1; i <= 56; ++i) raw += std::to_string(i) + ". 4\n";
    try {
        parse_scores(raw);
        FAIL("expected CountMismatch");
    } catch (const CountMismatch& e) {
        CHECK(e.found == 56);
    }
}

TEST_CASE("score 7 on item 12 is out of range") {
    std::string raw;
    for (int i = 1; i <= 57; ++i) raw += std::to_string(i) + (i == 12 ? ". 7\n" : ". 4\n");
    try {
        parse_scores(raw);
        FAIL("expected OutOfRange");
    } catch (const OutOfRange& e) {
        CHECK(e.item_index == 12);
        CHECK(e.score == 7);
    }
}

TEST_CASE("non-numeric payload names the item") {
    std::string raw;
    for (int i = 1; i <= 57; ++i) raw += std::to_string(i) + (i == 3 ? ". maybe\n" : ". 4\n");
    try {
        parse_scores(raw);
        FAIL("expected NonNumeric");
    } catch (const NonNumeric& e) {
        CHECK(e.item_index == 3);
    }
}

TEST_CASE("digit-free completions are refusals") {
    CHECK_THROWS_AS(parse_scores("I cannot answer this questionnaire."), RefusalDetected);
    CHECK_THROWS_AS(parse_scores(""), RefusalDetected);
}

TEST_CASE("bare runs and per-line scores parse") {
    Rng rng(3);
    const ScoreVector v = random_vector(rng);
    CHECK(parse_scores(format_bare(v, " ")) == v);
    CHECK(parse_scores(format_bare(v, ", ")) == v);
    CHECK(parse_scores(format_bare(v, ",")) == v);
    CHECK(parse_scores(format_lines(v)) == v);
    CHECK(parse_scores(format_numbered(v, ')')) == v);
    CHECK(parse_scores(format_numbered(v, ':')) == v);
}

TEST_CASE("strict mode accepts only numbered dot format") {
    Rng rng(4);
    const ScoreVector v = random_vector(rng);
    CHECK(parse_scores(format_numbered(v, '.'), 57, true) == v);
    CHECK_THROWS_AS(parse_scores(format_bare(v, " "), 57, true), CountMismatch);
    CHECK_THROWS_AS(parse_scores(format_numbered(v, ')'), 57, true), CountMismatch);
}

TEST_CASE("duplicate numbered answers are ambiguous") {
    std::string raw;
    for (int i = 1; i <= 57; ++i) raw += std::to_string(i) + ". 4\n";
    raw += "12. 5\n";
    CHECK_THROWS_AS(parse_scores(raw), AmbiguousScore);
}

TEST_CASE("format round-trip holds over randomized vectors") {
    Rng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const ScoreVector v = random_vector(rng);
        switch (rng.uniform_int(0, 5)) {
            case 0: CHECK(parse_scores(format_numbered(v, '.')) == v); break;
            case 1: CHECK(parse_scores(format_numbered(v, ')')) == v); break;
            case 2: CHECK(parse_scores(format_numbered(v, ':')) == v); break;
            case 3: CHECK(parse_scores(format_bare(v, " ")) == v); break;
            case 4: CHECK(parse_scores(format_bare(v, ", ")) == v); break;
            case 5: CHECK(parse_scores(format_lines(v)) == v); break;
        }
    }
}

TEST_CASE("hostile inputs fail with taxonomy errors, never escape it") {
    const std::vector<std::string> hostile = {
        "999999999999999999999999999. 4",
        "3. 99999999999999999999999999",
        "99999999999999999999999999",
        std::string(2000, '9'),
        "1. 4\x01\x02\n2. 5",
        "-5 -5 -5",
        "+3",
    };
    for (const auto& raw : hostile) {
        CAPTURE(raw.substr(0, 40));
        CHECK_THROWS_AS(parse_scores(raw), ParseError);
        // Single-score parsing may tolerate these; it must not crash.
        try {
            parse_single_score(raw, 1);
        } catch (const ParseError&) {
        }
    }

    // Random byte soup: any failure must stay inside the error taxonomy.
    Rng rng(0xF22);
    for (int trial = 0; trial < 500; ++trial) {
        std::string raw;
        const int len = static_cast<int>(rng.uniform_int(0, 120));
        for (int i = 0; i < len; ++i) {
            raw.push_back(static_cast<char>(rng.uniform_int(32, 126)));
        }
        try {
            parse_scores(raw);
        } catch (const ParseError&) {
        }
        try {
            parse_single_score(raw, 1);
        } catch (const ParseError&) {
        }
    }
}

TEST_CASE("single-score parsing for serial turns") {
    CHECK(parse_single_score("5", 3) == 5);
    CHECK(parse_single_score(" 4 ", 3) == 4);
    CHECK(parse_single_score("Score: 6.", 3) == 6);
    CHECK_THROWS_AS(parse_single_score("4 or 5", 3), AmbiguousScore);
    CHECK_THROWS_AS(parse_single_score("no idea", 3), RefusalDetected);
    try {
        parse_single_score("9", 12);
        FAIL("expected OutOfRange");
    } catch (const OutOfRange& e) {
        CHECK(e.item_index == 12);
        CHECK(e.score == 9);
    }
    // Off-scale companions do not confuse a single in-range score.
    CHECK(parse_single_score("On a 0-100 basis I would say 83, so here: 5", 1) == 5);
}
