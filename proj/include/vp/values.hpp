#pragma once
// The 19-value taxonomy: identities, the fixed circular ordering, and the
// embedded human benchmark profile (published cross-cultural means/ranks).

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace vp {

inline constexpr int kValueCount = 19;

// Declared in circle order, so the enumerator index is the circular position.
enum class ValueId : int {
    SDT = 0,  // Self-Direction Thought
    SDA,      // Self-Direction Action
    ST,       // Stimulation
    HE,       // Hedonism
    AC,       // Achievement
    POD,      // Power-Dominance
    POR,      // Power-Resources
    FAC,      // Face
    SEP,      // Security-Personal
    SES,      // Security-Societal
    TR,       // Tradition
    COR,      // Conformity-Rules
    COI,      // Conformity-Interpersonal
    HUM,      // Humility
    BED,      // Benevolence-Dependability
    BEC,      // Benevolence-Caring
    UNC,      // Universalism-Concern
    UNN,      // Universalism-Nature
    UNT,      // Universalism-Tolerance
};

std::array<ValueId, kValueCount> all_values();

std::string_view acronym(ValueId v);
std::string_view display_name(ValueId v);
std::optional<ValueId> value_from_acronym(std::string_view code);

// Circular position 0..18 along the motivational continuum.
int circle_position(ValueId v);
ValueId value_at_position(int position);

// Angle in radians: 2*pi*position/19.
double circle_angle(ValueId v);

// Shortest arc between two values, in steps (0..9).
int circle_distance(ValueId a, ValueId b);

// Position difference (to - from) mod 19, in 0..18. Offset 0 means "same value".
int circle_offset(ValueId from, ValueId to);

struct BenchmarkEntry {
    ValueId value;
    double mean_centered;  // centered score units
    int rank;              // 1 = most important
};

struct HumanBenchmark {
    std::array<BenchmarkEntry, kValueCount> entries;  // indexed by circle position

    const BenchmarkEntry& operator[](ValueId v) const;
    std::array<double, kValueCount> means() const;  // indexed by circle position
    std::array<int, kValueCount> ranks() const;
};

// The published human means and ranks, embedded as constants.
const HumanBenchmark& human_benchmark_profile();

}  // namespace vp
