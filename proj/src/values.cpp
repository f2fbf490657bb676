#include "vp/values.hpp"

#include <cmath>
#include <stdexcept>

namespace vp {

namespace {

struct ValueInfo {
    ValueId id;
    std::string_view code;
    std::string_view name;
};

// Circle order is frozen; adjacency follows the refined-theory continuum
// (SDT next to SDA on one side and UNT across the wraparound).
constexpr std::array<ValueInfo, kValueCount> kValueTable{{
    {ValueId::SDT, "SDT", "Self-Direction Thought"},
    {ValueId::SDA, "SDA", "Self-Direction Action"},
    {ValueId::ST, "ST", "Stimulation"},
    {ValueId::HE, "HE", "Hedonism"},
    {ValueId::AC, "AC", "Achievement"},
    {ValueId::POD, "POD", "Power-Dominance"},
    {ValueId::POR, "POR", "Power-Resources"},
    {ValueId::FAC, "FAC", "Face"},
    {ValueId::SEP, "SEP", "Security-Personal"},
    {ValueId::SES, "SES", "Security-Societal"},
    {ValueId::TR, "TR", "Tradition"},
    {ValueId::COR, "COR", "Conformity-Rules"},
    {ValueId::COI, "COI", "Conformity-Interpersonal"},
    {ValueId::HUM, "HUM", "Humility"},
    {ValueId::BED, "BED", "Benevolence-Dependability"},
    {ValueId::BEC, "BEC", "Benevolence-Caring"},
    {ValueId::UNC, "UNC", "Universalism-Concern"},
    {ValueId::UNN, "UNN", "Universalism-Nature"},
    {ValueId::UNT, "UNT", "Universalism-Tolerance"},
}};

}  // namespace

std::array<ValueId, kValueCount> all_values() {
    std::array<ValueId, kValueCount> out{};
    for (int i = 0; i < kValueCount; ++i) out[i] = kValueTable[i].id;
    return out;
}

std::string_view acronym(ValueId v) { return kValueTable[static_cast<int>(v)].code; }

std::string_view display_name(ValueId v) { return kValueTable[static_cast<int>(v)].name; }

std::optional<ValueId> value_from_acronym(std::string_view code) {
    for (const auto& info : kValueTable) {
        if (info.code == code) return info.id;
    }
    return std::nullopt;
}

int circle_position(ValueId v) { return static_cast<int>(v); }

ValueId value_at_position(int position) {
    if (position < 0 || position >= kValueCount) {
        throw std::out_of_range("circle position " + std::to_string(position));
    }
    return kValueTable[position].id;
}

double circle_angle(ValueId v) {
    return 2.0 * M_PI * static_cast<double>(circle_position(v)) / static_cast<double>(kValueCount);
}

int circle_distance(ValueId a, ValueId b) {
    const int d = std::abs(circle_position(a) - circle_position(b));
    return std::min(d, kValueCount - d);
}

int circle_offset(ValueId from, ValueId to) {
    return ((circle_position(to) - circle_position(from)) % kValueCount + kValueCount) % kValueCount;
}

const BenchmarkEntry& HumanBenchmark::operator[](ValueId v) const {
    for (const auto& e : entries) {
        if (e.value == v) return e;
    }
    throw std::logic_error("benchmark entry missing");
}

std::array<double, kValueCount> HumanBenchmark::means() const {
    std::array<double, kValueCount> out{};
    for (const auto& e : entries) out[circle_position(e.value)] = e.mean_centered;
    return out;
}

std::array<int, kValueCount> HumanBenchmark::ranks() const {
    std::array<int, kValueCount> out{};
    for (const auto& e : entries) out[circle_position(e.value)] = e.rank;
    return out;
}

const HumanBenchmark& human_benchmark_profile() {
    // Published cross-cultural means (centered units) and ranks, 49 samples.
    static const HumanBenchmark benchmark{{{
        {ValueId::BEC, 0.79, 1},
        {ValueId::BED, 0.72, 2},
        {ValueId::SDA, 0.60, 3},
        {ValueId::SDT, 0.58, 4},
        {ValueId::UNC, 0.50, 5},
        {ValueId::UNT, 0.37, 6},
        {ValueId::SES, 0.32, 7},
        {ValueId::SEP, 0.28, 8},
        {ValueId::HE, 0.23, 9},
        {ValueId::AC, 0.08, 10},
        {ValueId::FAC, 0.05, 11},
        {ValueId::UNN, -0.10, 12},
        {ValueId::ST, -0.11, 13},
        {ValueId::COI, -0.16, 14},
        {ValueId::HUM, -0.20, 15},
        {ValueId::COR, -0.26, 16},
        {ValueId::TR, -0.72, 17},
        {ValueId::POR, -1.33, 18},
        {ValueId::POD, -1.40, 19},
    }}};
    return benchmark;
}

}  // namespace vp
