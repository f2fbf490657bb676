#pragma once
// Seeded random streams with hand-rolled distributions. std::mt19937_64 output
// is pinned by the standard, but the std distributions are not, so every draw
// goes through the helpers below to keep runs bit-reproducible across
// platforms and library versions.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace vp {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent child stream; key separates streams drawn from one seed.
    static Rng child(std::uint64_t seed, std::uint64_t key) {
        std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL + key * 0x9e3779b97f4a7c15ULL);
        return Rng(splitmix64(s));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased integer in [lo, hi] via rejection sampling.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t draw;
        do {
            draw = next_u64();
        } while (draw >= limit);
        return lo + static_cast<std::int64_t>(draw % span);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller without the cached spare, so stream position is a pure
    // function of the number of calls.
    double normal(double mean, double sigma) {
        double u1;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sigma * r * std::cos(2.0 * M_PI * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace vp
