#pragma once

#include <cstdint>
#include <optional>

#include "manna/core.hpp"

namespace manna {

/// SplitMix64 (Steele, Lea, Flood 2014). Fixed algorithm so that seeded
/// instances reproduce across implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi] as lo + next() mod (hi - lo + 1).
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Independent stream derived from this one.
    SplitMix64 split() { return SplitMix64(next()); }

private:
    std::uint64_t state_;
};

struct ItemMix {
    double goods = 1;
    double chores = 0;
    double neutral = 0;
};

struct GenConfig {
    std::size_t agents = 2;
    std::size_t items = 6;
    std::uint64_t seed = 0;
    /// Values are k / value_denominator for integers k with value_lo <= k/den <= value_hi.
    Rational value_lo = Rational(-10);
    Rational value_hi = Rational(10);
    long value_denominator = 1;
    /// Weights likewise on the 1/weight_denominator grid; weight_lo must be > 0.
    Rational weight_lo = Rational(1);
    Rational weight_hi = Rational(5);
    long weight_denominator = 1;
    /// Item kinds drawn per column with these relative probabilities. When
    /// unset every value is drawn independently from the full range.
    std::optional<ItemMix> mix;
};

/// Deterministic per config. Throws InvalidRange on empty or unusable ranges.
Instance generate_instance(const GenConfig& cfg);

}  // namespace manna
