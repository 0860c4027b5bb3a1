#pragma once

#include <cstdint>

namespace ifskit {

// SplitMix64 (Steele, Lea and Flood, "Fast splittable pseudorandom number
// generators"). The algorithm is pinned here rather than taken from
// <random> so that identical seeds produce identical streams on every
// platform. The output mixer scrambles nearby seeds into unrelated
// streams, which is what makes the seed + trial_index derivation used by
// the Monte-Carlo estimators safe.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    constexpr double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Seed for trial number `trial` of a run keyed by `base`. Wrapping addition
// is deliberate: SplitMix64 decorrelates consecutive seeds by design.
constexpr std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) {
    return base + trial;
}

}  // namespace ifskit
