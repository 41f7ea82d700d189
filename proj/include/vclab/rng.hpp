#pragma once

#include <cstdint>

namespace vclab {

// SplitMix64 (Steele, Lea, Flood 2014; public-domain reference sequence).
// All randomness in the library flows through this generator so that runs
// are reproducible across platforms and so alternate implementations can
// replay the exact streams. See README for the substream derivation.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw from [0, bound), bound >= 1, by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Per-trial substream: state0 = mix(mix(seed) ^ (mix(trial) + GOLDEN)).
// Full avalanche on both inputs keeps neighbouring trials uncorrelated.
inline SplitMix64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t s = SplitMix64::mix(SplitMix64::mix(seed) ^
                                      (SplitMix64::mix(trial) + 0x9E3779B97F4A7C15ULL));
    return SplitMix64(s);
}

}  // namespace vclab
