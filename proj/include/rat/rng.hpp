#pragma once

#include <cstdint>

namespace rat {

// SplitMix64 (Steele, Lea, Flood 2014). All simulation randomness flows
// through this generator so runs are reproducible bit-for-bit from a seed.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    /// Bernoulli draw; p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p) {
        if (p <= 0.0) {
            next();  // keep the stream position independent of p
            return false;
        }
        if (p >= 1.0) {
            next();
            return true;
        }
        return uniform() < p;
    }
};

}  // namespace rat
