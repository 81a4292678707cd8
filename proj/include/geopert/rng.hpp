// SplitMix64 PRNG: 64-bit state, one multiply-xorshift round per output.
// Fixed algorithm (Steele/Lea/Flood 2014), so streams are bit-identical on
// every platform, which is what makes certificates and sweep tables
// reproducible byte for byte.
#pragma once

#include <cstdint>

namespace geopert {

class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0,1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound), bound > 0. Rejection sampling, no modulo bias.
    uint64_t next_below(uint64_t bound) {
        const uint64_t threshold = -bound % bound;  // 2^64 mod bound
        for (;;) {
            uint64_t x = next_u64();
            if (x >= threshold) return x % bound;
        }
    }

private:
    uint64_t state_;
};

// Stable per-trial seed derivation: seed = mix(master, a, b) where (a, b) is
// typically (grid index, trial index). Any single trial can be re-run in
// isolation from the master seed alone.
inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b) {
    SplitMix64 g(master ^ (0x9E3779B97F4A7C15ULL * (a + 1)) ^ (0xBF58476D1CE4E5B9ULL * (b + 1)));
    return g.next_u64();
}

}  // namespace geopert
