#pragma once

#include <cstdint>

namespace scalebench {

// Counter-based pseudo-random generator. Part of the fixture contract: the
// exact algorithm below is what makes synthetic datasets reproducible across
// runs, platforms and implementations, and lets parallel generation match
// sequential output bit for bit.
//
// Definitions (all arithmetic on uint64_t, wrapping):
//   GAMMA = 0x9E3779B97F4A7C15
//   mix(z) = { z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//              z ^= z >> 27; z *= 0x94D049BB133111EB;
//              z ^= z >> 31; return z; }            (splitmix64 finalizer)
//   state(seed, stream) = mix(seed ^ mix(stream))
//   word(i)             = mix(state + GAMMA * (i + 1))
//
// Derived deviates:
//   uniform(i)  = (word(i) >> 11 + 1) * 2^-53                in (0, 1]
//   normal(j)   = sqrt(-2 ln uniform(2j)) * cos(2 pi uniform(2j+1))
//                 (Box-Muller, cosine branch only)
//   bounded(i,n)= high 64 bits of word(i) * n                in [0, n)
class CounterRng {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(seed ^ mix(stream))) {}

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    // Random access by counter index; the basis of splittable generation.
    std::uint64_t word_at(std::uint64_t index) const {
        return mix(state_ + kGamma * (index + 1));
    }

    double uniform_at(std::uint64_t index) const {
        return static_cast<double>((word_at(index) >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal deviate consuming uniforms 2*pair_index and
    // 2*pair_index + 1.
    double normal_at(std::uint64_t pair_index) const;

    // Uniform integer in [0, n) via 128-bit multiply-shift.
    std::uint64_t bounded_at(std::uint64_t index, std::uint64_t n) const {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(word_at(index)) * n) >> 64);
    }

    // Sequential interface; next_u64() returns word_at(0), word_at(1), ...
    std::uint64_t next_u64() { return word_at(counter_++); }
    double next_uniform() { return uniform_at(counter_++); }

private:
    std::uint64_t state_;
    std::uint64_t counter_ = 0;
};

}  // namespace scalebench
