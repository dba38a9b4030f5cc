#pragma once

#include <cstdint>
#include <limits>

namespace depref {

/// splitmix64 (Steele, Lea & Flood; Vigna's fixed-increment variant).
/// 64 bits of state, passes BigCrush, and cheap enough to sit in the
/// per-site-per-step inner loop.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    result_type operator()() { return next_u64(); }
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

private:
    std::uint64_t state_;
};

/// splitmix64 output function used as a bit mixer for stream derivation.
inline std::uint64_t mix_bits(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Independent sub-stream families of a single user seed.
enum class StreamTag : std::uint64_t {
    Run = 1,        // per-run transition sampling, indexed by run
    Population = 2, // popularity sampling, index 0 (fixed) or run (resampled)
};

/// Deterministic stream derivation: the generator for (seed, tag, index) is
/// fixed by construction, so ensembles are reproducible independent of how
/// runs are scheduled across threads.
inline SplitMix64 derive_stream(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
    std::uint64_t z = mix_bits(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(tag));
    z = mix_bits(z ^ (0xBF58476D1CE4E5B9ULL * (index + 1)));
    return SplitMix64(z);
}

} // namespace depref
