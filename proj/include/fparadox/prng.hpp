#pragma once

#include <cstdint>

namespace fparadox {

/// Counter-based generator: draw i of stream `seed` is splitmix64_mix(seed + (i + 1) * golden).
///
/// This is the SplitMix64 sequence written as a pure function of (seed, counter), so any
/// draw can be reproduced without replaying the stream and other implementations can
/// match it bit for bit from the three constants below.
class CounterRng {
public:
    static constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Independent stream seed for trial `index` of a batch keyed by `seed`.
    static constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t index) noexcept {
        return mix(seed + (index + 1) * golden_gamma);
    }

    explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    constexpr std::uint64_t next() noexcept {
        ++counter_;
        return mix(seed_ + counter_ * golden_gamma);
    }

    /// Uniform on [0, 1) with 53 random bits.
    constexpr double uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [0, bound) by rejection; bound must be positive.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    constexpr std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace fparadox
