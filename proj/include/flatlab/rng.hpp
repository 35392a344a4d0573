#pragma once

#include <cstdint>

namespace flatlab {

/// SplitMix64 (Steele, Lea, Flood 2014). Output is fully specified by the
/// seed, so every experiment reproduces bit-for-bit on any platform.
/// Independent streams are derived with split(), which hashes the parent seed
/// together with a stream index.
class SplitMix64 {
public:
    static constexpr const char* name = "splitmix64";

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        return mix(z);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// +1 or -1 from the top bit.
    constexpr int sign() noexcept { return (next() >> 63) ? -1 : 1; }

    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        return bound == 0 ? 0 : next() % bound;
    }

    constexpr SplitMix64 split(std::uint64_t stream) const noexcept {
        return SplitMix64(derive(state_, stream));
    }

    static constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) noexcept {
        return mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL));
    }

    static constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                                          std::uint64_t b) noexcept {
        return derive(derive(seed, a), b);
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace flatlab
