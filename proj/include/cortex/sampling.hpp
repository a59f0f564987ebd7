#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace cortex {

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Small-state generator satisfying UniformRandomBitGenerator. Cheap enough
/// to construct per sample, which is what makes the sample loop
/// schedule-independent.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// 53-bit uniform on [0,1).
    constexpr double next_double() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Stream id for one parameter of one group under a master seed.
constexpr std::uint64_t derive_stream(std::uint64_t master_seed, std::string_view group_id,
                                      std::string_view parameter) noexcept {
    std::uint64_t h = mix64(master_seed);
    h = mix64(h ^ fnv1a64(group_id));
    return mix64(h ^ fnv1a64(parameter));
}

/// Generator for draw `index` of a stream.
constexpr SplitMix64 sample_generator(std::uint64_t stream, std::uint64_t index) noexcept {
    return SplitMix64(mix64(stream ^ mix64(index)));
}

/// Uniform on [max(0,(1-band)*base), min(1,(1+band)*base)]. A degenerate
/// interval returns `base` itself. Throws ConfigError when base is outside
/// [0,1] or band outside [0,1).
double sample_clamped_uniform(double base, double band, SplitMix64& rng);

/// Probability mass of Normal(mean, sigma) inside [0,1].
double truncation_acceptance(double mean, double sigma);

inline constexpr double kMinAcceptance = 1e-6;

/// Normal(mean, sigma) conditioned on [0,1], by rejection. sigma == 0 is a
/// point mass at `mean`. Throws ConfigError for negative sigma, a mean
/// outside [0,1] with sigma == 0, or acceptance below kMinAcceptance.
double sample_truncated_normal(double mean, double sigma, SplitMix64& rng);

/// Same draw without the argument checks, for hot loops whose parameters were
/// validated up front. sigma must be > 0 and acceptance >= kMinAcceptance.
double sample_truncated_normal_unchecked(double mean, double sigma, SplitMix64& rng);

struct TruncatedMoments {
    double mean = 0.0;
    double sd = 0.0;
};

/// Closed-form mean and standard deviation of the [0,1]-truncated normal.
TruncatedMoments truncated_normal_moments(double mean, double sigma);

}  // namespace cortex
