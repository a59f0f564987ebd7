#include "cortex/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "cortex/error.hpp"

namespace cortex {

namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double std_normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

void check_normal(double mean, double sigma) {
    if (!std::isfinite(mean) || !std::isfinite(sigma) || sigma < 0.0) {
        throw ConfigError("truncated normal needs a finite mean and sigma >= 0");
    }
    if (sigma == 0.0 && (mean < 0.0 || mean > 1.0)) {
        throw ConfigError("point-mass mean " + std::to_string(mean) + " lies outside [0,1]");
    }
}

}  // namespace

double sample_clamped_uniform(double base, double band, SplitMix64& rng) {
    if (!(base >= 0.0 && base <= 1.0)) throw ConfigError("uniform base must lie in [0,1]");
    if (!(band >= 0.0 && band < 1.0)) throw ConfigError("uniform band must lie in [0,1)");
    const double lo = std::max(0.0, (1.0 - band) * base);
    const double hi = std::min(1.0, (1.0 + band) * base);
    if (!(hi > lo)) return base;
    return lo + (hi - lo) * rng.next_double();
}

double truncation_acceptance(double mean, double sigma) {
    check_normal(mean, sigma);
    if (sigma == 0.0) return 1.0;
    const double a = (0.0 - mean) / sigma;
    const double b = (1.0 - mean) / sigma;
    // Upper-tail form keeps precision when both bounds sit far in one tail.
    if (a > 0.0) return std_normal_cdf(-a) - std_normal_cdf(-b);
    return std_normal_cdf(b) - std_normal_cdf(a);
}

double sample_truncated_normal(double mean, double sigma, SplitMix64& rng) {
    const double p = truncation_acceptance(mean, sigma);
    if (sigma == 0.0) return mean;
    if (p < kMinAcceptance) {
        throw ConfigError("truncated normal N(" + std::to_string(mean) + ", " + std::to_string(sigma) +
                          ") keeps only " + std::to_string(p) + " of its mass in [0,1]");
    }
    return sample_truncated_normal_unchecked(mean, sigma, rng);
}

double sample_truncated_normal_unchecked(double mean, double sigma, SplitMix64& rng) {
    std::normal_distribution<double> normal(mean, sigma);
    for (;;) {
        const double x = normal(rng);
        if (x >= 0.0 && x <= 1.0) return x;
    }
}

TruncatedMoments truncated_normal_moments(double mean, double sigma) {
    const double z = truncation_acceptance(mean, sigma);
    if (sigma == 0.0) return {mean, 0.0};
    if (z < kMinAcceptance) throw ConfigError("truncated normal has negligible mass in [0,1]");
    const double a = (0.0 - mean) / sigma;
    const double b = (1.0 - mean) / sigma;
    const double pa = std_normal_pdf(a);
    const double pb = std_normal_pdf(b);
    const double shift = (pa - pb) / z;
    const double var = sigma * sigma * (1.0 + (a * pa - b * pb) / z - shift * shift);
    return {mean + sigma * shift, std::sqrt(std::max(0.0, var))};
}

}  // namespace cortex
