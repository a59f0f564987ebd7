#pragma once

// Reference values and independent re-implementations used by the tests.
// Nothing here calls into the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <vector>

namespace oracle {

struct ScorecardRef {
    std::string_view id;
    int L;
    int I;
    double utility;    // reference, 3 d.p.
    double composite;  // reference, 3 d.p.
};

// Composite-score table for a general-purpose deployment, transcribed row by row.
inline constexpr std::array<ScorecardRef, 29> kScorecard{{
    {"prompt-injection", 5, 4, 0.909, 0.756},
    {"training-data-poisoning", 4, 5, 0.909, 0.756},
    {"label-manipulation", 3, 4, 0.763, 0.705},
    {"adversarial-input-attacks", 2, 4, 0.617, 0.653},
    {"hallucination", 4, 3, 0.763, 0.705},
    {"reinforcement-misalignment", 1, 5, 0.451, 0.595},
    {"memorization-overfitting", 1, 3, 0.302, 0.543},
    {"training-bias-demographic", 4, 5, 0.909, 0.756},
    {"training-bias-cultural", 3, 4, 0.763, 0.705},
    {"toxic-misinformation", 5, 4, 0.909, 0.756},
    {"deepfake-synthetic-media", 4, 5, 0.909, 0.756},
    {"discriminatory-outcomes", 5, 5, 0.950, 0.770},
    {"chatbot-radicalization", 2, 4, 0.617, 0.653},
    {"hallucination-overreliance", 3, 4, 0.763, 0.705},
    {"model-extraction", 2, 3, 0.513, 0.617},
    {"membership-inference", 2, 4, 0.617, 0.653},
    {"insecure-apis", 3, 3, 0.660, 0.669},
    {"model-release-ip-leakage", 3, 4, 0.763, 0.705},
    {"pii-leakage", 4, 5, 0.909, 0.756},
    {"surveillance-misuse", 3, 5, 0.834, 0.730},
    {"gdpr-regulatory-breaches", 1, 5, 0.451, 0.595},
    {"supply-chain-injection", 2, 5, 0.699, 0.682},
    {"endpoint-misconfiguration", 4, 3, 0.763, 0.705},
    {"lack-of-monitoring", 1, 3, 0.302, 0.543},
    {"deployment-drift", 2, 3, 0.513, 0.617},
    {"adversarial-ai-lifecycle", 1, 2, 0.213, 0.512},
    {"ui-induced-overtrust", 0, 2, 0.000, 0.438},
    {"human-ai-escalation", 1, 3, 0.302, 0.543},
    {"feedback-loop-abuse", 0, 4, 0.000, 0.438},
}};

struct ExtremeRow {
    std::string_view id;
    std::string_view tier;
    double composite;
    double p50;
    double p90;
    double sd;
};

// Top/bottom five with simulated percentiles and spread.
inline constexpr std::array<ExtremeRow, 10> kExtremes{{
    {"discriminatory-outcomes", "High", 0.770, 0.7690, 0.7834, 0.0110},
    {"prompt-injection", "High", 0.756, 0.7548, 0.7706, 0.0120},
    {"training-data-poisoning", "High", 0.756, 0.7559, 0.7706, 0.0116},
    {"pii-leakage", "High", 0.756, 0.7551, 0.7696, 0.0115},
    {"deepfake-synthetic-media", "High", 0.756, 0.7543, 0.7695, 0.0115},
    {"feedback-loop-abuse", "Low", 0.438, 0.4413, 0.4534, 0.0112},
    {"ui-induced-overtrust", "Low", 0.438, 0.4417, 0.4537, 0.0114},
    {"adversarial-ai-lifecycle", "Moderate", 0.512, 0.5112, 0.5253, 0.0130},
    {"human-ai-escalation", "Moderate", 0.543, 0.5421, 0.5563, 0.0150},
    {"lack-of-monitoring", "Moderate", 0.543, 0.5427, 0.5554, 0.0113},
}};

/// The reference utility for this row is 0.834 while 1 - exp(-1.8) = 0.8347;
/// the recorded figure is truncated rather than rounded. Its composite is unaffected.
inline constexpr std::string_view kTruncatedUtility = "surveillance-misuse";

/// Groups without an ATLAS reference.
inline constexpr std::array<std::string_view, 17> kNoAtlas{
    "reinforcement-misalignment", "memorization-overfitting", "training-bias-demographic",
    "training-bias-cultural",     "model-release-ip-leakage", "pii-leakage",
    "surveillance-misuse",        "gdpr-regulatory-breaches", "discriminatory-outcomes",
    "chatbot-radicalization",     "hallucination-overreliance", "endpoint-misconfiguration",
    "lack-of-monitoring",         "deployment-drift",         "ui-induced-overtrust",
    "human-ai-escalation",        "feedback-loop-abuse"};

// Incidents column summed by hand.
inline constexpr long kIncidentTotal = 624;
// Distinct-vulnerability bullets counted by hand: 27 groups x 4 + 2 groups x 5.
inline constexpr std::size_t kDistinctCount = 118;

// Curated likelihoods whose incident count bands differently under
// thresholds {36,25,18,12,4}: both have 12 incidents and L = 1.
inline constexpr std::array<std::string_view, 2> kLikelihoodMismatches{"reinforcement-misalignment",
                                                                       "lack-of-monitoring"};

inline constexpr std::array<double, 6> kWeights{0.35, 0.15, 0.15, 0.10, 0.10, 0.15};
inline constexpr std::array<double, 5> kGeneralPurpose{0.70, 0.75, 0.60, 0.70, 0.60};
inline constexpr std::array<double, 5> kDemoSigma{0.03, 0.02, 0.05, 0.03, 0.04};

inline long double utility(int L, int I, long double k = 3.0L) {
    return 1.0L - std::exp(-k * static_cast<long double>(L * I) / 25.0L);
}

inline long double composite(long double u, const std::array<double, 5>& m,
                             const std::array<double, 6>& w = kWeights) {
    long double s = w[0] * u;
    for (int j = 0; j < 5; ++j) s += static_cast<long double>(w[j + 1]) * m[j];
    return s;
}

inline std::string_view tier(double c) {
    if (c >= 0.85) return "Critical";
    if (c >= 0.70) return "High";
    if (c >= 0.50) return "Moderate";
    if (c >= 0.30) return "Low";
    return "Minimal";
}

/// Brute force: sort, then read rank (n-1)q with linear interpolation.
inline double percentile(std::vector<double> xs, double q) {
    std::sort(xs.begin(), xs.end());
    const double h = (static_cast<double>(xs.size()) - 1.0) * q;
    const double lo = std::floor(h);
    const double hi = std::ceil(h);
    const double a = xs[static_cast<std::size_t>(lo)];
    const double b = xs[static_cast<std::size_t>(hi)];
    return a + (h - lo) * (b - a);
}

/// Composite Simpson rule.
template <typename F>
long double simpson(F f, long double a, long double b, int n = 2000) {
    const long double h = (b - a) / n;
    long double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0L : 2.0L);
    return s * h / 3.0L;
}

inline long double normal_pdf(long double x, long double mu, long double sd) {
    const long double z = (x - mu) / sd;
    return std::exp(-0.5L * z * z) / (sd * std::sqrt(2.0L * 3.14159265358979323846L));
}

/// Mean and sd of N(mu, sd) restricted to [0,1], by quadrature.
inline std::array<long double, 2> truncated_moments(long double mu, long double sd) {
    const auto z = simpson([&](long double x) { return normal_pdf(x, mu, sd); }, 0.0L, 1.0L, 20000);
    const auto m1 = simpson([&](long double x) { return x * normal_pdf(x, mu, sd); }, 0.0L, 1.0L, 20000) / z;
    const auto m2 = simpson([&](long double x) { return x * x * normal_pdf(x, mu, sd); }, 0.0L, 1.0L, 20000) / z;
    return {m1, std::sqrt(m2 - m1 * m1)};
}

/// Range of the clamped relative-uniform draw around base.
inline std::array<long double, 2> uniform_range(long double base, long double band = 0.1L) {
    return {std::max(0.0L, (1 - band) * base), std::min(1.0L, (1 + band) * base)};
}

/// E[U] and Var[U] with l, i independent clamped uniforms, by 2-D quadrature.
inline std::array<long double, 2> utility_moments(int L, int I, long double k = 3.0L) {
    const auto [la, lb] = uniform_range(L / 5.0L);
    const auto [ia, ib] = uniform_range(I / 5.0L);
    if (lb <= la || ib <= ia) {
        // At least one factor is a point mass; with L or I = 0 U is exactly 0.
        if (lb <= la && ib <= ia) return {1.0L - std::exp(-k * la * ia), 0.0L};
        const long double fixed = lb <= la ? la : ia;
        const auto [a, b] = lb <= la ? std::array{ia, ib} : std::array{la, lb};
        auto u = [&](long double x) { return 1.0L - std::exp(-k * fixed * x); };
        const auto m1 = simpson(u, a, b) / (b - a);
        const auto m2 = simpson([&](long double x) { return u(x) * u(x); }, a, b) / (b - a);
        return {m1, m2 - m1 * m1};
    }
    auto inner = [&](long double l, int power) {
        return simpson([&](long double i) { return std::pow(1.0L - std::exp(-k * l * i), power); }, ia, ib, 400) /
               (ib - ia);
    };
    const auto m1 = simpson([&](long double l) { return inner(l, 1); }, la, lb, 400) / (lb - la);
    const auto m2 = simpson([&](long double l) { return inner(l, 2); }, la, lb, 400) / (lb - la);
    return {m1, m2 - m1 * m1};
}

/// Analytic composite mean and variance under the demo preset around `profile`.
inline std::array<long double, 2> composite_moments(int L, int I, const std::array<double, 5>& profile = kGeneralPurpose,
                                                    const std::array<double, 5>& sigma = kDemoSigma) {
    const auto [eu, vu] = utility_moments(L, I);
    long double m = kWeights[0] * eu;
    long double v = kWeights[0] * kWeights[0] * vu;
    for (int j = 0; j < 5; ++j) {
        const auto [tm, ts] = truncated_moments(profile[j], sigma[j]);
        m += kWeights[j + 1] * tm;
        v += kWeights[j + 1] * kWeights[j + 1] * ts * ts;
    }
    return {m, v};
}

}  // namespace oracle
