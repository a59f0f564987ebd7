#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cortex {

/// Type-7 quantile of an ascending sample: rank h = (n-1)q, linear between
/// neighbours. Accepts q in [0,1]. Throws ConfigError on empty input.
double percentile_sorted(std::span<const double> sorted, double q);

/// Copies, sorts, and calls percentile_sorted. q must lie in (0,1).
double percentile(std::span<const double> samples, double q);

/// Left-to-right sums, so results do not depend on how samples were produced.
double mean(std::span<const double> samples);
/// n-1 denominator; 0 for a single sample.
double sample_std(std::span<const double> samples);

struct Histogram {
    std::vector<double> edges;  // bins + 1 edges spanning [0,1]
    std::vector<std::size_t> counts;

    bool operator==(const Histogram&) const = default;
};

/// Fixed-width bins over [0,1]; 1.0 lands in the last bin and values outside
/// the range are clamped into the end bins.
Histogram histogram(std::span<const double> samples, std::size_t bins);

struct BoxSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double whisker_low = 0.0;   // smallest sample >= q1 - 1.5 IQR
    double whisker_high = 0.0;  // largest sample <= q3 + 1.5 IQR
    std::vector<double> outliers;

    bool operator==(const BoxSummary&) const = default;
};

BoxSummary box_summary(std::span<const double> sorted);

/// Used when the sample has no spread at all.
inline constexpr double kMinBandwidth = 1e-4;

/// 0.9 * min(sd, IQR/1.34) * n^(-1/5). Falls back to the non-zero spread
/// measure, then to kMinBandwidth.
double silverman_bandwidth(std::span<const double> sorted);

struct Kde {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;

    bool operator==(const Kde&) const = default;
};

/// Gaussian KDE of an ascending sample on `points` evenly spaced grid nodes
/// over [0,1]. Each node sums only samples within 8 bandwidths. Grid nodes are
/// split across `workers` OpenMP threads (0 = runtime default); every node is
/// computed the same way, so the result matches kde_serial bit for bit.
Kde kde(std::span<const double> sorted, std::size_t points, int workers = 0);
Kde kde_serial(std::span<const double> sorted, std::size_t points);

}  // namespace cortex
