#include "cortex/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cortex/error.hpp"
#include "parallel.hpp"

namespace cortex {

double percentile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw ConfigError("percentile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("quantile must lie in [0,1]");
    const double h = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double percentile(std::span<const double> samples, double q) {
    if (!(q > 0.0 && q < 1.0)) throw ConfigError("quantile must lie in (0,1)");
    std::vector<double> copy(samples.begin(), samples.end());
    std::sort(copy.begin(), copy.end());
    return percentile_sorted(copy, q);
}

double mean(std::span<const double> samples) {
    if (samples.empty()) throw ConfigError("mean of an empty sample");
    double s = 0.0;
    for (double x : samples) s += x;
    return s / static_cast<double>(samples.size());
}

double sample_std(std::span<const double> samples) {
    const double m = mean(samples);
    if (samples.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : samples) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(samples.size() - 1));
}

Histogram histogram(std::span<const double> samples, std::size_t bins) {
    if (bins == 0) throw ConfigError("histogram needs at least one bin");
    Histogram h;
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = static_cast<double>(b) / static_cast<double>(bins);
    h.counts.assign(bins, 0);
    const double nb = static_cast<double>(bins);
    for (double x : samples) {
        const double pos = std::floor(x * nb);
        std::size_t idx = 0;
        if (pos >= nb) idx = bins - 1;
        else if (pos > 0.0) idx = static_cast<std::size_t>(pos);
        ++h.counts[idx];
    }
    return h;
}

BoxSummary box_summary(std::span<const double> sorted) {
    if (sorted.empty()) throw ConfigError("box summary of an empty sample");
    BoxSummary b;
    b.min = sorted.front();
    b.max = sorted.back();
    b.q1 = percentile_sorted(sorted, 0.25);
    b.median = percentile_sorted(sorted, 0.50);
    b.q3 = percentile_sorted(sorted, 0.75);
    const double iqr = b.q3 - b.q1;
    const double fence_lo = b.q1 - 1.5 * iqr;
    const double fence_hi = b.q3 + 1.5 * iqr;
    b.whisker_low = *std::lower_bound(sorted.begin(), sorted.end(), fence_lo);
    b.whisker_high = *(std::upper_bound(sorted.begin(), sorted.end(), fence_hi) - 1);
    for (double x : sorted) {
        if (x < fence_lo || x > fence_hi) b.outliers.push_back(x);
    }
    return b;
}

double silverman_bandwidth(std::span<const double> sorted) {
    if (sorted.empty()) throw ConfigError("bandwidth of an empty sample");
    const double sd = sample_std(sorted);
    const double iqr = (percentile_sorted(sorted, 0.75) - percentile_sorted(sorted, 0.25)) / 1.34;
    double spread = std::min(sd, iqr);
    if (spread <= 0.0) spread = std::max(sd, iqr);
    const double h = 0.9 * spread * std::pow(static_cast<double>(sorted.size()), -0.2);
    return h > kMinBandwidth ? h : kMinBandwidth;
}

namespace {

constexpr double kWindow = 8.0;

Kde kde_grid(std::span<const double> sorted, std::size_t points) {
    if (sorted.empty()) throw ConfigError("density of an empty sample");
    if (points < 2) throw ConfigError("density grid needs at least two points");
    Kde k;
    k.bandwidth = silverman_bandwidth(sorted);
    k.grid.resize(points);
    for (std::size_t g = 0; g < points; ++g) {
        k.grid[g] = static_cast<double>(g) / static_cast<double>(points - 1);
    }
    k.density.assign(points, 0.0);
    return k;
}

double kde_node(std::span<const double> sorted, double x, double h) {
    const auto first = std::lower_bound(sorted.begin(), sorted.end(), x - kWindow * h);
    const auto last = std::upper_bound(first, sorted.end(), x + kWindow * h);
    double s = 0.0;
    for (auto it = first; it != last; ++it) {
        const double u = (x - *it) / h;
        s += std::exp(-0.5 * u * u);
    }
    return s / (static_cast<double>(sorted.size()) * h * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

Kde kde(std::span<const double> sorted, std::size_t points, int workers) {
    Kde k = kde_grid(sorted, points);
    const auto n = static_cast<long long>(points);
    const int threads = detail::resolve_workers(workers);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long g = 0; g < n; ++g) {
        k.density[static_cast<std::size_t>(g)] = kde_node(sorted, k.grid[static_cast<std::size_t>(g)], k.bandwidth);
    }
    return k;
}

Kde kde_serial(std::span<const double> sorted, std::size_t points) {
    Kde k = kde_grid(sorted, points);
    for (std::size_t g = 0; g < points; ++g) k.density[g] = kde_node(sorted, k.grid[g], k.bandwidth);
    return k;
}

}  // namespace cortex
