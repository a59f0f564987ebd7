#include <cmath>
#include <numeric>
#include <random>

#include "cortex/error.hpp"
#include "cortex/statistics.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cortex;

TEST_SUITE("statistics") {

TEST_CASE("percentile examples") {
    const std::vector<double> five{1, 2, 3, 4, 5};
    CHECK(percentile(five, 0.5) == 3.0);
    CHECK(percentile(std::vector<double>{0, 1}, 0.9) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(percentile(std::vector<double>{5, 1, 4, 2, 3}, 0.25) == 2.0);
    CHECK(percentile(std::vector<double>{7}, 0.9) == 7.0);
    CHECK_THROWS_AS(percentile(std::vector<double>{}, 0.5), ConfigError);
    CHECK_THROWS_AS(percentile(five, 0.0), ConfigError);
    CHECK_THROWS_AS(percentile(five, 1.0), ConfigError);
    CHECK(percentile_sorted(five, 0.0) == 1.0);
    CHECK(percentile_sorted(five, 1.0) == 5.0);
}

TEST_CASE("percentile equals the brute-force oracle") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> len(1, 40);
    std::normal_distribution<double> value(0.0, 3.0);
    std::uniform_real_distribution<double> q(1e-6, 1.0 - 1e-6);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> xs(static_cast<std::size_t>(len(rng)));
        for (auto& x : xs) x = std::round(value(rng) * 4.0) / 4.0;  // force ties
        const double qq = q(rng);
        CHECK(percentile(xs, qq) == oracle::percentile(xs, qq));
    }
}

TEST_CASE("uniform quantile") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> xs(100'000);
    for (auto& x : xs) x = u(rng);
    CHECK(std::abs(percentile(xs, 0.9) - 0.9) < 0.01);
}

TEST_CASE("moments") {
    const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
    CHECK(mean(xs) == 5.0);
    CHECK(sample_std(xs) == doctest::Approx(std::sqrt(32.0 / 7.0)));
    CHECK(sample_std(std::vector<double>{3.0}) == 0.0);
    CHECK_THROWS_AS(mean(std::vector<double>{}), ConfigError);
}

TEST_CASE("histogram") {
    const std::vector<double> xs{0.0, 0.01, 0.5, 0.999, 1.0, 1.0};
    const auto h = histogram(xs, 10);
    CHECK(h.edges.size() == 11);
    CHECK(h.edges.front() == 0.0);
    CHECK(h.edges.back() == 1.0);
    CHECK(h.counts[0] == 2);
    CHECK(h.counts[5] == 1);
    CHECK(h.counts[9] == 3);
    CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == xs.size());
    CHECK_THROWS_AS(histogram(xs, 0), ConfigError);
}

TEST_CASE("box summary") {
    std::vector<double> xs{1, 2, 3, 4, 5, 6, 7, 8, 9, 100};
    const auto b = box_summary(xs);
    CHECK(b.min == 1.0);
    CHECK(b.max == 100.0);
    CHECK(b.q1 == doctest::Approx(3.25));
    CHECK(b.median == doctest::Approx(5.5));
    CHECK(b.q3 == doctest::Approx(7.75));
    CHECK(b.outliers == std::vector<double>{100.0});
    CHECK(b.whisker_high == 9.0);
    CHECK(b.whisker_low == 1.0);
    CHECK(b.min <= b.q1);
    CHECK(b.q1 <= b.median);
    CHECK(b.median <= b.q3);
    CHECK(b.q3 <= b.max);
}

TEST_CASE("silverman bandwidth") {
    std::vector<double> xs{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    const double sd = sample_std(xs);
    const double iqr = (percentile_sorted(xs, 0.75) - percentile_sorted(xs, 0.25)) / 1.34;
    CHECK(silverman_bandwidth(xs) == doctest::Approx(0.9 * std::min(sd, iqr) * std::pow(9.0, -0.2)));
    const std::vector<double> flat(50, 0.4375);
    CHECK(silverman_bandwidth(flat) == kMinBandwidth);
}

TEST_CASE("kde integrates to one and peaks at the mode") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> n(0.5, 0.05);
    std::vector<double> xs(20'000);
    for (auto& x : xs) x = n(rng);
    std::sort(xs.begin(), xs.end());
    const auto k = kde(xs, 256);
    CHECK(k.grid.size() == 256);
    double area = 0.0;
    for (std::size_t i = 1; i < k.grid.size(); ++i) {
        area += 0.5 * (k.density[i] + k.density[i - 1]) * (k.grid[i] - k.grid[i - 1]);
    }
    CHECK(area == doctest::Approx(1.0).epsilon(0.01));
    const auto peak = std::max_element(k.density.begin(), k.density.end()) - k.density.begin();
    CHECK(std::abs(k.grid[static_cast<std::size_t>(peak)] - 0.5) < 0.01);
    // Normal peak height 1/(sd*sqrt(2pi)) ~ 7.98, slightly flattened by smoothing.
    CHECK(k.density[static_cast<std::size_t>(peak)] == doctest::Approx(7.98).epsilon(0.05));
}

TEST_CASE("parallel kde matches the serial reference bit for bit") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.3, 0.8);
    std::vector<double> xs(5'000);
    for (auto& x : xs) x = u(rng);
    std::sort(xs.begin(), xs.end());
    const auto ref = kde_serial(xs, 256);
    CHECK(kde(xs, 256, 1) == ref);
    CHECK(kde(xs, 256, 4) == ref);
    CHECK(kde(xs, 256, 8) == ref);
}

}  // TEST_SUITE
