#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cortex/modifiers.hpp"
#include "cortex/scoring.hpp"
#include "cortex/statistics.hpp"
#include "cortex/taxonomy.hpp"

namespace cortex {

/// Truncated-normal prior for one modifier. Without a mean the profile value
/// is used; sigma 0 freezes the modifier.
struct ModifierDistribution {
    std::optional<double> mean;
    double sigma = 0.0;

    bool operator==(const ModifierDistribution&) const = default;
};

struct ParameterDistributions {
    std::string name = "demo";
    double li_band = 0.10;
    std::array<ModifierDistribution, 5> modifiers{{{{}, 0.03}, {{}, 0.02}, {{}, 0.05}, {{}, 0.03}, {{}, 0.04}}};

    /// C 0.03, G 0.02, T 0.05, E 0.03, R 0.04 around the profile values.
    static ParameterDistributions demo();
    /// demo with R fixed at N(0.70, 0.05).
    static ParameterDistributions layer5();
    /// "demo" or "layer5"; throws NotFoundError otherwise.
    static ParameterDistributions preset(std::string_view name);

    ModifierDistribution& operator[](Modifier m) noexcept { return modifiers[index_of(m)]; }
    const ModifierDistribution& operator[](Modifier m) const noexcept { return modifiers[index_of(m)]; }

    double mean_for(Modifier m, const ModifierProfile& profile) const noexcept {
        return modifiers[index_of(m)].mean.value_or(profile[m]);
    }

    /// sigmas >= 0, means in [0,1], li_band in [0,1). Throws ConfigError.
    void validate() const;

    bool operator==(const ParameterDistributions&) const = default;
};

struct SimulationConfig {
    std::uint64_t n_samples = 10'000;
    std::uint64_t seed = 42;
    std::vector<double> percentiles{0.50, 0.90};
    ParameterDistributions distributions;
    std::size_t histogram_bins = 50;
    std::size_t kde_points = 256;

    void validate() const;

    bool operator==(const SimulationConfig&) const = default;
};

/// Execution knobs that never change results.
struct RunOptions {
    int workers = 0;  // 0 = OpenMP default
};

struct QuantileValue {
    double q = 0.0;
    double value = 0.0;

    bool operator==(const QuantileValue&) const = default;
};

struct SimulationSummary {
    std::string group_id;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    std::string preset;
    double composite = 0.0;  // deterministic score at the nominal inputs
    double mean = 0.0;
    double p50 = 0.0;
    double p90 = 0.0;
    double std_dev = 0.0;
    std::vector<QuantileValue> quantiles;
    Histogram histogram;
    BoxSummary box;
    Kde kde;
    Tier tier_p50 = Tier::minimal;
    Tier tier_p90 = Tier::minimal;

    bool operator==(const SimulationSummary&) const = default;
};

// ---------------------------------------------------------------------------
// Sample kernel
// ---------------------------------------------------------------------------

/// Channel order inside a SampleContext.
enum class Channel : std::size_t { L = 0, I, C, G, T, E, R };
inline constexpr std::size_t kChannelCount = 7;

std::string_view to_string(Channel c) noexcept;

/// Everything one draw needs, resolved up front.
struct SampleContext {
    double l = 0.0;  // normalized likelihood, L/5
    double i = 0.0;  // normalized impact, I/5
    double li_band = 0.0;
    std::array<double, 5> means{};
    std::array<double, 5> sigmas{};
    WeightVector weights;
    double k = 3.0;
    std::array<std::uint64_t, kChannelCount> streams{};
    /// Channels left false are held at their nominal value.
    std::array<bool, kChannelCount> stochastic{true, true, true, true, true, true, true};
};

SampleContext make_context(std::string_view group_id, int likelihood, int impact,
                           const ModifierProfile& profile, const WeightVector& weights,
                           const UtilityParams& params, const SimulationConfig& config);

struct Draw {
    double utility = 0.0;
    double composite = 0.0;
};

/// Draw number `index`; a pure function of (ctx, index).
Draw draw_sample(const SampleContext& ctx, std::uint64_t index);

/// Composite samples 0..n-1, split across OpenMP threads.
std::vector<double> simulate_kernel(const SampleContext& ctx, std::uint64_t n, int workers = 0);
/// Reference single-threaded loop; must agree bit for bit with simulate_kernel.
std::vector<double> simulate_kernel_serial(const SampleContext& ctx, std::uint64_t n);

/// Utility samples for the same draws, used by the sensitivity report.
std::vector<double> simulate_utility(const SampleContext& ctx, std::uint64_t n, int workers = 0);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Summary statistics of a composite sample; `samples` is sorted in place.
SimulationSummary summarize(std::string group_id, std::vector<double>& samples, double deterministic,
                            const SimulationConfig& config, int workers = 0);

SimulationSummary simulate_inputs(const std::string& group_id, int likelihood, int impact,
                                  const ModifierProfile& profile, const WeightVector& weights,
                                  const UtilityParams& params, const SimulationConfig& config,
                                  const RunOptions& options = {});

SimulationSummary run_monte_carlo(const VulnerabilityGroup& group, const ModifierProfile& profile,
                                  const WeightVector& weights, const UtilityParams& params,
                                  const SimulationConfig& config, const RunOptions& options = {});

/// One summary per group, taxonomy order.
std::vector<SimulationSummary> scorecard_simulation(const Taxonomy& taxonomy, const ModifierProfile& profile,
                                                    const WeightVector& weights, const UtilityParams& params,
                                                    const SimulationConfig& config,
                                                    const RunOptions& options = {});

struct ChannelContribution {
    std::string channel;  // "U", "C", "G", "T", "E", "R"
    double weight = 0.0;
    double sigma = 0.0;        // truncated sd of the modifier, or sd of U
    double analytic = 0.0;     // weight * sigma
    double empirical = 0.0;    // sd of composite with only this channel stochastic
    double analytic_share = 0.0;
    double empirical_share = 0.0;

    bool operator==(const ChannelContribution&) const = default;
};

struct SensitivityReport {
    std::string group_id;
    std::vector<ChannelContribution> channels;
    double simulated_std = 0.0;  // all channels stochastic
    double analytic_std = 0.0;   // sqrt of the summed channel variances

    bool operator==(const SensitivityReport&) const = default;
};

/// Shares are variance shares: contribution^2 over the sum of squares.
SensitivityReport sensitivity_analysis(const VulnerabilityGroup& group, const ModifierProfile& profile,
                                       const WeightVector& weights, const UtilityParams& params,
                                       const SimulationConfig& config, const RunOptions& options = {});

SensitivityReport sensitivity_inputs(const std::string& group_id, int likelihood, int impact,
                                     const ModifierProfile& profile, const WeightVector& weights,
                                     const UtilityParams& params, const SimulationConfig& config,
                                     const RunOptions& options = {});

}  // namespace cortex
