#include "cortex/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "cortex/error.hpp"
#include "cortex/sampling.hpp"
#include "parallel.hpp"
#include "util.hpp"

namespace cortex {

ParameterDistributions ParameterDistributions::demo() { return ParameterDistributions{}; }

ParameterDistributions ParameterDistributions::layer5() {
    ParameterDistributions d;
    d.name = "layer5";
    d[Modifier::R] = {0.70, 0.05};
    return d;
}

ParameterDistributions ParameterDistributions::preset(std::string_view name) {
    if (detail::iequals(name, "demo")) return demo();
    if (detail::iequals(name, "layer5")) return layer5();
    throw NotFoundError("unknown distribution preset '" + std::string(name) + "' (known: demo, layer5)");
}

void ParameterDistributions::validate() const {
    std::vector<std::string> problems;
    if (!(li_band >= 0.0 && li_band < 1.0)) problems.push_back("li_band must lie in [0,1)");
    for (auto m : kAllModifiers) {
        const auto& d = modifiers[index_of(m)];
        const std::string name(to_string(m));
        if (!std::isfinite(d.sigma) || d.sigma < 0.0) problems.push_back(name + ": sigma must be >= 0");
        if (d.mean && !(*d.mean >= 0.0 && *d.mean <= 1.0)) problems.push_back(name + ": mean must lie in [0,1]");
    }
    if (!problems.empty()) {
        std::string msg = "invalid distributions:";
        for (const auto& p : problems) msg += " " + p + ";";
        msg.pop_back();
        throw ConfigError(msg);
    }
}

void SimulationConfig::validate() const {
    if (n_samples < 1) throw ConfigError("n_samples must be at least 1");
    for (double q : percentiles) {
        if (!(q > 0.0 && q < 1.0)) throw ConfigError("percentiles must lie in (0,1)");
    }
    if (histogram_bins < 1) throw ConfigError("histogram_bins must be at least 1");
    if (kde_points < 2) throw ConfigError("kde_points must be at least 2");
    distributions.validate();
}

std::string_view to_string(Channel c) noexcept {
    static constexpr std::array<std::string_view, kChannelCount> names{"L", "I", "C", "G", "T", "E", "R"};
    return names[static_cast<std::size_t>(c)];
}

SampleContext make_context(std::string_view group_id, int likelihood, int impact,
                           const ModifierProfile& profile, const WeightVector& weights,
                           const UtilityParams& params, const SimulationConfig& config) {
    config.validate();
    weights.validate();
    params.validate();
    profile.validate();
    SampleContext ctx;
    ctx.l = static_cast<double>(likelihood) / 5.0;
    ctx.i = static_cast<double>(impact) / 5.0;
    normalize_severity(likelihood, impact);  // range check
    ctx.li_band = config.distributions.li_band;
    ctx.weights = weights;
    ctx.k = params.k;
    for (auto m : kAllModifiers) {
        const auto idx = index_of(m);
        ctx.means[idx] = config.distributions.mean_for(m, profile);
        ctx.sigmas[idx] = config.distributions[m].sigma;
        const double p = truncation_acceptance(ctx.means[idx], ctx.sigmas[idx]);
        if (p < kMinAcceptance) {
            throw ConfigError(std::string(to_string(m)) + ": truncated normal keeps only " + std::to_string(p) +
                              " of its mass in [0,1]");
        }
    }
    for (std::size_t c = 0; c < kChannelCount; ++c) {
        ctx.streams[c] = derive_stream(config.seed, group_id, to_string(static_cast<Channel>(c)));
    }
    return ctx;
}

Draw draw_sample(const SampleContext& ctx, std::uint64_t index) {
    auto channel = [&](Channel c) { return static_cast<std::size_t>(c); };
    double l = ctx.l;
    double i = ctx.i;
    if (ctx.stochastic[channel(Channel::L)]) {
        auto rng = sample_generator(ctx.streams[channel(Channel::L)], index);
        l = sample_clamped_uniform(ctx.l, ctx.li_band, rng);
    }
    if (ctx.stochastic[channel(Channel::I)]) {
        auto rng = sample_generator(ctx.streams[channel(Channel::I)], index);
        i = sample_clamped_uniform(ctx.i, ctx.li_band, rng);
    }
    std::array<double, 5> mod = ctx.means;
    for (std::size_t m = 0; m < 5; ++m) {
        const std::size_t c = m + 2;
        if (ctx.stochastic[c] && ctx.sigmas[m] > 0.0) {
            auto rng = sample_generator(ctx.streams[c], index);
            mod[m] = sample_truncated_normal_unchecked(ctx.means[m], ctx.sigmas[m], rng);
        }
    }
    Draw d;
    d.utility = 1.0 - std::exp(-ctx.k * (l * i));
    const auto& w = ctx.weights;
    const double sum = w.alpha * d.utility + w.gamma * mod[0] + w.delta * mod[1] + w.theta * mod[2] +
                       w.lambda * mod[3] + w.rho * mod[4];
    d.composite = std::clamp(sum, 0.0, 1.0);
    return d;
}

std::vector<double> simulate_kernel(const SampleContext& ctx, std::uint64_t n, int workers) {
    std::vector<double> out(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static) num_threads(detail::resolve_workers(workers))
    for (long long s = 0; s < count; ++s) {
        out[static_cast<std::size_t>(s)] = draw_sample(ctx, static_cast<std::uint64_t>(s)).composite;
    }
    return out;
}

std::vector<double> simulate_kernel_serial(const SampleContext& ctx, std::uint64_t n) {
    std::vector<double> out(n);
    for (std::uint64_t s = 0; s < n; ++s) out[s] = draw_sample(ctx, s).composite;
    return out;
}

std::vector<double> simulate_utility(const SampleContext& ctx, std::uint64_t n, int workers) {
    std::vector<double> out(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static) num_threads(detail::resolve_workers(workers))
    for (long long s = 0; s < count; ++s) {
        out[static_cast<std::size_t>(s)] = draw_sample(ctx, static_cast<std::uint64_t>(s)).utility;
    }
    return out;
}

SimulationSummary summarize(std::string group_id, std::vector<double>& samples, double deterministic,
                            const SimulationConfig& config, int workers) {
    SimulationSummary s;
    s.group_id = std::move(group_id);
    s.n_samples = samples.size();
    s.seed = config.seed;
    s.preset = config.distributions.name;
    s.composite = deterministic;
    // Moments in sample-index order, before sorting.
    s.mean = mean(samples);
    s.std_dev = sample_std(samples);
    std::sort(samples.begin(), samples.end());
    s.p50 = percentile_sorted(samples, 0.50);
    s.p90 = percentile_sorted(samples, 0.90);
    for (double q : config.percentiles) s.quantiles.push_back({q, percentile_sorted(samples, q)});
    s.histogram = histogram(samples, config.histogram_bins);
    s.box = box_summary(samples);
    s.kde = kde(samples, config.kde_points, workers);
    s.tier_p50 = assign_tier(s.p50);
    s.tier_p90 = assign_tier(s.p90);
    return s;
}

SimulationSummary simulate_inputs(const std::string& group_id, int likelihood, int impact,
                                  const ModifierProfile& profile, const WeightVector& weights,
                                  const UtilityParams& params, const SimulationConfig& config,
                                  const RunOptions& options) {
    const auto ctx = make_context(group_id, likelihood, impact, profile, weights, params, config);
    const double deterministic =
        score_inputs(group_id, likelihood, impact, profile, weights, params).composite;
    auto samples = simulate_kernel(ctx, config.n_samples, options.workers);
    return summarize(group_id, samples, deterministic, config, options.workers);
}

SimulationSummary run_monte_carlo(const VulnerabilityGroup& group, const ModifierProfile& profile,
                                  const WeightVector& weights, const UtilityParams& params,
                                  const SimulationConfig& config, const RunOptions& options) {
    return simulate_inputs(group.id, group.curated_likelihood, group.curated_impact, profile, weights, params,
                           config, options);
}

std::vector<SimulationSummary> scorecard_simulation(const Taxonomy& taxonomy, const ModifierProfile& profile,
                                                    const WeightVector& weights, const UtilityParams& params,
                                                    const SimulationConfig& config,
                                                    const RunOptions& options) {
    std::vector<SimulationSummary> out;
    out.reserve(taxonomy.groups.size());
    for (const auto& g : taxonomy.groups) {
        out.push_back(run_monte_carlo(g, profile, weights, params, config, options));
    }
    return out;
}

SensitivityReport sensitivity_inputs(const std::string& group_id, int likelihood, int impact,
                                     const ModifierProfile& profile, const WeightVector& weights,
                                     const UtilityParams& params, const SimulationConfig& config,
                                     const RunOptions& options) {
    const auto base = make_context(group_id, likelihood, impact, profile, weights, params, config);
    const auto n = config.n_samples;
    auto only = [&](std::initializer_list<Channel> live) {
        SampleContext ctx = base;
        ctx.stochastic.fill(false);
        for (auto c : live) ctx.stochastic[static_cast<std::size_t>(c)] = true;
        return ctx;
    };

    SensitivityReport r;
    r.group_id = group_id;
    r.simulated_std = sample_std(simulate_kernel(base, n, options.workers));

    const auto u_ctx = only({Channel::L, Channel::I});
    ChannelContribution u;
    u.channel = "U";
    u.weight = weights.alpha;
    u.sigma = sample_std(simulate_utility(u_ctx, n, options.workers));
    u.analytic = u.weight * u.sigma;
    u.empirical = sample_std(simulate_kernel(u_ctx, n, options.workers));
    r.channels.push_back(u);

    for (auto m : kAllModifiers) {
        const auto idx = index_of(m);
        ChannelContribution c;
        c.channel = std::string(to_string(m));
        c.weight = weights.for_modifier(m);
        c.sigma = truncated_normal_moments(base.means[idx], base.sigmas[idx]).sd;
        c.analytic = c.weight * c.sigma;
        c.empirical = sample_std(simulate_kernel(only({static_cast<Channel>(idx + 2)}), n, options.workers));
        r.channels.push_back(c);
    }

    double analytic_var = 0.0;
    double empirical_var = 0.0;
    for (const auto& c : r.channels) {
        analytic_var += c.analytic * c.analytic;
        empirical_var += c.empirical * c.empirical;
    }
    r.analytic_std = std::sqrt(analytic_var);
    for (auto& c : r.channels) {
        c.analytic_share = analytic_var > 0.0 ? c.analytic * c.analytic / analytic_var : 0.0;
        c.empirical_share = empirical_var > 0.0 ? c.empirical * c.empirical / empirical_var : 0.0;
    }
    return r;
}

SensitivityReport sensitivity_analysis(const VulnerabilityGroup& group, const ModifierProfile& profile,
                                       const WeightVector& weights, const UtilityParams& params,
                                       const SimulationConfig& config, const RunOptions& options) {
    return sensitivity_inputs(group.id, group.curated_likelihood, group.curated_impact, profile, weights,
                              params, config, options);
}

}  // namespace cortex
