#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "cortex/modifiers.hpp"
#include "cortex/taxonomy.hpp"
#include "json.hpp"

namespace cortex {

/// Curvature of the exponential utility transform.
struct UtilityParams {
    double k = 3.0;

    void validate() const;  // k finite and > 0
    bool operator==(const UtilityParams&) const = default;
};

inline constexpr double kWeightSumTolerance = 1e-9;

/// Composite weights on U, C, G, T, E, R. Must lie on the probability simplex.
struct WeightVector {
    double alpha = 0.35;
    double gamma = 0.15;
    double delta = 0.15;
    double theta = 0.10;
    double lambda = 0.10;
    double rho = 0.15;

    double sum() const noexcept { return alpha + gamma + delta + theta + lambda + rho; }
    double for_modifier(Modifier m) const noexcept;
    double& for_modifier(Modifier m) noexcept;

    /// Throws ConfigError on a negative weight or when the sum is more than
    /// kWeightSumTolerance away from 1. Never renormalizes.
    void validate() const;

    bool operator==(const WeightVector&) const = default;
};

/// Looks up a weight by its name ("alpha", "gamma", ...).
double* weight_by_name(WeightVector& w, std::string_view name) noexcept;

enum class Tier { minimal, low, moderate, high, critical };

std::string_view to_string(Tier t) noexcept;
std::optional<Tier> parse_tier(std::string_view text) noexcept;

/// Half-open [lower, upper) except the top band, which closes at 1.
struct TierBand {
    Tier tier;
    double lower;
    double upper;
};

inline constexpr std::array<TierBand, 5> kTierBands{{
    {Tier::minimal, 0.00, 0.30},
    {Tier::low, 0.30, 0.50},
    {Tier::moderate, 0.50, 0.70},
    {Tier::high, 0.70, 0.85},
    {Tier::critical, 0.85, 1.00},
}};

struct WeightedTerms {
    double utility = 0.0;      // alpha * U
    double context = 0.0;      // gamma * C
    double governance = 0.0;   // delta * G
    double technical = 0.0;    // theta * T
    double environment = 0.0;  // lambda * E
    double residual = 0.0;     // rho * R

    /// Left-to-right sum in the order above; composite() uses the same order.
    double sum() const noexcept {
        return utility + context + governance + technical + environment + residual;
    }

    bool operator==(const WeightedTerms&) const = default;
};

struct ScoreBreakdown {
    std::string group_id;
    int likelihood = 0;
    int impact = 0;
    double severity = 0.0;
    double utility = 0.0;
    WeightedTerms terms;
    double composite = 0.0;
    Tier tier = Tier::minimal;

    bool operator==(const ScoreBreakdown&) const = default;
};

/// (L * I) / 25. Throws ConfigError outside 0..5.
double normalize_severity(int likelihood, int impact);

/// 1 - exp(-k * severity).
double utility(double severity, const UtilityParams& params);

WeightedTerms weighted_terms(double utility_value, const ModifierProfile& profile,
                             const WeightVector& weights);

/// alpha*U + gamma*C + delta*G + theta*T + lambda*E + rho*R. Validates weights.
double composite(double utility_value, const ModifierProfile& profile, const WeightVector& weights);

/// Classifies the unrounded composite. Throws ConfigError outside [0,1].
Tier assign_tier(double composite_value);

ScoreBreakdown score_inputs(std::string group_id, int likelihood, int impact,
                            const ModifierProfile& profile, const WeightVector& weights,
                            const UtilityParams& params);

/// Scores a group from its curated likelihood and impact.
ScoreBreakdown score_group(const VulnerabilityGroup& group, const ModifierProfile& profile,
                           const WeightVector& weights, const UtilityParams& params);

nlohmann::json to_json(const WeightVector& w);
WeightVector weights_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ModifierProfile& p);
/// Accepts {C,G,T,E,R} with optional "provenance" object.
ModifierProfile profile_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScoreBreakdown& b);
ScoreBreakdown breakdown_from_json(const nlohmann::json& j);

}  // namespace cortex
