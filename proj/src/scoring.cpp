#include "cortex/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "cortex/error.hpp"
#include "util.hpp"

namespace cortex {

using nlohmann::json;

void UtilityParams::validate() const {
    if (!std::isfinite(k) || k <= 0.0) throw ConfigError("curvature k must be a positive finite number");
}

double WeightVector::for_modifier(Modifier m) const noexcept {
    switch (m) {
        case Modifier::C: return gamma;
        case Modifier::G: return delta;
        case Modifier::T: return theta;
        case Modifier::E: return lambda;
        case Modifier::R: return rho;
    }
    return 0.0;
}

double& WeightVector::for_modifier(Modifier m) noexcept {
    switch (m) {
        case Modifier::C: return gamma;
        case Modifier::G: return delta;
        case Modifier::T: return theta;
        case Modifier::E: return lambda;
        case Modifier::R: break;
    }
    return rho;
}

void WeightVector::validate() const {
    for (double w : {alpha, gamma, delta, theta, lambda, rho}) {
        if (!std::isfinite(w) || w < 0.0) throw ConfigError("weights must be non-negative finite numbers");
    }
    const double s = sum();
    if (std::abs(s - 1.0) > kWeightSumTolerance) {
        throw ConfigError("weights must sum to 1 (alpha+gamma+delta+theta+lambda+rho = " +
                          std::to_string(s) + ")");
    }
}

double* weight_by_name(WeightVector& w, std::string_view name) noexcept {
    if (name == "alpha") return &w.alpha;
    if (name == "gamma") return &w.gamma;
    if (name == "delta") return &w.delta;
    if (name == "theta") return &w.theta;
    if (name == "lambda") return &w.lambda;
    if (name == "rho") return &w.rho;
    return nullptr;
}

std::string_view to_string(Tier t) noexcept {
    switch (t) {
        case Tier::minimal: return "Minimal";
        case Tier::low: return "Low";
        case Tier::moderate: return "Moderate";
        case Tier::high: return "High";
        case Tier::critical: return "Critical";
    }
    return "?";
}

std::optional<Tier> parse_tier(std::string_view text) noexcept {
    for (const auto& band : kTierBands) {
        if (detail::iequals(to_string(band.tier), text)) return band.tier;
    }
    return std::nullopt;
}

double normalize_severity(int likelihood, int impact) {
    if (likelihood < 0 || likelihood > 5 || impact < 0 || impact > 5) {
        throw ConfigError("likelihood and impact must lie in 0..5");
    }
    return static_cast<double>(likelihood * impact) / 25.0;
}

double utility(double severity, const UtilityParams& params) {
    return 1.0 - std::exp(-params.k * severity);
}

WeightedTerms weighted_terms(double utility_value, const ModifierProfile& profile,
                             const WeightVector& weights) {
    return {weights.alpha * utility_value,      weights.gamma * profile[Modifier::C],
            weights.delta * profile[Modifier::G], weights.theta * profile[Modifier::T],
            weights.lambda * profile[Modifier::E], weights.rho * profile[Modifier::R]};
}

double composite(double utility_value, const ModifierProfile& profile, const WeightVector& weights) {
    weights.validate();
    // Clamp only absorbs the <= 1e-9 slack the simplex tolerance admits.
    return std::clamp(weighted_terms(utility_value, profile, weights).sum(), 0.0, 1.0);
}

Tier assign_tier(double composite_value) {
    if (!(composite_value >= 0.0 && composite_value <= 1.0)) {
        throw ConfigError("composite score " + std::to_string(composite_value) + " is outside [0,1]");
    }
    for (auto it = kTierBands.rbegin(); it != kTierBands.rend(); ++it) {
        if (composite_value >= it->lower) return it->tier;
    }
    return Tier::minimal;
}

ScoreBreakdown score_inputs(std::string group_id, int likelihood, int impact,
                            const ModifierProfile& profile, const WeightVector& weights,
                            const UtilityParams& params) {
    params.validate();
    profile.validate();
    ScoreBreakdown b;
    b.group_id = std::move(group_id);
    b.likelihood = likelihood;
    b.impact = impact;
    b.severity = normalize_severity(likelihood, impact);
    b.utility = utility(b.severity, params);
    b.terms = weighted_terms(b.utility, profile, weights);
    b.composite = composite(b.utility, profile, weights);
    b.tier = assign_tier(b.composite);
    return b;
}

ScoreBreakdown score_group(const VulnerabilityGroup& group, const ModifierProfile& profile,
                           const WeightVector& weights, const UtilityParams& params) {
    return score_inputs(group.id, group.curated_likelihood, group.curated_impact, profile, weights, params);
}

json to_json(const WeightVector& w) {
    return {{"alpha", w.alpha}, {"gamma", w.gamma},   {"delta", w.delta},
            {"theta", w.theta}, {"lambda", w.lambda}, {"rho", w.rho}};
}

WeightVector weights_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("weights: expected an object");
    WeightVector w;
    for (const char* name : {"alpha", "gamma", "delta", "theta", "lambda", "rho"}) {
        *weight_by_name(w, name) = detail::get_number(j, name, "weights");
    }
    for (const auto& [key, value] : j.items()) {
        if (weight_by_name(w, key) == nullptr) throw ParseError("weights: unknown key '" + key + "'");
    }
    return w;
}

json to_json(const ModifierProfile& p) {
    json j = json::object();
    json prov = json::object();
    for (auto m : kAllModifiers) {
        j[std::string(to_string(m))] = p[m];
        prov[std::string(to_string(m))] = std::string(to_string(p.provenance[index_of(m)]));
    }
    j["provenance"] = std::move(prov);
    return j;
}

ModifierProfile profile_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("modifiers: expected an object");
    ModifierProfile p;
    for (auto m : kAllModifiers) {
        p.set(m, detail::get_number(j, to_string(m), "modifiers"), Provenance::unspecified);
    }
    if (auto it = j.find("provenance"); it != j.end()) {
        for (auto m : kAllModifiers) {
            if (!it->contains(to_string(m))) continue;
            const auto text = detail::get_string(*it, to_string(m), "modifiers.provenance");
            auto prov = parse_provenance(text);
            if (!prov) throw ParseError("modifiers.provenance: unknown value '" + text + "'");
            p.provenance[index_of(m)] = *prov;
        }
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "provenance" && !parse_modifier(key)) {
            throw ParseError("modifiers: unknown key '" + key + "'");
        }
    }
    return p;
}

json to_json(const ScoreBreakdown& b) {
    return {{"group_id", b.group_id},
            {"L", b.likelihood},
            {"I", b.impact},
            {"severity", b.severity},
            {"utility", b.utility},
            {"weighted_terms",
             {{"alpha_U", b.terms.utility},
              {"gamma_C", b.terms.context},
              {"delta_G", b.terms.governance},
              {"theta_T", b.terms.technical},
              {"lambda_E", b.terms.environment},
              {"rho_R", b.terms.residual}}},
            {"composite", b.composite},
            {"tier", std::string(to_string(b.tier))}};
}

ScoreBreakdown breakdown_from_json(const json& j) {
    ScoreBreakdown b;
    b.group_id = detail::get_string(j, "group_id", "breakdown");
    b.likelihood = static_cast<int>(detail::get_integer(j, "L", "breakdown"));
    b.impact = static_cast<int>(detail::get_integer(j, "I", "breakdown"));
    b.severity = detail::get_number(j, "severity", "breakdown");
    b.utility = detail::get_number(j, "utility", "breakdown");
    const auto& t = detail::require(j, "weighted_terms", "breakdown");
    b.terms = {detail::get_number(t, "alpha_U", "weighted_terms"),
               detail::get_number(t, "gamma_C", "weighted_terms"),
               detail::get_number(t, "delta_G", "weighted_terms"),
               detail::get_number(t, "theta_T", "weighted_terms"),
               detail::get_number(t, "lambda_E", "weighted_terms"),
               detail::get_number(t, "rho_R", "weighted_terms")};
    b.composite = detail::get_number(j, "composite", "breakdown");
    const auto tier = detail::get_string(j, "tier", "breakdown");
    auto parsed = parse_tier(tier);
    if (!parsed) throw ParseError("breakdown.tier: unknown tier '" + tier + "'");
    b.tier = *parsed;
    return b;
}

}  // namespace cortex
