#include "cortex/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "cortex/error.hpp"
#include "util.hpp"

namespace cortex {

using nlohmann::json;

void ScoringConfig::validate() const {
    weights.validate();
    modifiers.validate();
    params.validate();
}

ScoringConfig default_scoring_config() { return ScoringConfig{}; }

ScoringConfig scoring_config_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("scoring config: expected an object");
    ScoringConfig cfg;
    if (doc.contains("profile_name")) cfg.profile_name = detail::get_string(doc, "profile_name", "scoring config");
    cfg.weights = weights_from_json(detail::require(doc, "weights", "scoring config"));
    cfg.modifiers = profile_from_json(detail::require(doc, "modifiers", "scoring config"));
    for (auto m : kAllModifiers) {
        if (cfg.modifiers.provenance[index_of(m)] == Provenance::unspecified) {
            cfg.modifiers.provenance[index_of(m)] = Provenance::system_type_default;
        }
    }
    cfg.params.k = detail::get_number(doc, "k", "scoring config");
    cfg.validate();
    return cfg;
}

json to_json(const ScoringConfig& cfg) {
    return {{"profile_name", cfg.profile_name},
            {"weights", to_json(cfg.weights)},
            {"modifiers", to_json(cfg.modifiers)},
            {"k", cfg.params.k}};
}

ScoringConfig load_scoring_config(std::istream& in) {
    return scoring_config_from_json(detail::parse_json(in, "scoring config"));
}

ScoringConfig load_scoring_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scoring config '" + path.string() + "'");
    return load_scoring_config(in);
}

namespace {

bool is_known_key(std::string_view key) {
    if (parse_modifier(key)) return true;
    WeightVector probe;
    return key == "k" || key == "L" || key == "I" || weight_by_name(probe, key) != nullptr;
}

int severity_component(const Override& o) {
    double whole = 0.0;
    if (std::modf(o.value, &whole) != 0.0 || whole < 0.0 || whole > 5.0) {
        throw ConfigError("override " + o.key + " must be an integer in 0..5");
    }
    return static_cast<int>(whole);
}

}  // namespace

Override parse_override(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == text.size()) {
        throw ConfigError("override '" + std::string(text) + "' is not of the form key=value");
    }
    const auto key = text.substr(0, eq);
    const auto value = text.substr(eq + 1);
    const auto* end = value.data() + value.size();
    double number = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), end, number);
    if (!is_known_key(key)) return make_override(key, number);  // throws with the key list
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("override " + std::string(key) + ": '" + std::string(value) + "' is not a number");
    }
    return make_override(key, number);
}

Override make_override(std::string_view key, double value) {
    if (!is_known_key(key)) {
        throw ConfigError("unknown override key '" + std::string(key) +
                          "' (expected C, G, T, E, R, k, alpha, gamma, delta, theta, lambda, rho, L, I)");
    }
    if (!std::isfinite(value)) throw ConfigError("override " + std::string(key) + " must be finite");
    return {std::string(key), value};
}

SeverityOverride apply_overrides(ScoringConfig& cfg, const std::vector<Override>& overrides) {
    SeverityOverride severity;
    for (const auto& o : overrides) {
        if (o.key == "L") {
            severity.likelihood = severity_component(o);
        } else if (o.key == "I") {
            severity.impact = severity_component(o);
        } else if (o.key == "k") {
            cfg.params.k = o.value;
        } else if (auto* w = weight_by_name(cfg.weights, o.key)) {
            *w = o.value;
        } else if (auto m = parse_modifier(o.key)) {
            cfg.modifiers.set(*m, o.value, Provenance::manual_override);
        } else {
            throw ConfigError("unknown override key '" + o.key + "'");
        }
    }
    cfg.validate();
    return severity;
}

}  // namespace cortex
