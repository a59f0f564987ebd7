#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cortex/modifiers.hpp"
#include "cortex/scoring.hpp"
#include "json.hpp"

namespace cortex {

/// Weights, modifier profile and curvature used to score a scorecard.
struct ScoringConfig {
    std::string profile_name = "general-purpose-assistant";
    WeightVector weights;
    ModifierProfile modifiers = ModifierProfile::from_values(0.70, 0.75, 0.60, 0.70, 0.60,
                                                             Provenance::system_type_default);
    UtilityParams params;

    void validate() const;
    bool operator==(const ScoringConfig&) const = default;
};

ScoringConfig default_scoring_config();

/// Document layout: {profile_name?, weights:{...}, modifiers:{C..R}, k}.
ScoringConfig scoring_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ScoringConfig& cfg);
ScoringConfig load_scoring_config(std::istream& in);
ScoringConfig load_scoring_config(const std::filesystem::path& path);

/// One "key=value" point override. Keys: C G T E R k alpha gamma delta theta
/// lambda rho L I.
struct Override {
    std::string key;
    double value = 0.0;

    bool operator==(const Override&) const = default;
};

/// Throws ConfigError on a malformed pair or unknown key.
Override parse_override(std::string_view text);
/// Throws ConfigError on an unknown key or a non-finite value.
Override make_override(std::string_view key, double value);

/// Integer L/I overrides pulled out of an override list.
struct SeverityOverride {
    std::optional<int> likelihood;
    std::optional<int> impact;
};

/// Applies overrides in order on top of `cfg`. Modifier overrides are tagged
/// manual_override. Returns any L/I overrides; the resulting configuration is
/// validated, so a weight set pushed off the simplex throws ConfigError.
SeverityOverride apply_overrides(ScoringConfig& cfg, const std::vector<Override>& overrides);

}  // namespace cortex
