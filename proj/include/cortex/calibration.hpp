#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cortex/modifiers.hpp"
#include "cortex/taxonomy.hpp"
#include "json.hpp"

namespace cortex {

// ---------------------------------------------------------------------------
// Likelihood from incident frequency
// ---------------------------------------------------------------------------

/// Cut points on raw incident counts, ordered for scores 5, 4, 3, 2, 1.
/// A count at or above thresholds[0] scores 5; below thresholds[4] scores 0.
struct LikelihoodBands {
    std::array<int, 5> thresholds{36, 25, 18, 12, 4};

    /// Throws ConfigError unless strictly descending with the last >= 1.
    void validate() const;

    bool operator==(const LikelihoodBands&) const = default;
};

int calibrate_likelihood(int incident_count, const LikelihoodBands& bands);

struct LikelihoodCheck {
    std::string group_id;
    int incident_count = 0;
    int curated = 0;
    int derived = 0;

    bool mismatch() const noexcept { return curated != derived; }
};

/// Derived vs curated likelihood for every group, pack order. Curated values
/// stay authoritative; mismatches are reported as warnings by callers.
std::vector<LikelihoodCheck> check_likelihoods(const Taxonomy& t, const LikelihoodBands& bands);

// ---------------------------------------------------------------------------
// Impact from harm categories
// ---------------------------------------------------------------------------

enum class HarmCategory {
    pii_leakage,
    physical_safety,
    regulatory_breach,
    security_compromise,
    reputational_damage,
    systemic_misinformation,
    hallucination,
    overtrust,
    quality_drift,
    prototype_issue,
    internal_drift,
    research_artifact,
};

inline constexpr std::size_t kHarmCategoryCount = 12;

std::string_view to_string(HarmCategory h) noexcept;
/// Tags use the kebab-case spelling, e.g. "pii-leakage". Throws NotFoundError.
HarmCategory parse_harm_category(std::string_view tag);

struct ImpactRules {
    std::map<HarmCategory, int> mapping;

    static ImpactRules defaults();
    /// Every tag mapped exactly once, scores in 1..5.
    void validate() const;
};

/// Worst harm dominates: the maximum mapped impact over `tags`.
int assign_impact(std::span<const HarmCategory> tags, const ImpactRules& rules);
int assign_impact(const std::vector<std::string>& tags, const ImpactRules& rules);

// ---------------------------------------------------------------------------
// Framework bands for the contextual modifiers
// ---------------------------------------------------------------------------

struct BandRange {
    double low = 0.0;
    double high = 0.0;

    bool operator==(const BandRange&) const = default;
};

struct ModifierBand {
    Modifier modifier = Modifier::C;
    std::string framework;
    std::string classification;
    std::vector<BandRange> ranges;
    std::string notes;

    bool operator==(const ModifierBand&) const = default;
};

using BandCatalogue = std::vector<ModifierBand>;

BandCatalogue band_catalogue_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ModifierBand& band);
BandCatalogue load_band_catalogue(std::istream& in);
BandCatalogue load_band_catalogue(const std::filesystem::path& path);

/// Case-insensitive on framework and classification. Throws NotFoundError on
/// no match and ConfigError on more than one.
const ModifierBand& resolve_band(const BandCatalogue& catalogue, Modifier modifier,
                                 std::string_view framework, std::string_view classification);

/// Bands for one modifier and, optionally, one framework (case-insensitive).
std::vector<ModifierBand> filter_bands(const BandCatalogue& catalogue,
                                       std::optional<Modifier> modifier,
                                       std::optional<std::string_view> framework);

/// Picks the lower range below strictness 0.5 and the upper range otherwise,
/// then interpolates low + strictness * (high - low) inside it.
double band_value(const ModifierBand& band, double strictness);

// ---------------------------------------------------------------------------
// System-type default profiles
// ---------------------------------------------------------------------------

struct SystemTypeProfile {
    std::string id;
    std::string system_type;
    std::vector<std::string> aliases;
    ModifierProfile profile;
    std::string framework_basis;

    bool matches(std::string_view key) const;
};

nlohmann::json to_json(const SystemTypeProfile& p);

class ProfileRegistry {
public:
    ProfileRegistry() = default;
    explicit ProfileRegistry(std::vector<SystemTypeProfile> profiles);

    static ProfileRegistry load(std::istream& in);
    static ProfileRegistry load(const std::filesystem::path& path);

    const std::vector<SystemTypeProfile>& profiles() const noexcept { return profiles_; }

    /// Throws NotFoundError listing the known types.
    const SystemTypeProfile& find(std::string_view system_type) const;
    ModifierProfile profile_for(std::string_view system_type) const;

    /// Throws ConfigError if the id or name is already registered.
    void register_profile(SystemTypeProfile profile);

private:
    std::vector<SystemTypeProfile> profiles_;
};

// ---------------------------------------------------------------------------
// Shipped defaults
// ---------------------------------------------------------------------------

struct CalibrationDefaults {
    LikelihoodBands likelihood;
    ImpactRules impact = ImpactRules::defaults();
    double default_strictness = 0.5;
};

CalibrationDefaults load_calibration_defaults(std::istream& in);
CalibrationDefaults load_calibration_defaults(const std::filesystem::path& path);

/// Loads `system_profiles.json` from data_dir().
ModifierProfile profile_for_system_type(std::string_view system_type);

}  // namespace cortex
