#include "cortex/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "cortex/error.hpp"
#include "cortex/version.hpp"
#include "util.hpp"

namespace cortex {

using nlohmann::json;

void LikelihoodBands::validate() const {
    for (std::size_t i = 0; i + 1 < thresholds.size(); ++i) {
        if (thresholds[i] <= thresholds[i + 1]) {
            throw ConfigError("likelihood thresholds must be strictly descending");
        }
    }
    if (thresholds.back() < 1) throw ConfigError("lowest likelihood threshold must be >= 1");
}

int calibrate_likelihood(int incident_count, const LikelihoodBands& bands) {
    for (std::size_t i = 0; i < bands.thresholds.size(); ++i) {
        if (incident_count >= bands.thresholds[i]) return 5 - static_cast<int>(i);
    }
    return 0;
}

std::vector<LikelihoodCheck> check_likelihoods(const Taxonomy& t, const LikelihoodBands& bands) {
    std::vector<LikelihoodCheck> out;
    out.reserve(t.groups.size());
    for (const auto& g : t.groups) {
        out.push_back({g.id, g.incident_count, g.curated_likelihood,
                       calibrate_likelihood(g.incident_count, bands)});
    }
    return out;
}

namespace {

constexpr std::array<std::pair<HarmCategory, std::string_view>, kHarmCategoryCount> kHarmNames{{
    {HarmCategory::pii_leakage, "pii-leakage"},
    {HarmCategory::physical_safety, "physical-safety"},
    {HarmCategory::regulatory_breach, "regulatory-breach"},
    {HarmCategory::security_compromise, "security-compromise"},
    {HarmCategory::reputational_damage, "reputational-damage"},
    {HarmCategory::systemic_misinformation, "systemic-misinformation"},
    {HarmCategory::hallucination, "hallucination"},
    {HarmCategory::overtrust, "overtrust"},
    {HarmCategory::quality_drift, "quality-drift"},
    {HarmCategory::prototype_issue, "prototype-issue"},
    {HarmCategory::internal_drift, "internal-drift"},
    {HarmCategory::research_artifact, "research-artifact"},
}};

}  // namespace

std::string_view to_string(HarmCategory h) noexcept {
    for (const auto& [tag, name] : kHarmNames) {
        if (tag == h) return name;
    }
    return "?";
}

HarmCategory parse_harm_category(std::string_view tag) {
    for (const auto& [value, name] : kHarmNames) {
        if (detail::iequals(name, tag)) return value;
    }
    throw NotFoundError("unknown harm category '" + std::string(tag) + "'");
}

ImpactRules ImpactRules::defaults() {
    using H = HarmCategory;
    return ImpactRules{{
        {H::pii_leakage, 5},         {H::physical_safety, 5},     {H::regulatory_breach, 5},
        {H::security_compromise, 4}, {H::reputational_damage, 4}, {H::systemic_misinformation, 4},
        {H::hallucination, 3},       {H::overtrust, 3},           {H::quality_drift, 3},
        {H::prototype_issue, 2},     {H::internal_drift, 2},      {H::research_artifact, 1},
    }};
}

void ImpactRules::validate() const {
    for (const auto& [tag, name] : kHarmNames) {
        auto it = mapping.find(tag);
        if (it == mapping.end()) throw ConfigError("impact rules: no score for '" + std::string(name) + "'");
        if (it->second < 1 || it->second > 5) {
            throw ConfigError("impact rules: score for '" + std::string(name) + "' outside 1..5");
        }
    }
}

int assign_impact(std::span<const HarmCategory> tags, const ImpactRules& rules) {
    if (tags.empty()) throw ConfigError("assign_impact: at least one harm category is required");
    int worst = 0;
    for (auto tag : tags) {
        auto it = rules.mapping.find(tag);
        if (it == rules.mapping.end()) {
            throw NotFoundError("no impact rule for '" + std::string(to_string(tag)) + "'");
        }
        worst = std::max(worst, it->second);
    }
    return worst;
}

int assign_impact(const std::vector<std::string>& tags, const ImpactRules& rules) {
    std::vector<HarmCategory> parsed;
    parsed.reserve(tags.size());
    for (const auto& t : tags) parsed.push_back(parse_harm_category(t));
    return assign_impact(std::span<const HarmCategory>(parsed), rules);
}

// --- bands -----------------------------------------------------------------

BandCatalogue band_catalogue_from_json(const json& doc) {
    if (!doc.is_array()) throw ParseError("band catalogue: top-level value must be an array");
    BandCatalogue out;
    std::vector<std::string> problems;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        const std::string where = "bands[" + std::to_string(i) + "]";
        ModifierBand band;
        const auto letter = detail::get_string(item, "modifier", where);
        const auto m = parse_modifier(letter);
        if (!m) throw ParseError(where + ".modifier: '" + letter + "' is not one of C,G,T,E,R");
        band.modifier = *m;
        band.framework = detail::get_string(item, "framework", where);
        band.classification = detail::get_string(item, "classification", where);
        band.notes = item.contains("notes") ? detail::get_string(item, "notes", where) : "";
        const auto& ranges = detail::require(item, "ranges", where);
        if (!ranges.is_array()) throw ParseError(where + ".ranges: expected an array");
        for (const auto& r : ranges) {
            if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
                throw ParseError(where + ".ranges: each range must be [low, high]");
            }
            BandRange br{r[0].get<double>(), r[1].get<double>()};
            if (!(br.low >= 0.0 && br.low < br.high && br.high <= 1.0)) {
                problems.push_back(where + ": range [" + std::to_string(br.low) + ", " +
                                   std::to_string(br.high) + "] violates 0 <= low < high <= 1");
            }
            band.ranges.push_back(br);
        }
        if (band.ranges.empty()) problems.push_back(where + ": band has no ranges");
        out.push_back(std::move(band));
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
    return out;
}

json to_json(const ModifierBand& band) {
    json ranges = json::array();
    for (const auto& r : band.ranges) ranges.push_back({r.low, r.high});
    return {{"modifier", std::string(to_string(band.modifier))},
            {"framework", band.framework},
            {"classification", band.classification},
            {"ranges", std::move(ranges)},
            {"notes", band.notes}};
}

BandCatalogue load_band_catalogue(std::istream& in) {
    return band_catalogue_from_json(detail::parse_json(in, "band catalogue"));
}

BandCatalogue load_band_catalogue(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open band catalogue '" + path.string() + "'");
    return load_band_catalogue(in);
}

const ModifierBand& resolve_band(const BandCatalogue& catalogue, Modifier modifier,
                                 std::string_view framework, std::string_view classification) {
    const ModifierBand* found = nullptr;
    for (const auto& band : catalogue) {
        if (band.modifier != modifier || !detail::iequals(band.framework, framework) ||
            !detail::iequals(band.classification, classification)) {
            continue;
        }
        if (found != nullptr) {
            throw ConfigError("ambiguous band: more than one entry for " + std::string(to_string(modifier)) +
                              " / " + std::string(framework) + " / " + std::string(classification));
        }
        found = &band;
    }
    if (found == nullptr) {
        throw NotFoundError("no band for " + std::string(to_string(modifier)) + " / " +
                            std::string(framework) + " / " + std::string(classification));
    }
    return *found;
}

std::vector<ModifierBand> filter_bands(const BandCatalogue& catalogue, std::optional<Modifier> modifier,
                                       std::optional<std::string_view> framework) {
    std::vector<ModifierBand> out;
    for (const auto& band : catalogue) {
        if (modifier && band.modifier != *modifier) continue;
        if (framework && !detail::iequals(band.framework, *framework)) continue;
        out.push_back(band);
    }
    return out;
}

double band_value(const ModifierBand& band, double strictness) {
    if (band.ranges.empty()) throw ConfigError("band has no ranges");
    if (!(strictness >= 0.0 && strictness <= 1.0)) throw ConfigError("strictness must lie in [0,1]");
    const BandRange& r = strictness < 0.5 ? band.ranges.front() : band.ranges.back();
    return r.low + strictness * (r.high - r.low);
}

// --- system-type profiles ----------------------------------------------------

bool SystemTypeProfile::matches(std::string_view key) const {
    if (detail::iequals(id, key) || detail::iequals(system_type, key)) return true;
    for (const auto& a : aliases) {
        if (detail::iequals(a, key)) return true;
    }
    return false;
}

json to_json(const SystemTypeProfile& p) {
    json mods = json::object();
    for (auto m : kAllModifiers) mods[std::string(to_string(m))] = p.profile[m];
    return {{"id", p.id},
            {"system_type", p.system_type},
            {"aliases", p.aliases},
            {"modifiers", std::move(mods)},
            {"framework_basis", p.framework_basis}};
}

ProfileRegistry::ProfileRegistry(std::vector<SystemTypeProfile> profiles) {
    for (auto& p : profiles) register_profile(std::move(p));
}

ProfileRegistry ProfileRegistry::load(std::istream& in) {
    const json doc = detail::parse_json(in, "system profiles");
    if (!doc.is_array()) throw ParseError("system profiles: top-level value must be an array");
    std::vector<SystemTypeProfile> profiles;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        const std::string where = "profiles[" + std::to_string(i) + "]";
        SystemTypeProfile p;
        p.id = detail::get_string(item, "id", where);
        p.system_type = detail::get_string(item, "system_type", where);
        p.aliases = detail::get_string_list(item, "aliases", where, true);
        p.framework_basis = item.contains("framework_basis") ? detail::get_string(item, "framework_basis", where) : "";
        const auto& mods = detail::require(item, "modifiers", where);
        for (auto m : kAllModifiers) {
            p.profile.set(m, detail::get_number(mods, to_string(m), where + ".modifiers"),
                          Provenance::system_type_default);
        }
        p.profile.validate();
        profiles.push_back(std::move(p));
    }
    return ProfileRegistry(std::move(profiles));
}

ProfileRegistry ProfileRegistry::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open system profiles '" + path.string() + "'");
    return load(in);
}

const SystemTypeProfile& ProfileRegistry::find(std::string_view system_type) const {
    for (const auto& p : profiles_) {
        if (p.matches(system_type)) return p;
    }
    std::string known;
    for (const auto& p : profiles_) {
        if (!known.empty()) known += ", ";
        known += p.id;
    }
    throw NotFoundError("unknown system type '" + std::string(system_type) + "' (known: " + known + ")");
}

ModifierProfile ProfileRegistry::profile_for(std::string_view system_type) const {
    return find(system_type).profile;
}

void ProfileRegistry::register_profile(SystemTypeProfile profile) {
    profile.profile.validate();
    for (const auto& p : profiles_) {
        if (detail::iequals(p.id, profile.id) || detail::iequals(p.system_type, profile.system_type)) {
            throw ConfigError("system type '" + profile.id + "' is already registered");
        }
    }
    profiles_.push_back(std::move(profile));
}

CalibrationDefaults load_calibration_defaults(std::istream& in) {
    const json doc = detail::parse_json(in, "calibration defaults");
    CalibrationDefaults out;
    if (doc.contains("likelihood_thresholds")) {
        const auto& arr = doc.at("likelihood_thresholds");
        if (!arr.is_array() || arr.size() != 5) {
            throw ParseError("calibration defaults: likelihood_thresholds must hold five integers");
        }
        for (std::size_t i = 0; i < 5; ++i) {
            if (!arr[i].is_number_integer()) {
                throw ParseError("calibration defaults: likelihood_thresholds must hold five integers");
            }
            out.likelihood.thresholds[i] = arr[i].get<int>();
        }
    }
    out.likelihood.validate();
    if (doc.contains("impact_rules")) {
        out.impact.mapping.clear();
        for (const auto& [tag, score] : doc.at("impact_rules").items()) {
            if (!score.is_number_integer()) throw ParseError("impact_rules." + tag + ": expected an integer");
            out.impact.mapping[parse_harm_category(tag)] = score.get<int>();
        }
    }
    out.impact.validate();
    if (doc.contains("default_strictness")) {
        out.default_strictness = detail::get_number(doc, "default_strictness", "calibration defaults");
    }
    return out;
}

CalibrationDefaults load_calibration_defaults(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open calibration defaults '" + path.string() + "'");
    return load_calibration_defaults(in);
}

ModifierProfile profile_for_system_type(std::string_view system_type) {
    return ProfileRegistry::load(data_dir() / "system_profiles.json").profile_for(system_type);
}

}  // namespace cortex
