#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cortex/config.hpp"
#include "cortex/scoring.hpp"
#include "cortex/simulation.hpp"
#include "cortex/taxonomy.hpp"
#include "json.hpp"

namespace cortex {

/// Round half up to `decimals` places. A 1e-9 nudge in scaled units keeps
/// values such as 0.7055 (stored as 0.70549999...) rounding upward.
double round_half_up(double x, int decimals = 3);
/// Fixed three-decimal rendering of round_half_up(x), e.g. "0.756".
std::string format_3dp(double x);

enum class RowOrder { taxonomy, composite_desc };

std::string_view to_string(RowOrder o) noexcept;
/// "taxonomy" or "composite". Throws ConfigError.
RowOrder parse_row_order(std::string_view text);

struct ScorecardRow {
    std::string group_id;
    std::string name;
    std::string domain;  // display name
    int likelihood = 0;
    int impact = 0;
    double utility = 0.0;    // unrounded
    double composite = 0.0;  // unrounded
    Tier tier = Tier::minimal;

    int severity_product() const noexcept { return likelihood * impact; }
    bool operator==(const ScorecardRow&) const = default;
};

struct ScorecardMetadata {
    std::string engine_version;
    std::string taxonomy_version;
    ScoringConfig config;
    std::string timestamp;  // ISO 8601 UTC
    RowOrder ordering = RowOrder::taxonomy;

    bool operator==(const ScorecardMetadata&) const = default;
};

struct Scorecard {
    ScorecardMetadata metadata;
    std::vector<ScorecardRow> rows;

    bool operator==(const Scorecard&) const = default;
};

struct ScorecardOptions {
    RowOrder order = RowOrder::taxonomy;
    std::optional<std::string> domain;     // id or display name
    std::optional<std::string> timestamp;  // defaults to now
};

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

Scorecard generate_scorecard(const Taxonomy& taxonomy, const ScoringConfig& config,
                             const ScorecardOptions& options = {});

struct TierCounts {
    std::array<std::size_t, 5> counts{};

    std::size_t operator[](Tier t) const noexcept { return counts[static_cast<std::size_t>(t)]; }
    std::size_t total() const noexcept;
    bool operator==(const TierCounts&) const = default;
};

TierCounts tier_summary(const Scorecard& scorecard);
nlohmann::json to_json(const TierCounts& counts);

/// Header plus one record per row: group_id,name,domain,L,I,LxI,utility,composite,tier.
std::string scorecard_to_csv(const Scorecard& scorecard);
/// Reads the CSV layout back. Numbers keep their three-decimal values and
/// metadata is left default, so CSV -> parse -> CSV is byte-identical.
Scorecard scorecard_from_csv(std::string_view text);

/// Exact values travel alongside the rounded display values, so
/// scorecard_from_json(to_json(s)) == s.
nlohmann::json to_json(const Scorecard& scorecard);
Scorecard scorecard_from_json(const nlohmann::json& doc);

// ---------------------------------------------------------------------------
// Simulation documents
// ---------------------------------------------------------------------------

nlohmann::json to_json(const SimulationSummary& s);
SimulationSummary summary_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ParameterDistributions& d);
ParameterDistributions distributions_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SimulationConfig& c);

/// No timestamp, so identical runs give identical bytes.
struct SimulationDocument {
    std::string engine_version;
    std::string taxonomy_version;
    ScoringConfig config;
    SimulationConfig simulation;
    std::vector<SimulationSummary> groups;
};

nlohmann::json to_json(const SimulationDocument& doc);
SimulationDocument simulation_document_from_json(const nlohmann::json& j);
/// Scalar fields only, one record per group.
std::string simulation_to_csv(const std::vector<SimulationSummary>& summaries);

nlohmann::json to_json(const SensitivityReport& r);

// ---------------------------------------------------------------------------
// Risk register and plot data
// ---------------------------------------------------------------------------

struct RiskRegisterEntry {
    std::string group_id;
    double composite = 0.0;
    Tier tier = Tier::minimal;
    double p50 = 0.0;
    double p90 = 0.0;
    double std_dev = 0.0;
    std::string classification_note;  // analyst-supplied

    bool operator==(const RiskRegisterEntry&) const = default;
};

/// Joins scorecard rows with their simulation summaries by group id. Rows
/// without a summary are skipped. Notes are keyed by group id.
std::vector<RiskRegisterEntry> build_risk_register(const Scorecard& scorecard,
                                                   const std::vector<SimulationSummary>& summaries,
                                                   const std::map<std::string, std::string>& notes = {});
nlohmann::json to_json(const RiskRegisterEntry& e);
std::string risk_register_to_csv(const std::vector<RiskRegisterEntry>& entries);

/// U(s) on `points` evenly spaced severities in [0,1] for each k.
nlohmann::json utility_curves(const std::vector<double>& ks, std::size_t points = 101);

}  // namespace cortex
