#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cortex {

struct DomainCategory {
    std::string id;
    std::string name;

    bool operator==(const DomainCategory&) const = default;
};

struct DistinctVulnerability {
    std::string name;
    std::string group_id;

    bool operator==(const DistinctVulnerability&) const = default;
};

struct VulnerabilityGroup {
    std::string id;
    std::string name;
    std::string domain;  // DomainCategory::id
    int incident_count = 0;
    std::vector<std::string> avid_refs;
    std::vector<std::string> atlas_refs;  // empty when the source lists none
    std::string oecd_anchor;
    int curated_likelihood = 0;
    int curated_impact = 0;
    std::vector<std::string> aliases;  // alternate display names used by other tables
    std::vector<DistinctVulnerability> distinct;

    /// Case-insensitive match on id, name, or any alias.
    bool matches(std::string_view key) const;

    bool operator==(const VulnerabilityGroup&) const = default;
};

/// Immutable after load; share freely across threads.
struct Taxonomy {
    std::string source_version;
    std::vector<DomainCategory> domains;
    std::vector<VulnerabilityGroup> groups;

    const VulnerabilityGroup* find_group(std::string_view key) const;
    /// Throws NotFoundError.
    const VulnerabilityGroup& group(std::string_view key) const;

    const DomainCategory* find_domain(std::string_view id_or_name) const;

    std::size_t distinct_count() const;
    long total_incidents() const;

    bool operator==(const Taxonomy&) const = default;
};

inline constexpr std::size_t kExpectedDomains = 7;
inline constexpr std::size_t kExpectedGroups = 29;
inline constexpr std::size_t kNominalDistinctMinimum = 120;

enum class Severity { error, warning };

struct Violation {
    Severity severity = Severity::error;
    std::string entity;
    std::string rule;

    std::string message() const;
};

struct ValidationReport {
    std::vector<Violation> violations;

    /// True when no error-severity violation is present. Warnings do not
    /// make a pack unusable.
    bool ok() const;
    std::vector<Violation> errors() const;
    std::vector<Violation> warnings() const;
};

ValidationReport validate_taxonomy(const Taxonomy& t);

/// Structural decode only; no invariant checks. Throws ParseError.
Taxonomy taxonomy_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Taxonomy& t);

/// Parses and validates. Throws ParseError on malformed input and
/// ValidationError listing every error-severity violation.
Taxonomy load_taxonomy(std::istream& in);
Taxonomy load_taxonomy(const std::filesystem::path& path);

/// Groups whose domain matches `domain` (id or display name), pack order.
/// Throws NotFoundError for an unknown domain.
std::vector<VulnerabilityGroup> groups_by_domain(const Taxonomy& t, std::string_view domain);

/// Restricts a taxonomy to one domain; domains list is left intact.
Taxonomy filter_by_domain(const Taxonomy& t, std::string_view domain);

}  // namespace cortex
