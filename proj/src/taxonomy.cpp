#include "cortex/taxonomy.hpp"

#include <array>
#include <fstream>
#include <set>
#include <utility>

#include "cortex/error.hpp"
#include "util.hpp"

namespace cortex {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kExpectedDomains> kCanonicalDomainNames{
    "Input & Data Layer",
    "Model Behavior",
    "Security & Access Control",
    "Privacy & Compliance",
    "Output & Interface",
    "Infrastructure & Lifecycle",
    "Human Factors & Feedback Loops",
};

}  // namespace

bool VulnerabilityGroup::matches(std::string_view key) const {
    if (detail::iequals(id, key) || detail::iequals(name, key)) return true;
    for (const auto& alias : aliases) {
        if (detail::iequals(alias, key)) return true;
    }
    return false;
}

const VulnerabilityGroup* Taxonomy::find_group(std::string_view key) const {
    // Exact id first so an alias never shadows another group's id.
    for (const auto& g : groups) {
        if (g.id == key) return &g;
    }
    for (const auto& g : groups) {
        if (g.matches(key)) return &g;
    }
    return nullptr;
}

const VulnerabilityGroup& Taxonomy::group(std::string_view key) const {
    if (const auto* g = find_group(key)) return *g;
    throw NotFoundError("unknown vulnerability group '" + std::string(key) + "'");
}

const DomainCategory* Taxonomy::find_domain(std::string_view id_or_name) const {
    for (const auto& d : domains) {
        if (d.id == id_or_name) return &d;
    }
    for (const auto& d : domains) {
        if (detail::iequals(d.id, id_or_name) || detail::iequals(d.name, id_or_name)) return &d;
    }
    return nullptr;
}

std::size_t Taxonomy::distinct_count() const {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.distinct.size();
    return n;
}

long Taxonomy::total_incidents() const {
    long n = 0;
    for (const auto& g : groups) n += g.incident_count;
    return n;
}

std::string Violation::message() const {
    return (severity == Severity::error ? "error: " : "warning: ") + entity + ": " + rule;
}

bool ValidationReport::ok() const {
    for (const auto& v : violations) {
        if (v.severity == Severity::error) return false;
    }
    return true;
}

std::vector<Violation> ValidationReport::errors() const {
    std::vector<Violation> out;
    for (const auto& v : violations) {
        if (v.severity == Severity::error) out.push_back(v);
    }
    return out;
}

std::vector<Violation> ValidationReport::warnings() const {
    std::vector<Violation> out;
    for (const auto& v : violations) {
        if (v.severity == Severity::warning) out.push_back(v);
    }
    return out;
}

ValidationReport validate_taxonomy(const Taxonomy& t) {
    ValidationReport report;
    auto error = [&](std::string entity, std::string rule) {
        report.violations.push_back({Severity::error, std::move(entity), std::move(rule)});
    };

    if (t.source_version.empty()) error("taxonomy", "source version is empty");

    if (t.domains.size() != kExpectedDomains) {
        error("taxonomy",
              std::to_string(t.domains.size()) + " domains, expected " + std::to_string(kExpectedDomains));
    }
    if (t.groups.size() != kExpectedGroups) {
        error("taxonomy", "expected " + std::to_string(kExpectedGroups) + " groups, found " +
                              std::to_string(t.groups.size()));
    }

    std::set<std::string> domain_ids;
    std::set<std::string> domain_names;
    for (const auto& d : t.domains) {
        const std::string entity = "domain '" + d.id + "'";
        if (d.id.empty()) error(entity, "id is empty");
        if (!domain_ids.insert(d.id).second) error(entity, "duplicate domain id");
        if (!domain_names.insert(d.name).second) error(entity, "duplicate domain name '" + d.name + "'");
        bool canonical = false;
        for (auto name : kCanonicalDomainNames) canonical = canonical || name == d.name;
        if (!canonical) error(entity, "name '" + d.name + "' is not one of the seven taxonomy domains");
    }

    std::set<std::string> group_ids;
    std::set<std::pair<std::string, std::string>> distinct_keys;
    for (const auto& g : t.groups) {
        const std::string entity = "group '" + g.id + "'";
        if (g.id.empty()) error(entity, "id is empty");
        if (g.name.empty()) error(entity, "name is empty");
        if (!group_ids.insert(g.id).second) error(entity, "duplicate group id");
        if (domain_ids.count(g.domain) == 0) error(entity, "references unknown domain '" + g.domain + "'");
        if (g.incident_count < 0) error(entity, "incident_count is negative");
        if (g.curated_likelihood < 0 || g.curated_likelihood > 5) {
            error(entity, "likelihood " + std::to_string(g.curated_likelihood) + " outside 0..5");
        }
        if (g.curated_impact < 0 || g.curated_impact > 5) {
            error(entity, "impact " + std::to_string(g.curated_impact) + " outside 0..5");
        }
        if (g.avid_refs.empty()) error(entity, "no AVID cross-reference");
        for (const auto& ref : g.avid_refs) {
            if (ref.empty()) error(entity, "empty AVID reference");
        }
        for (const auto& ref : g.atlas_refs) {
            if (ref.empty() || ref == "---") error(entity, "placeholder ATLAS reference '" + ref + "'");
        }
        if (g.oecd_anchor.empty()) error(entity, "OECD anchor is empty");
        for (const auto& d : g.distinct) {
            if (d.name.empty()) error(entity, "distinct vulnerability with empty name");
            if (d.group_id != g.id) {
                error(entity, "distinct vulnerability '" + d.name + "' is owned by '" + d.group_id + "'");
            }
            if (!distinct_keys.emplace(d.group_id, d.name).second) {
                error(entity, "duplicate distinct vulnerability '" + d.name + "'");
            }
        }
    }

    if (t.distinct_count() < kNominalDistinctMinimum) {
        report.violations.push_back(
            {Severity::warning, "taxonomy",
             std::to_string(t.distinct_count()) + " distinct vulnerabilities, nominal catalogue size is " +
                 std::to_string(kNominalDistinctMinimum) + "+"});
    }
    return report;
}

Taxonomy taxonomy_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("taxonomy: top-level value must be an object");
    Taxonomy t;
    if (doc.contains("version")) t.source_version = detail::get_string(doc, "version", "taxonomy");

    if (doc.contains("domains")) {
        const auto& arr = doc.at("domains");
        if (!arr.is_array()) throw ParseError("taxonomy.domains: expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "taxonomy.domains[" + std::to_string(i) + "]";
            t.domains.push_back({detail::get_string(arr[i], "id", where),
                                 detail::get_string(arr[i], "name", where)});
        }
    }

    if (doc.contains("groups")) {
        const auto& arr = doc.at("groups");
        if (!arr.is_array()) throw ParseError("taxonomy.groups: expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto& item = arr[i];
            const std::string where = "taxonomy.groups[" + std::to_string(i) + "]";
            VulnerabilityGroup g;
            g.id = detail::get_string(item, "id", where);
            g.name = detail::get_string(item, "name", where);
            g.domain = detail::get_string(item, "domain", where);
            g.incident_count = static_cast<int>(detail::get_integer(item, "incident_count", where));
            g.avid_refs = detail::get_string_list(item, "avid", where);
            g.atlas_refs = detail::get_string_list(item, "atlas", where);
            g.oecd_anchor = detail::get_string(item, "oecd", where);
            g.curated_likelihood = static_cast<int>(detail::get_integer(item, "likelihood", where));
            g.curated_impact = static_cast<int>(detail::get_integer(item, "impact", where));
            g.aliases = detail::get_string_list(item, "aliases", where, /*optional=*/true);
            for (auto& name : detail::get_string_list(item, "distinct", where)) {
                g.distinct.push_back({std::move(name), g.id});
            }
            t.groups.push_back(std::move(g));
        }
    }
    return t;
}

json to_json(const Taxonomy& t) {
    json domains = json::array();
    for (const auto& d : t.domains) domains.push_back({{"id", d.id}, {"name", d.name}});
    json groups = json::array();
    for (const auto& g : t.groups) {
        json distinct = json::array();
        for (const auto& d : g.distinct) distinct.push_back(d.name);
        groups.push_back({{"id", g.id},
                          {"name", g.name},
                          {"domain", g.domain},
                          {"incident_count", g.incident_count},
                          {"avid", g.avid_refs},
                          {"atlas", g.atlas_refs},
                          {"oecd", g.oecd_anchor},
                          {"likelihood", g.curated_likelihood},
                          {"impact", g.curated_impact},
                          {"aliases", g.aliases},
                          {"distinct", std::move(distinct)}});
    }
    return {{"version", t.source_version}, {"domains", std::move(domains)}, {"groups", std::move(groups)}};
}

Taxonomy load_taxonomy(std::istream& in) {
    Taxonomy t = taxonomy_from_json(detail::parse_json(in, "taxonomy"));
    const auto report = validate_taxonomy(t);
    if (!report.ok()) {
        std::vector<std::string> problems;
        for (const auto& v : report.errors()) problems.push_back(v.entity + ": " + v.rule);
        throw ValidationError(std::move(problems));
    }
    return t;
}

Taxonomy load_taxonomy(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open taxonomy pack '" + path.string() + "'");
    return load_taxonomy(in);
}

std::vector<VulnerabilityGroup> groups_by_domain(const Taxonomy& t, std::string_view domain) {
    const auto* d = t.find_domain(domain);
    if (d == nullptr) throw NotFoundError("unknown domain '" + std::string(domain) + "'");
    std::vector<VulnerabilityGroup> out;
    for (const auto& g : t.groups) {
        if (g.domain == d->id) out.push_back(g);
    }
    return out;
}

Taxonomy filter_by_domain(const Taxonomy& t, std::string_view domain) {
    Taxonomy out;
    out.source_version = t.source_version;
    out.domains = t.domains;
    out.groups = groups_by_domain(t, domain);
    return out;
}

}  // namespace cortex
