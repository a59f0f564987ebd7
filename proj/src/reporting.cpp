#include "cortex/reporting.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>

#include "cortex/csv.hpp"
#include "cortex/error.hpp"
#include "cortex/version.hpp"
#include "util.hpp"

namespace cortex {

using nlohmann::json;

namespace {

const std::vector<std::string> kScorecardHeader{"group_id", "name",    "domain", "L",   "I",
                                                "LxI",      "utility", "composite", "tier"};

std::string shortest(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

int parse_int_field(const std::string& text, std::string_view what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("csv " + std::string(what) + ": '" + text + "' is not an integer");
    }
    return v;
}

double parse_double_field(const std::string& text, std::string_view what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("csv " + std::string(what) + ": '" + text + "' is not a number");
    }
    return v;
}

Tier tier_field(const std::string& text, std::string_view where) {
    auto t = parse_tier(text);
    if (!t) throw ParseError(std::string(where) + ": unknown tier '" + text + "'");
    return *t;
}

}  // namespace

double round_half_up(double x, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::floor(x * scale + 0.5 + 1e-9) / scale;
}

std::string format_3dp(double x) {
    const auto scaled = static_cast<long long>(std::floor(std::abs(x) * 1000.0 + 0.5 + 1e-9));
    std::string frac = std::to_string(scaled % 1000);
    frac.insert(0, 3 - frac.size(), '0');
    return std::string(x < 0.0 && scaled != 0 ? "-" : "") + std::to_string(scaled / 1000) + "." + frac;
}

std::string_view to_string(RowOrder o) noexcept {
    return o == RowOrder::taxonomy ? "taxonomy" : "composite";
}

RowOrder parse_row_order(std::string_view text) {
    if (detail::iequals(text, "taxonomy")) return RowOrder::taxonomy;
    if (detail::iequals(text, "composite")) return RowOrder::composite_desc;
    throw ConfigError("unknown ordering '" + std::string(text) + "' (expected taxonomy or composite)");
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Scorecard generate_scorecard(const Taxonomy& taxonomy, const ScoringConfig& config,
                             const ScorecardOptions& options) {
    config.validate();
    Scorecard sc;
    sc.metadata.engine_version = std::string(kEngineVersion);
    sc.metadata.taxonomy_version = taxonomy.source_version;
    sc.metadata.config = config;
    sc.metadata.timestamp = options.timestamp.value_or(utc_timestamp());
    sc.metadata.ordering = options.order;

    const auto groups = options.domain ? groups_by_domain(taxonomy, *options.domain) : taxonomy.groups;
    for (const auto& g : groups) {
        const auto b = score_group(g, config.modifiers, config.weights, config.params);
        const auto* d = taxonomy.find_domain(g.domain);
        sc.rows.push_back({g.id, g.name, d ? d->name : g.domain, b.likelihood, b.impact, b.utility,
                           b.composite, b.tier});
    }
    if (options.order == RowOrder::composite_desc) {
        std::stable_sort(sc.rows.begin(), sc.rows.end(),
                         [](const ScorecardRow& a, const ScorecardRow& b) { return a.composite > b.composite; });
    }
    return sc;
}

std::size_t TierCounts::total() const noexcept {
    std::size_t n = 0;
    for (auto c : counts) n += c;
    return n;
}

TierCounts tier_summary(const Scorecard& scorecard) {
    TierCounts t;
    for (const auto& r : scorecard.rows) ++t.counts[static_cast<std::size_t>(r.tier)];
    return t;
}

json to_json(const TierCounts& counts) {
    json j = json::object();
    for (const auto& band : kTierBands) j[std::string(to_string(band.tier))] = counts[band.tier];
    return j;
}

std::string scorecard_to_csv(const Scorecard& scorecard) {
    std::string out = csv::format_row(kScorecardHeader);
    for (const auto& r : scorecard.rows) {
        out += csv::format_row({r.group_id, r.name, r.domain, std::to_string(r.likelihood),
                                std::to_string(r.impact), std::to_string(r.severity_product()),
                                format_3dp(r.utility), format_3dp(r.composite), std::string(to_string(r.tier))});
    }
    return out;
}

Scorecard scorecard_from_csv(std::string_view text) {
    const auto records = csv::parse(text);
    if (records.empty() || records.front() != kScorecardHeader) {
        throw ParseError("scorecard csv: missing or unexpected header row");
    }
    Scorecard sc;
    for (std::size_t n = 1; n < records.size(); ++n) {
        const auto& f = records[n];
        if (f.size() != kScorecardHeader.size()) {
            throw ParseError("scorecard csv record " + std::to_string(n) + ": expected " +
                             std::to_string(kScorecardHeader.size()) + " fields, found " +
                             std::to_string(f.size()));
        }
        ScorecardRow r{f[0], f[1], f[2], parse_int_field(f[3], "L"), parse_int_field(f[4], "I"),
                       parse_double_field(f[6], "utility"), parse_double_field(f[7], "composite"),
                       tier_field(f[8], "scorecard csv")};
        if (parse_int_field(f[5], "LxI") != r.severity_product()) {
            throw ParseError("scorecard csv record " + std::to_string(n) + ": LxI does not equal L*I");
        }
        sc.rows.push_back(std::move(r));
    }
    return sc;
}

json to_json(const Scorecard& scorecard) {
    const auto& m = scorecard.metadata;
    json rows = json::array();
    for (const auto& r : scorecard.rows) {
        rows.push_back({{"group_id", r.group_id},
                        {"name", r.name},
                        {"domain", r.domain},
                        {"L", r.likelihood},
                        {"I", r.impact},
                        {"LxI", r.severity_product()},
                        {"utility", round_half_up(r.utility)},
                        {"composite", round_half_up(r.composite)},
                        {"utility_exact", r.utility},
                        {"composite_exact", r.composite},
                        {"tier", std::string(to_string(r.tier))}});
    }
    return {{"engine_version", m.engine_version},
            {"taxonomy_version", m.taxonomy_version},
            {"metadata",
             {{"profile_name", m.config.profile_name},
              {"weights", to_json(m.config.weights)},
              {"modifiers", to_json(m.config.modifiers)},
              {"k", m.config.params.k},
              {"timestamp", m.timestamp},
              {"ordering", std::string(to_string(m.ordering))}}},
            {"rows", std::move(rows)}};
}

Scorecard scorecard_from_json(const json& doc) {
    Scorecard sc;
    auto& m = sc.metadata;
    m.engine_version = detail::get_string(doc, "engine_version", "scorecard");
    m.taxonomy_version = detail::get_string(doc, "taxonomy_version", "scorecard");
    const auto& meta = detail::require(doc, "metadata", "scorecard");
    m.config.profile_name = detail::get_string(meta, "profile_name", "scorecard.metadata");
    m.config.weights = weights_from_json(detail::require(meta, "weights", "scorecard.metadata"));
    m.config.modifiers = profile_from_json(detail::require(meta, "modifiers", "scorecard.metadata"));
    m.config.params.k = detail::get_number(meta, "k", "scorecard.metadata");
    m.timestamp = detail::get_string(meta, "timestamp", "scorecard.metadata");
    m.ordering = parse_row_order(detail::get_string(meta, "ordering", "scorecard.metadata"));
    const auto& rows = detail::require(doc, "rows", "scorecard");
    if (!rows.is_array()) throw ParseError("scorecard.rows: expected an array");
    for (const auto& r : rows) {
        sc.rows.push_back({detail::get_string(r, "group_id", "scorecard.rows"),
                           detail::get_string(r, "name", "scorecard.rows"),
                           detail::get_string(r, "domain", "scorecard.rows"),
                           static_cast<int>(detail::get_integer(r, "L", "scorecard.rows")),
                           static_cast<int>(detail::get_integer(r, "I", "scorecard.rows")),
                           detail::get_number(r, "utility_exact", "scorecard.rows"),
                           detail::get_number(r, "composite_exact", "scorecard.rows"),
                           tier_field(detail::get_string(r, "tier", "scorecard.rows"), "scorecard.rows")});
    }
    return sc;
}

// ---------------------------------------------------------------------------

json to_json(const SimulationSummary& s) {
    json quantiles = json::array();
    for (const auto& q : s.quantiles) quantiles.push_back({{"q", q.q}, {"value", q.value}});
    return {{"group_id", s.group_id},
            {"n_samples", s.n_samples},
            {"seed", s.seed},
            {"preset", s.preset},
            {"composite", s.composite},
            {"mean", s.mean},
            {"p50", s.p50},
            {"p90", s.p90},
            {"std", s.std_dev},
            {"percentiles", std::move(quantiles)},
            {"histogram", {{"edges", s.histogram.edges}, {"counts", s.histogram.counts}}},
            {"box",
             {{"min", s.box.min},
              {"q1", s.box.q1},
              {"med", s.box.median},
              {"q3", s.box.q3},
              {"max", s.box.max},
              {"whisker_low", s.box.whisker_low},
              {"whisker_high", s.box.whisker_high},
              {"outliers", s.box.outliers}}},
            {"kde", {{"grid", s.kde.grid}, {"density", s.kde.density}, {"bandwidth", s.kde.bandwidth}}},
            {"tiers", {{"p50", std::string(to_string(s.tier_p50))}, {"p90", std::string(to_string(s.tier_p90))}}}};
}

SimulationSummary summary_from_json(const json& j) {
    constexpr std::string_view where = "simulation summary";
    SimulationSummary s;
    s.group_id = detail::get_string(j, "group_id", where);
    s.n_samples = detail::require(j, "n_samples", where).get<std::uint64_t>();
    s.seed = detail::require(j, "seed", where).get<std::uint64_t>();
    s.preset = detail::get_string(j, "preset", where);
    s.composite = detail::get_number(j, "composite", where);
    s.mean = detail::get_number(j, "mean", where);
    s.p50 = detail::get_number(j, "p50", where);
    s.p90 = detail::get_number(j, "p90", where);
    s.std_dev = detail::get_number(j, "std", where);
    for (const auto& q : detail::require(j, "percentiles", where)) {
        s.quantiles.push_back({detail::get_number(q, "q", where), detail::get_number(q, "value", where)});
    }
    const auto& h = detail::require(j, "histogram", where);
    s.histogram.edges = detail::require(h, "edges", where).get<std::vector<double>>();
    s.histogram.counts = detail::require(h, "counts", where).get<std::vector<std::size_t>>();
    const auto& b = detail::require(j, "box", where);
    s.box.min = detail::get_number(b, "min", where);
    s.box.q1 = detail::get_number(b, "q1", where);
    s.box.median = detail::get_number(b, "med", where);
    s.box.q3 = detail::get_number(b, "q3", where);
    s.box.max = detail::get_number(b, "max", where);
    s.box.whisker_low = detail::get_number(b, "whisker_low", where);
    s.box.whisker_high = detail::get_number(b, "whisker_high", where);
    s.box.outliers = detail::require(b, "outliers", where).get<std::vector<double>>();
    const auto& k = detail::require(j, "kde", where);
    s.kde.grid = detail::require(k, "grid", where).get<std::vector<double>>();
    s.kde.density = detail::require(k, "density", where).get<std::vector<double>>();
    s.kde.bandwidth = detail::get_number(k, "bandwidth", where);
    const auto& t = detail::require(j, "tiers", where);
    s.tier_p50 = tier_field(detail::get_string(t, "p50", where), where);
    s.tier_p90 = tier_field(detail::get_string(t, "p90", where), where);
    return s;
}

json to_json(const ParameterDistributions& d) {
    json mods = json::object();
    for (auto m : kAllModifiers) {
        json entry = {{"sigma", d[m].sigma}};
        entry["mean"] = d[m].mean ? json(*d[m].mean) : json(nullptr);
        mods[std::string(to_string(m))] = std::move(entry);
    }
    return {{"name", d.name}, {"li_band", d.li_band}, {"modifiers", std::move(mods)}};
}

ParameterDistributions distributions_from_json(const json& j) {
    constexpr std::string_view where = "distributions";
    ParameterDistributions d;
    if (j.contains("preset")) d = ParameterDistributions::preset(detail::get_string(j, "preset", where));
    if (j.contains("name")) d.name = detail::get_string(j, "name", where);
    if (j.contains("li_band")) d.li_band = detail::get_number(j, "li_band", where);
    if (j.contains("modifiers")) {
        const auto& mods = j.at("modifiers");
        if (!mods.is_object()) throw ParseError("distributions.modifiers: expected an object");
        for (const auto& [key, value] : mods.items()) {
            auto m = parse_modifier(key);
            if (!m) throw ParseError("distributions.modifiers: unknown modifier '" + key + "'");
            if (value.contains("sigma")) d[*m].sigma = detail::get_number(value, "sigma", where);
            if (value.contains("mean")) {
                const auto& mean = value.at("mean");
                if (mean.is_null()) d[*m].mean.reset();
                else d[*m].mean = detail::get_number(value, "mean", where);
            }
        }
    }
    return d;
}

json to_json(const SimulationConfig& c) {
    return {{"n_samples", c.n_samples},
            {"seed", c.seed},
            {"percentiles", c.percentiles},
            {"distributions", to_json(c.distributions)},
            {"histogram_bins", c.histogram_bins},
            {"kde_points", c.kde_points}};
}

json to_json(const SimulationDocument& doc) {
    json groups = json::array();
    for (const auto& s : doc.groups) groups.push_back(to_json(s));
    return {{"engine_version", doc.engine_version},
            {"taxonomy_version", doc.taxonomy_version},
            {"scoring", to_json(doc.config)},
            {"simulation", to_json(doc.simulation)},
            {"groups", std::move(groups)}};
}

SimulationDocument simulation_document_from_json(const json& j) {
    SimulationDocument doc;
    doc.engine_version = detail::get_string(j, "engine_version", "simulation document");
    doc.taxonomy_version = detail::get_string(j, "taxonomy_version", "simulation document");
    doc.config = scoring_config_from_json(detail::require(j, "scoring", "simulation document"));
    const auto& sim = detail::require(j, "simulation", "simulation document");
    doc.simulation.n_samples = detail::require(sim, "n_samples", "simulation").get<std::uint64_t>();
    doc.simulation.seed = detail::require(sim, "seed", "simulation").get<std::uint64_t>();
    doc.simulation.percentiles = detail::require(sim, "percentiles", "simulation").get<std::vector<double>>();
    doc.simulation.distributions = distributions_from_json(detail::require(sim, "distributions", "simulation"));
    doc.simulation.histogram_bins = detail::require(sim, "histogram_bins", "simulation").get<std::size_t>();
    doc.simulation.kde_points = detail::require(sim, "kde_points", "simulation").get<std::size_t>();
    for (const auto& g : detail::require(j, "groups", "simulation document")) {
        doc.groups.push_back(summary_from_json(g));
    }
    return doc;
}

std::string simulation_to_csv(const std::vector<SimulationSummary>& summaries) {
    std::string out = csv::format_row({"group_id", "n_samples", "seed", "preset", "composite", "mean", "p50",
                                       "p90", "std", "min", "q1", "median", "q3", "max", "tier_p50",
                                       "tier_p90"});
    for (const auto& s : summaries) {
        out += csv::format_row({s.group_id, std::to_string(s.n_samples), std::to_string(s.seed), s.preset,
                                shortest(s.composite), shortest(s.mean), shortest(s.p50), shortest(s.p90),
                                shortest(s.std_dev), shortest(s.box.min), shortest(s.box.q1),
                                shortest(s.box.median), shortest(s.box.q3), shortest(s.box.max),
                                std::string(to_string(s.tier_p50)), std::string(to_string(s.tier_p90))});
    }
    return out;
}

json to_json(const SensitivityReport& r) {
    json channels = json::array();
    for (const auto& c : r.channels) {
        channels.push_back({{"channel", c.channel},
                            {"weight", c.weight},
                            {"sigma", c.sigma},
                            {"analytic", c.analytic},
                            {"empirical", c.empirical},
                            {"analytic_share", c.analytic_share},
                            {"empirical_share", c.empirical_share}});
    }
    return {{"group_id", r.group_id},
            {"simulated_std", r.simulated_std},
            {"analytic_std", r.analytic_std},
            {"channels", std::move(channels)}};
}

// ---------------------------------------------------------------------------

std::vector<RiskRegisterEntry> build_risk_register(const Scorecard& scorecard,
                                                   const std::vector<SimulationSummary>& summaries,
                                                   const std::map<std::string, std::string>& notes) {
    std::vector<RiskRegisterEntry> out;
    for (const auto& row : scorecard.rows) {
        auto it = std::find_if(summaries.begin(), summaries.end(),
                               [&](const SimulationSummary& s) { return s.group_id == row.group_id; });
        if (it == summaries.end()) continue;
        RiskRegisterEntry e{row.group_id, row.composite, assign_tier(row.composite), it->p50, it->p90,
                            it->std_dev, {}};
        if (auto n = notes.find(row.group_id); n != notes.end()) e.classification_note = n->second;
        out.push_back(std::move(e));
    }
    return out;
}

json to_json(const RiskRegisterEntry& e) {
    return {{"group_id", e.group_id}, {"composite", e.composite},
            {"tier", std::string(to_string(e.tier))},
            {"p50", e.p50}, {"p90", e.p90}, {"std", e.std_dev},
            {"classification_note", e.classification_note}};
}

std::string risk_register_to_csv(const std::vector<RiskRegisterEntry>& entries) {
    std::string out = csv::format_row({"group_id", "composite", "tier", "p50", "p90", "std", "classification_note"});
    for (const auto& e : entries) {
        out += csv::format_row({e.group_id, format_3dp(e.composite), std::string(to_string(e.tier)),
                                shortest(e.p50), shortest(e.p90), shortest(e.std_dev), e.classification_note});
    }
    return out;
}

json utility_curves(const std::vector<double>& ks, std::size_t points) {
    if (points < 2) throw ConfigError("utility curves need at least two points");
    json curves = json::array();
    std::vector<double> grid(points);
    for (std::size_t p = 0; p < points; ++p) grid[p] = static_cast<double>(p) / static_cast<double>(points - 1);
    for (double k : ks) {
        UtilityParams params{k};
        params.validate();
        std::vector<double> u(points);
        for (std::size_t p = 0; p < points; ++p) u[p] = utility(grid[p], params);
        curves.push_back({{"k", k}, {"utility", std::move(u)}});
    }
    return {{"severity", std::move(grid)}, {"curves", std::move(curves)}};
}

}  // namespace cortex
