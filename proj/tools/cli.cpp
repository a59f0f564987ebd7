#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cortex/calibration.hpp"
#include "cortex/config.hpp"
#include "cortex/error.hpp"
#include "cortex/reporting.hpp"
#include "cortex/service.hpp"
#include "cortex/simulation.hpp"
#include "cortex/taxonomy.hpp"
#include "cortex/version.hpp"

namespace cortex::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kLowSampleWarning = 1000;

struct Common {
    std::string taxonomy;
    std::string config;
    std::string format = "json";
    std::string out;
    std::string system_type;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, Common& c, const std::vector<std::string>& formats) {
    cmd->add_option("--taxonomy", c.taxonomy, "Taxonomy data pack (default: $CORTEX_DATA_DIR/cortex_taxonomy.json)");
    cmd->add_option("--config", c.config, "Scoring config with weights, modifiers and k");
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
    cmd->add_option("--out", c.out, "Write the document here instead of stdout");
}

void add_scoring(CLI::App* cmd, Common& c) {
    cmd->add_option("--system-type", c.system_type, "Baseline modifiers from a system-type profile");
    cmd->add_option("--set", c.sets, "Point override key=value (C G T E R k alpha gamma delta theta lambda rho L I)")
        ->take_all();
}

Taxonomy load_pack(const Common& c) {
    return load_taxonomy(c.taxonomy.empty() ? data_dir() / "cortex_taxonomy.json" : fs::path(c.taxonomy));
}

/// Config file, then system-type profile, then --set overrides.
ScoringConfig resolve_config(const Common& c, SeverityOverride* severity = nullptr) {
    ScoringConfig cfg = load_scoring_config(c.config.empty() ? data_dir() / "scoring_config.json" : fs::path(c.config));
    if (!c.system_type.empty()) {
        const auto registry = ProfileRegistry::load(data_dir() / "system_profiles.json");
        const auto& p = registry.find(c.system_type);
        cfg.modifiers = p.profile;
        cfg.profile_name = p.id;
    }
    std::vector<Override> overrides;
    for (const auto& s : c.sets) overrides.push_back(parse_override(s));
    const auto sev = apply_overrides(cfg, overrides);
    if (severity) *severity = sev;
    else if (sev.likelihood || sev.impact) throw ConfigError("L and I overrides are only accepted by whatif");
    return cfg;
}

void warn_likelihood(const Taxonomy& t, std::ostream& err) {
    for (const auto& check : check_likelihoods(t, LikelihoodBands{})) {
        if (!check.mismatch()) continue;
        err << "warning: " << check.group_id << ": incident count " << check.incident_count
            << " bands to L=" << check.derived << " but the curated value is L=" << check.curated
            << " (curated value used)\n";
    }
}

void emit(const Common& c, const std::string& document, std::ostream& out) {
    if (c.out.empty()) {
        out << document;
        return;
    }
    std::ofstream file(c.out, std::ios::binary);
    if (!file) throw IoError("cannot open '" + c.out + "' for writing");
    file << document;
    if (!file.flush()) throw IoError("failed writing '" + c.out + "'");
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int cmd_validate(const Common& c, std::ostream& out, std::ostream& err) {
    Taxonomy t;
    try {
        t = load_pack(c);
    } catch (const ValidationError& e) {
        for (const auto& p : e.problems()) err << "error: " << p << "\n";
        return kExitData;
    }
    const auto report = validate_taxonomy(t);
    for (const auto& w : report.warnings()) err << w.message() << "\n";
    warn_likelihood(t, err);
    const auto dir = data_dir();
    const auto bands = load_band_catalogue(dir / "modifier_bands.json");
    const auto profiles = ProfileRegistry::load(dir / "system_profiles.json");
    const auto defaults = load_calibration_defaults(dir / "calibration_defaults.json");
    if (c.format == "json") {
        nlohmann::json warnings = nlohmann::json::array();
        for (const auto& w : report.warnings()) warnings.push_back(w.message());
        emit(c,
             dump({{"ok", report.ok()},
                   {"taxonomy_version", t.source_version},
                   {"domains", t.domains.size()},
                   {"groups", t.groups.size()},
                   {"distinct_vulnerabilities", t.distinct_count()},
                   {"incidents", t.total_incidents()},
                   {"bands", bands.size()},
                   {"profiles", profiles.profiles().size()},
                   {"warnings", std::move(warnings)}}),
             out);
    } else {
        std::ostringstream s;
        s << "taxonomy " << t.source_version << ": " << t.domains.size() << " domains, " << t.groups.size()
          << " groups, " << t.distinct_count() << " distinct vulnerabilities, " << t.total_incidents()
          << " incidents\n"
          << "bands: " << bands.size() << ", profiles: " << profiles.profiles().size()
          << ", likelihood thresholds: " << defaults.likelihood.thresholds.size() << "\n"
          << (report.ok() ? "ok" : "invalid") << "\n";
        emit(c, s.str(), out);
    }
    return report.ok() ? kExitOk : kExitData;
}

int cmd_score(const Common& c, const std::string& order, const std::string& domain, bool tiers, std::ostream& out,
              std::ostream& err) {
    const auto t = load_pack(c);
    warn_likelihood(t, err);
    const auto cfg = resolve_config(c);
    ScorecardOptions opts;
    opts.order = parse_row_order(order);
    if (!domain.empty()) opts.domain = domain;
    const auto sc = generate_scorecard(t, cfg, opts);
    if (tiers) {
        emit(c, dump(to_json(tier_summary(sc))), out);
    } else {
        emit(c, c.format == "csv" ? scorecard_to_csv(sc) : dump(to_json(sc)), out);
    }
    return kExitOk;
}

struct SimulateArgs {
    std::uint64_t samples = 10'000;
    std::uint64_t seed = 42;
    std::string preset = "demo";
    std::string group;
    int workers = 0;
    bool sensitivity = false;
};

int cmd_simulate(const Common& c, const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    const auto t = load_pack(c);
    const auto cfg = resolve_config(c);
    SimulationConfig sim;
    sim.n_samples = a.samples;
    sim.seed = a.seed;
    sim.distributions = ParameterDistributions::preset(a.preset);
    sim.validate();
    if (a.samples < kLowSampleWarning) {
        err << "warning: " << a.samples << " samples; percentile estimates below " << kLowSampleWarning
            << " samples are imprecise\n";
    }
    const RunOptions run{a.workers};
    std::vector<const VulnerabilityGroup*> groups;
    if (a.group.empty()) {
        for (const auto& g : t.groups) groups.push_back(&g);
    } else {
        groups.push_back(&t.group(a.group));
    }
    SimulationDocument doc{std::string(kEngineVersion), t.source_version, cfg, sim, {}};
    nlohmann::json sensitivity = nlohmann::json::array();
    for (const auto* g : groups) {
        doc.groups.push_back(run_monte_carlo(*g, cfg.modifiers, cfg.weights, cfg.params, sim, run));
        if (a.sensitivity) {
            sensitivity.push_back(to_json(sensitivity_analysis(*g, cfg.modifiers, cfg.weights, cfg.params, sim, run)));
        }
    }
    if (c.format == "csv") {
        emit(c, simulation_to_csv(doc.groups), out);
    } else {
        auto j = to_json(doc);
        if (a.sensitivity) j["sensitivity"] = std::move(sensitivity);
        emit(c, dump(j), out);
    }
    return kExitOk;
}

std::string compare_table(const ScoreBreakdown& a, const ScoreBreakdown& b) {
    std::ostringstream s;
    auto row = [&](const std::string& label, const std::string& x, const std::string& y) {
        s << std::left << std::setw(12) << label << std::right << std::setw(10) << x << std::setw(10) << y << "\n";
    };
    auto num = [](double v) {
        std::ostringstream o;
        o << std::fixed << std::setprecision(4) << v;
        return o.str();
    };
    row("", "baseline", "modified");
    row("L", std::to_string(a.likelihood), std::to_string(b.likelihood));
    row("I", std::to_string(a.impact), std::to_string(b.impact));
    row("utility", num(a.utility), num(b.utility));
    row("alpha*U", num(a.terms.utility), num(b.terms.utility));
    row("gamma*C", num(a.terms.context), num(b.terms.context));
    row("delta*G", num(a.terms.governance), num(b.terms.governance));
    row("theta*T", num(a.terms.technical), num(b.terms.technical));
    row("lambda*E", num(a.terms.environment), num(b.terms.environment));
    row("rho*R", num(a.terms.residual), num(b.terms.residual));
    row("composite", num(a.composite), num(b.composite));
    row("tier", std::string(to_string(a.tier)), std::string(to_string(b.tier)));
    const double delta = b.composite - a.composite;
    s << "delta " << (delta >= 0 ? "+" : "") << num(delta);
    if (a.tier != b.tier) s << ", tier " << to_string(a.tier) << " -> " << to_string(b.tier);
    else s << ", tier unchanged";
    s << "\n";
    return s.str();
}

int cmd_whatif(const Common& c, const std::string& group_key, bool compare, std::ostream& out) {
    const auto t = load_pack(c);
    Common base_args = c;
    base_args.sets.clear();
    const auto baseline_cfg = resolve_config(base_args);
    SeverityOverride sev;
    const auto modified_cfg = resolve_config(c, &sev);

    const VulnerabilityGroup* g = group_key.empty() ? nullptr : &t.group(group_key);
    if (!g && !(sev.likelihood && sev.impact)) throw ConfigError("whatif needs --group or both --set L=.. and --set I=..");
    const std::string id = g ? g->id : "custom";
    const int l0 = g ? g->curated_likelihood : *sev.likelihood;
    const int i0 = g ? g->curated_impact : *sev.impact;
    const auto before = score_inputs(id, l0, i0, baseline_cfg.modifiers, baseline_cfg.weights, baseline_cfg.params);
    const auto after = score_inputs(id, sev.likelihood.value_or(l0), sev.impact.value_or(i0), modified_cfg.modifiers,
                                    modified_cfg.weights, modified_cfg.params);
    if (compare) {
        emit(c, id + "\n" + compare_table(before, after), out);
    } else {
        emit(c,
             dump({{"engine_version", std::string(kEngineVersion)},
                   {"taxonomy_version", t.source_version},
                   {"group_id", id},
                   {"baseline", to_json(before)},
                   {"modified", to_json(after)},
                   {"delta", after.composite - before.composite},
                   {"tier_change",
                    {{"from", std::string(to_string(before.tier))},
                     {"to", std::string(to_string(after.tier))},
                     {"changed", before.tier != after.tier}}}}),
             out);
    }
    return kExitOk;
}

int cmd_serve(const Common& c, const std::string& host, int port, std::uint64_t ceiling, const std::string& static_dir,
              std::ostream& err) {
    std::optional<fs::path> tax;
    if (!c.taxonomy.empty()) tax = c.taxonomy;
    auto ctx = ServiceContext::load(data_dir(), tax);
    if (!c.config.empty()) ctx.defaults = load_scoring_config(c.config);
    ctx.sample_ceiling = ceiling;
    Service service(std::move(ctx));
    std::optional<fs::path> mount;
    if (!static_dir.empty()) mount = static_dir;
    err << "cortex " << kEngineVersion << " listening on http://" << host << ":" << port << "\n";
    if (!run_server(service, host, port, mount)) {
        err << "error: cannot listen on " << host << ":" << port << "\n";
        return kExitData;
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"CORTEX AI-vulnerability risk scoring engine", "cortex"};
    app.set_version_flag("--version", std::string(kEngineVersion));
    app.require_subcommand(1);

    Common common;

    auto* validate = app.add_subcommand("validate", "Check the data packs");
    add_common(validate, common, {"text", "json"});

    auto* score = app.add_subcommand("score", "Deterministic scorecard for every group");
    add_common(score, common, {"json", "csv"});
    add_scoring(score, common);
    std::string order = "taxonomy";
    std::string domain;
    bool tiers = false;
    score->add_option("--order", order, "Row order")->check(CLI::IsMember({"taxonomy", "composite"}))->capture_default_str();
    score->add_option("--domain", domain, "Only groups of this domain (id or name)");
    score->add_flag("--tier-summary", tiers, "Print counts per tier instead of rows");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo percentiles and volatility");
    add_common(simulate, common, {"json", "csv"});
    add_scoring(simulate, common);
    SimulateArgs sim;
    simulate->add_option("--samples", sim.samples, "Samples per group")->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
    simulate->add_option("--preset", sim.preset, "Distribution preset")
        ->check(CLI::IsMember({"demo", "layer5"}))
        ->capture_default_str();
    simulate->add_option("--group", sim.group, "Only this group (id or name)");
    simulate->add_option("--workers", sim.workers, "Worker threads, 0 = all cores; never changes results")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    simulate->add_flag("--sensitivity", sim.sensitivity, "Add per-channel sensitivity reports (json only)");

    auto* whatif = app.add_subcommand("whatif", "Score one group before and after point overrides");
    add_common(whatif, common, {"json"});
    add_scoring(whatif, common);
    std::string group;
    bool compare = false;
    whatif->add_option("--group", group, "Group id or name");
    whatif->add_flag("--compare", compare, "Side-by-side text table instead of JSON");

    auto* serve = app.add_subcommand("serve", "Run the JSON HTTP service");
    serve->add_option("--taxonomy", common.taxonomy, "Taxonomy data pack");
    serve->add_option("--config", common.config, "Default scoring config");
    std::string host = "127.0.0.1";
    int port = kDefaultPort;
    std::uint64_t ceiling = kDefaultSampleCeiling;
    std::string static_dir;
    serve->add_option("--host", host, "Bind address")->capture_default_str();
    serve->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535))->capture_default_str();
    serve->add_option("--max-samples", ceiling, "Per-request sample ceiling")->capture_default_str();
    serve->add_option("--static", static_dir, "Serve a built UI bundle from this directory")->check(CLI::ExistingDirectory);

    std::vector<std::string> argv_store{"cortex"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(common, out, err);
        if (score->parsed()) return cmd_score(common, order, domain, tiers, out, err);
        if (simulate->parsed()) return cmd_simulate(common, sim, out, err);
        if (whatif->parsed()) return cmd_whatif(common, group, compare, out);
        if (serve->parsed()) return cmd_serve(common, host, port, ceiling, static_dir, err);
    } catch (const ValidationError& e) {
        for (const auto& p : e.problems()) err << "error: " << p << "\n";
        return kExitData;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace cortex::cli
