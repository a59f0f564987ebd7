#include "cortex/service.hpp"

#include <fstream>
#include <utility>

#include "cortex/error.hpp"
#include "cortex/reporting.hpp"
#include "cortex/simulation.hpp"
#include "cortex/version.hpp"
#include "httplib.h"
#include "util.hpp"

namespace cortex {

using nlohmann::json;

ServiceContext ServiceContext::load(const std::filesystem::path& dir,
                                    const std::optional<std::filesystem::path>& taxonomy_path) {
    ServiceContext ctx;
    ctx.taxonomy = load_taxonomy(taxonomy_path.value_or(dir / "cortex_taxonomy.json"));
    ctx.bands = load_band_catalogue(dir / "modifier_bands.json");
    ctx.profiles = ProfileRegistry::load(dir / "system_profiles.json");
    ctx.defaults = load_scoring_config(dir / "scoring_config.json");
    return ctx;
}

namespace {

/// A request the handlers refuse, with the HTTP status to send.
struct RequestError {
    int status;
    std::string message;
    json details = json::array();
};

RequestError field_error(int status, const std::string& field, const std::string& message) {
    return {status, message, json::array({{{"field", field}, {"message", message}}})};
}

json error_body(const RequestError& e) {
    json body = {{"error", e.status == 404 ? "not_found" : e.status == 422 ? "unprocessable" : "bad_request"},
                 {"message", e.message}};
    if (!e.details.empty()) body["details"] = e.details;
    return body;
}

struct ScoreTarget {
    std::string group_id;
    int likelihood = 0;
    int impact = 0;
    ScoringConfig config;
};

json parse_body(const std::string& text) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw field_error(400, "body", "request body is empty");
    }
    json body = json::parse(text, nullptr, false);
    if (body.is_discarded()) throw field_error(400, "body", "request body is not valid JSON");
    if (!body.is_object()) throw field_error(400, "body", "request body must be a JSON object");
    return body;
}

int severity_field(const json& body, const char* key) {
    const auto& v = body.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 5) {
        throw field_error(400, key, std::string(key) + " must be an integer in 0..5");
    }
    return v.get<int>();
}

ScoreTarget resolve_target(const json& body, const ServiceContext& ctx) {
    ScoreTarget t;
    t.config = ctx.defaults;
    json details = json::array();
    auto problem = [&](const std::string& field, const std::string& message) {
        details.push_back({{"field", field}, {"message", message}});
    };

    if (body.contains("group_id")) {
        if (!body["group_id"].is_string()) throw field_error(400, "group_id", "group_id must be a string");
        const auto id = body["group_id"].get<std::string>();
        const auto* g = ctx.taxonomy.find_group(id);
        if (!g) throw field_error(404, "group_id", "unknown vulnerability group '" + id + "'");
        t.group_id = g->id;
        t.likelihood = g->curated_likelihood;
        t.impact = g->curated_impact;
    } else if (!body.contains("L") || !body.contains("I")) {
        throw field_error(400, "group_id", "either group_id or both L and I are required");
    } else {
        t.group_id = "custom";
    }
    try {
        if (body.contains("L")) t.likelihood = severity_field(body, "L");
        if (body.contains("I")) t.impact = severity_field(body, "I");
    } catch (const RequestError& e) {
        details.insert(details.end(), e.details.begin(), e.details.end());
    }

    if (body.contains("system_type")) {
        if (!body["system_type"].is_string()) {
            problem("system_type", "system_type must be a string");
        } else {
            try {
                const auto& p = ctx.profiles.find(body["system_type"].get<std::string>());
                t.config.modifiers = p.profile;
                t.config.profile_name = p.id;
            } catch (const NotFoundError& e) {
                throw field_error(404, "system_type", e.what());
            }
        }
    }
    if (body.contains("profile")) {
        const auto& p = body["profile"];
        if (!p.is_object()) {
            problem("profile", "profile must be an object with C, G, T, E, R");
        } else {
            for (const auto& [key, value] : p.items()) {
                auto m = parse_modifier(key);
                if (!m) {
                    problem("profile." + key, "unknown modifier");
                } else if (!value.is_number() || value.get<double>() < 0.0 || value.get<double>() > 1.0) {
                    problem("profile." + key, "must be a number in [0,1]");
                } else {
                    t.config.modifiers.set(*m, value.get<double>(), Provenance::manual_override);
                }
            }
        }
    }
    if (body.contains("weights")) {
        try {
            t.config.weights = weights_from_json(body["weights"]);
            t.config.weights.validate();
        } catch (const Error& e) {
            problem("weights", e.what());
        }
    }
    if (body.contains("k")) {
        const auto& k = body["k"];
        if (!k.is_number() || !(k.get<double>() > 0.0)) problem("k", "k must be a positive number");
        else t.config.params.k = k.get<double>();
    }
    if (!details.empty()) {
        RequestError e{400, details.size() == 1 ? details[0]["message"].get<std::string>()
                                                : std::to_string(details.size()) + " invalid fields",
                       details};
        throw e;
    }
    return t;
}

ScoreBreakdown breakdown_for(const ScoreTarget& t) {
    return score_inputs(t.group_id, t.likelihood, t.impact, t.config.modifiers, t.config.weights,
                        t.config.params);
}

SimulationConfig resolve_simulation(const json& body, const ServiceContext& ctx) {
    SimulationConfig c;
    if (body.contains("n_samples")) {
        const auto& n = body["n_samples"];
        if (!n.is_number_integer() || n.get<long long>() < 1) {
            throw field_error(400, "n_samples", "n_samples must be a positive integer");
        }
        c.n_samples = n.get<std::uint64_t>();
    }
    if (c.n_samples > ctx.sample_ceiling) {
        throw field_error(422, "n_samples",
                          "n_samples " + std::to_string(c.n_samples) + " exceeds the service ceiling of " +
                              std::to_string(ctx.sample_ceiling) + "; use the CLI for batch runs");
    }
    if (body.contains("seed")) {
        const auto& s = body["seed"];
        if (!s.is_number_unsigned()) throw field_error(400, "seed", "seed must be a non-negative integer");
        c.seed = s.get<std::uint64_t>();
    }
    try {
        if (body.contains("preset")) {
            c.distributions = ParameterDistributions::preset(detail::get_string(body, "preset", "request"));
        }
        if (body.contains("distributions")) {
            json d = body["distributions"];
            if (d.is_object() && !d.contains("preset")) d["preset"] = c.distributions.name;
            c.distributions = distributions_from_json(d);
        }
        if (body.contains("percentiles")) c.percentiles = body["percentiles"].get<std::vector<double>>();
        if (body.contains("histogram_bins")) c.histogram_bins = body["histogram_bins"].get<std::size_t>();
        if (body.contains("kde_points")) c.kde_points = body["kde_points"].get<std::size_t>();
        c.validate();
    } catch (const NotFoundError& e) {
        throw field_error(400, "preset", e.what());
    } catch (const json::exception& e) {
        throw field_error(400, "simulation", e.what());
    } catch (const Error& e) {
        throw field_error(400, "simulation", e.what());
    }
    return c;
}

std::vector<Override> resolve_overrides(const json& body) {
    std::vector<Override> out;
    if (!body.contains("overrides")) return out;
    const auto& o = body["overrides"];
    try {
        if (o.is_object()) {
            for (const auto& [key, value] : o.items()) {
                if (!value.is_number()) throw ConfigError("override " + key + " must be a number");
                out.push_back(make_override(key, value.get<double>()));
            }
        } else if (o.is_array()) {
            for (const auto& item : o) {
                if (!item.is_string()) throw ConfigError("overrides array must hold key=value strings");
                out.push_back(parse_override(item.get<std::string>()));
            }
        } else {
            throw ConfigError("overrides must be an object or an array of key=value strings");
        }
    } catch (const ConfigError& e) {
        throw field_error(400, "overrides", e.what());
    }
    return out;
}

template <typename F>
ApiResponse guarded(F&& f) {
    try {
        return f();
    } catch (const RequestError& e) {
        return {e.status, error_body(e)};
    } catch (const NotFoundError& e) {
        return {404, error_body({404, e.what()})};
    } catch (const Error& e) {
        return {400, error_body({400, e.what()})};
    } catch (const std::exception& e) {
        return {500, {{"error", "internal"}, {"message", e.what()}}};
    }
}

}  // namespace

Service::Service(ServiceContext ctx) : ctx_(std::move(ctx)) {}

ApiResponse Service::stamp(ApiResponse r) const {
    r.body["engine_version"] = std::string(kEngineVersion);
    r.body["taxonomy_version"] = ctx_.taxonomy.source_version;
    return r;
}

ApiResponse Service::health() const { return stamp({200, {{"status", "ok"}}}); }

ApiResponse Service::taxonomy() const { return stamp({200, to_json(ctx_.taxonomy)}); }

ApiResponse Service::score(const std::string& body) const {
    return stamp(guarded([&] {
        const auto target = resolve_target(parse_body(body), ctx_);
        return ApiResponse{200, to_json(breakdown_for(target))};
    }));
}

ApiResponse Service::simulate(const std::string& body) const {
    return stamp(guarded([&] {
        const auto request = parse_body(body);
        const auto target = resolve_target(request, ctx_);
        const auto sim = resolve_simulation(request, ctx_);
        const auto& c = target.config;
        auto summary = simulate_inputs(target.group_id, target.likelihood, target.impact, c.modifiers, c.weights,
                                       c.params, sim);
        json out = to_json(summary);
        if (request.value("sensitivity", false)) {
            out["sensitivity"] = to_json(sensitivity_inputs(target.group_id, target.likelihood, target.impact,
                                                            c.modifiers, c.weights, c.params, sim));
        }
        return ApiResponse{200, std::move(out)};
    }));
}

ApiResponse Service::whatif(const std::string& body) const {
    return stamp(guarded([&] {
        const auto request = parse_body(body);
        const auto base = resolve_target(request, ctx_);
        const auto overrides = resolve_overrides(request);
        ScoreTarget modified = base;
        try {
            const auto sev = apply_overrides(modified.config, overrides);
            if (sev.likelihood) modified.likelihood = *sev.likelihood;
            if (sev.impact) modified.impact = *sev.impact;
        } catch (const ConfigError& e) {
            throw field_error(400, "overrides", e.what());
        }
        const auto before = breakdown_for(base);
        const auto after = breakdown_for(modified);
        return ApiResponse{200,
                           {{"group_id", base.group_id},
                            {"baseline", to_json(before)},
                            {"modified", to_json(after)},
                            {"delta", after.composite - before.composite},
                            {"tier_change",
                             {{"from", std::string(to_string(before.tier))},
                              {"to", std::string(to_string(after.tier))},
                              {"changed", before.tier != after.tier}}}}};
    }));
}

ApiResponse Service::bands(const std::optional<std::string>& modifier,
                           const std::optional<std::string>& framework) const {
    return stamp(guarded([&] {
        std::optional<Modifier> m;
        if (modifier && !modifier->empty()) {
            m = parse_modifier(*modifier);
            if (!m) throw field_error(400, "modifier", "unknown modifier '" + *modifier + "' (expected C, G, T, E or R)");
        }
        std::optional<std::string_view> fw;
        if (framework && !framework->empty()) fw = *framework;
        json list = json::array();
        for (const auto& b : filter_bands(ctx_.bands, m, fw)) list.push_back(to_json(b));
        return ApiResponse{200, {{"bands", std::move(list)}}};
    }));
}

ApiResponse Service::profiles() const {
    json list = json::array();
    for (const auto& p : ctx_.profiles.profiles()) list.push_back(to_json(p));
    return stamp({200, {{"profiles", std::move(list)}}});
}

void bind(httplib::Server& server, const Service& service, const std::optional<std::filesystem::path>& static_dir) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    auto send = [](httplib::Response& res, const ApiResponse& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    auto query = [](const httplib::Request& req, const char* key) -> std::optional<std::string> {
        if (!req.has_param(key)) return std::nullopt;
        return req.get_param_value(key);
    };

    server.Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server.Get("/v1/health", [&, send](const httplib::Request&, httplib::Response& res) { send(res, service.health()); });
    server.Get("/v1/taxonomy", [&, send](const httplib::Request&, httplib::Response& res) { send(res, service.taxonomy()); });
    server.Post("/v1/score", [&, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.score(req.body));
    });
    server.Post("/v1/simulate", [&, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.simulate(req.body));
    });
    server.Post("/v1/whatif", [&, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.whatif(req.body));
    });
    server.Get("/v1/catalogue/bands", [&, send, query](const httplib::Request& req, httplib::Response& res) {
        send(res, service.bands(query(req, "modifier"), query(req, "framework")));
    });
    server.Get("/v1/catalogue/profiles", [&, send](const httplib::Request&, httplib::Response& res) {
        send(res, service.profiles());
    });
    if (static_dir) server.set_mount_point("/", static_dir->string());
}

bool run_server(const Service& service, const std::string& host, int port,
                const std::optional<std::filesystem::path>& static_dir) {
    httplib::Server server;
    bind(server, service, static_dir);
    return server.listen(host, port);
}

}  // namespace cortex
