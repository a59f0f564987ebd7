// Acceptance run: one line per criterion, nonzero exit if any fails.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "cortex/calibration.hpp"
#include "cortex/config.hpp"
#include "cortex/reporting.hpp"
#include "cortex/simulation.hpp"
#include "cortex/taxonomy.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace cortex;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Runs the cortex binary and returns stdout; `code` receives the exit status.
std::string run_binary(const std::string& args, int& code) {
    const std::string cmd = std::string("\"") + CORTEX_BIN + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        code = -1;
        return {};
    }
    std::string out;
    char buf[65536];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    code = pclose(pipe);
    return out;
}

std::string fmt(double x, int digits = 4) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << x;
    return s.str();
}

Outcome criterion1() {
    int code = 0;
    const auto t0 = Clock::now();
    const auto out = run_binary("score --format json", code);
    const double elapsed = seconds_since(t0);
    if (code != 0) return {false, "cortex score exited " + std::to_string(code)};
    const auto doc = json::parse(out);
    int exact = 0;
    std::string first_bad;
    for (const auto& ref : oracle::kScorecard) {
        for (const auto& row : doc["rows"]) {
            if (row["group_id"] != ref.id) continue;
            const double u = row["utility_exact"].get<double>();
            const double c = row["composite_exact"].get<double>();
            const bool ok = std::abs(u - ref.utility) <= 0.0005 + 1e-9 && std::abs(c - ref.composite) <= 0.0005 + 1e-9 &&
                            format_3dp(u) == fmt(ref.utility, 3) && format_3dp(c) == fmt(ref.composite, 3);
            if (ok) ++exact;
            else if (first_bad.empty()) first_bad = std::string(ref.id);
        }
    }
    const bool pass = exact == 29 && elapsed < 1.0;
    return {pass, std::to_string(exact) + "/29 rows exact at 3 d.p., " + fmt(elapsed, 3) + " s" +
                      (first_bad.empty() ? "" : ", first mismatch " + first_bad)};
}

Outcome criterion2() {
    const auto cfg = default_scoring_config();
    int matched = 0;
    std::map<std::string, int> tiers;
    for (const auto& ref : oracle::kExtremes) {
        const auto b = score_group(test::pack().group(ref.id), cfg.modifiers, cfg.weights, cfg.params);
        const bool ok = format_3dp(b.composite) == fmt(ref.composite, 3) && to_string(b.tier) == ref.tier;
        matched += ok;
        ++tiers[std::string(to_string(b.tier))];
    }
    const bool pass = matched == 10 && tiers["High"] == 5 && tiers["Moderate"] == 3 && tiers["Low"] == 2;
    return {pass, std::to_string(matched) + "/10 composites and tiers; High " + std::to_string(tiers["High"]) +
                      ", Moderate " + std::to_string(tiers["Moderate"]) + ", Low " + std::to_string(tiers["Low"])};
}

std::vector<SimulationSummary> extreme_group_runs(std::uint64_t n, double& elapsed) {
    const auto cfg = default_scoring_config();
    SimulationConfig sim;
    sim.n_samples = n;
    sim.seed = 42;
    sim.distributions = ParameterDistributions::demo();
    std::vector<SimulationSummary> out;
    const auto t0 = Clock::now();
    for (const auto& ref : oracle::kExtremes) {
        out.push_back(run_monte_carlo(test::pack().group(ref.id), cfg.modifiers, cfg.weights, cfg.params, sim));
    }
    elapsed = seconds_since(t0);
    return out;
}

Outcome criterion3(const std::vector<SimulationSummary>& runs, double elapsed) {
    int within = 0;
    std::string misses;
    for (std::size_t j = 0; j < runs.size(); ++j) {
        const auto& ref = oracle::kExtremes[j];
        const auto& s = runs[j];
        const double d50 = std::abs(s.p50 - ref.p50), d90 = std::abs(s.p90 - ref.p90), dsd = std::abs(s.std_dev - ref.sd);
        if (d50 <= 0.004 && d90 <= 0.004 && dsd <= 0.002) {
            ++within;
        } else {
            misses += std::string(misses.empty() ? "" : "; ") + std::string(ref.id) + " p50 " + fmt(s.p50) + " vs " +
                      fmt(ref.p50) + ", p90 " + fmt(s.p90) + " vs " + fmt(ref.p90) + ", sd " + fmt(s.std_dev) +
                      " vs " + fmt(ref.sd);
        }
    }
    const bool pass = within == 10 && elapsed < 30.0;
    return {pass, std::to_string(within) + "/10 groups within tolerance, " + fmt(elapsed, 2) + " s" +
                      (misses.empty() ? "" : " (" + misses + ")")};
}

Outcome criterion4(const std::vector<SimulationSummary>& runs) {
    int within = 0;
    double worst = 0.0;
    for (std::size_t j = 0; j < runs.size(); ++j) {
        const auto& ref = oracle::kExtremes[j];
        const auto& g = test::pack().group(ref.id);
        const auto [eu, vu] = oracle::utility_moments(g.curated_likelihood, g.curated_impact);
        long double v = oracle::kWeights[0] * oracle::kWeights[0] * vu;
        for (int m = 0; m < 5; ++m) {
            const long double ws = oracle::kWeights[m + 1] * oracle::kDemoSigma[m];
            v += ws * ws;
        }
        const double sim_var = runs[j].std_dev * runs[j].std_dev;
        const double rel = std::abs(sim_var - static_cast<double>(v)) / static_cast<double>(v);
        worst = std::max(worst, rel);
        within += rel <= 0.10;
    }
    long double modifier_only = 0.0L;
    for (int m = 0; m < 5; ++m) {
        const long double ws = oracle::kWeights[m + 1] * oracle::kDemoSigma[m];
        modifier_only += ws * ws;
    }
    const double bound = static_cast<double>(std::sqrt(modifier_only));
    int l0 = 0, l0_ok = 0;
    for (std::size_t j = 0; j < runs.size(); ++j) {
        if (test::pack().group(oracle::kExtremes[j].id).curated_likelihood != 0) continue;
        ++l0;
        l0_ok += std::abs(runs[j].std_dev - bound) <= 0.002;
    }
    const bool pass = within == 10 && l0 > 0 && l0_ok == l0;
    return {pass, std::to_string(within) + "/10 variances within 10% (worst " + fmt(100 * worst, 2) + "%), " +
                      std::to_string(l0_ok) + "/" + std::to_string(l0) + " L=0 groups within 0.002 of " +
                      fmt(bound, 5)};
}

Outcome criterion5() {
    const auto f = props::utility_curve_failures();
    return {f.empty(), f.empty() ? "all utility-curve properties hold on a 101-point grid" : f.front()};
}

Outcome criterion6() {
    const auto f = props::rank_invariance_failures(test::pack(), 100, 20250101);
    return {f.empty(), f.empty() ? "100/100 random configurations preserve L*I order" : f.front()};
}

Outcome criterion7() {
    std::vector<std::string> mismatches;
    for (const auto& c : check_likelihoods(test::pack(), load_calibration_defaults(test::data_dir() / "calibration_defaults.json").likelihood)) {
        if (c.mismatch()) {
            mismatches.push_back(c.group_id + " (" + std::to_string(c.incident_count) + " incidents -> L=" +
                                 std::to_string(c.derived) + ", curated L=" + std::to_string(c.curated) + ")");
        }
    }
    const bool pass = mismatches.size() == 1 && mismatches[0].rfind("reinforcement-misalignment", 0) == 0;
    std::string list;
    for (const auto& m : mismatches) list += (list.empty() ? "" : "; ") + m;
    return {pass, std::to_string(29 - mismatches.size()) + "/29 reproduced; mismatches: " + list};
}

Outcome criterion8() {
    int c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    const auto a = run_binary("simulate --seed 42", c1);
    const auto b = run_binary("simulate --seed 42", c2);
    const auto w1 = run_binary("simulate --seed 42 --workers 1", c3);
    const auto w8 = run_binary("simulate --seed 42 --workers 8", c4);
    if (c1 || c2 || c3 || c4) return {false, "cortex simulate failed"};
    const bool pass = !a.empty() && a == b && w1 == w8 && a == w1;
    return {pass, std::string("repeat ") + (a == b ? "identical" : "differs") + ", 1 vs 8 workers " +
                      (w1 == w8 ? "identical" : "differs") + " (" + std::to_string(a.size()) + " bytes)"};
}

Outcome criterion9() {
    const int bad = props::percentile_mismatches(1000, 99);
    return {bad == 0, std::to_string(1000 - std::min(bad, 1000)) + "/1000 random inputs match the brute-force oracle"};
}

Outcome criterion10() {
    const auto& t = test::pack();
    const auto report = validate_taxonomy(t);
    int populated = 0;
    for (const auto& g : t.groups) {
        const bool no_atlas = std::find(oracle::kNoAtlas.begin(), oracle::kNoAtlas.end(), g.id) !=
                              oracle::kNoAtlas.end();
        populated += !g.avid_refs.empty() && g.atlas_refs.empty() == no_atlas && !g.oecd_anchor.empty() &&
                     !g.distinct.empty();
    }
    const auto distinct = t.distinct_count();
    const bool pass = report.ok() && t.domains.size() == 7 && t.groups.size() == 29 && distinct >= 120 &&
                      populated == 29;
    return {pass, std::string(report.ok() ? "validation ok" : "validation errors") + ", " +
                      std::to_string(t.domains.size()) + " domains, " + std::to_string(t.groups.size()) +
                      " groups, " + std::to_string(distinct) + " distinct (need >= 120), " +
                      std::to_string(populated) + "/29 groups with cross-references as referenced"};
}

}  // namespace

int main() {
    double elapsed = 0.0;
    const auto runs = extreme_group_runs(100'000, elapsed);
    const std::array<std::function<Outcome()>, 10> criteria{
        criterion1, criterion2, [&] { return criterion3(runs, elapsed); }, [&] { return criterion4(runs); },
        criterion5, criterion6, criterion7, criterion8, criterion9, criterion10};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1) << ": " << o.detail << "\n";
    }
    std::cout << (10 - failed) << "/10 criteria pass\n";
    return failed == 0 ? 0 : 1;
}
