// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "v2xemu/channel.hpp"
#include "v2xemu/geometry.hpp"
#include "v2xemu/gnss.hpp"
#include "v2xemu/output.hpp"
#include "v2xemu/pipeline.hpp"
#include "v2xemu/sweep.hpp"
#include "v2xemu/synthetic.hpp"

using namespace v2xemu;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double lag_autocorrelation(const std::vector<double>& x, std::size_t k) {
    double m = 0.0;
    for (double v : x) {
        m += v;
    }
    m /= static_cast<double>(x.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        den += (x[i] - m) * (x[i] - m);
        if (i + k < x.size()) {
            num += (x[i] - m) * (x[i + k] - m);
        }
    }
    return num / den;
}

// Shared benchmark city, generated once.
const SyntheticScenario& city() {
    static const SyntheticScenario sc = generate_synthetic_scenario(benchmark_city_spec(0));
    return sc;
}

Outcome formula_fidelity() {
    // Reference values: 40-digit evaluation of the published formulas.
    struct Case {
        const char* name;
        double got;
        double want;
    };
    const double rf = fresnel_radius(50, 50, 5.9);
    const double h_at_07 = 0.7 * (1.0 + 1e-13) * rf / std::numbers::sqrt2;
    const Case cases[] = {
        {"los(100)", path_loss_los(100, 5.9), 86.19950661188702},
        {"nlosb(100)", path_loss_nlosb(100, 5.9), 111.41910302003653},
        {"nlosv(H<=0)", nlosv_extra_loss(1.0, 1.6, 50, 50, 5.9), 0.0},
        {"nlosv(nu=0.7+)", nlosv_extra_loss(h_at_07, 0.0, 50, 50, 5.9), 11.840750293771823},
        {"nlosv(H=0.5)", nlosv_extra_loss(2.0, 1.5, 50, 50, 5.9), 0.0},
    };
    double worst = 0.0;
    std::string bad;
    for (const auto& c : cases) {
        const double err = std::fabs(c.got - c.want);
        worst = std::max(worst, err);
        if (!(err <= 1e-9)) {
            bad += std::string(" ") + c.name;
        }
    }
    return {bad.empty(), "max |error| " + fmt("%.3g", worst) + " dB" + (bad.empty() ? "" : ", off:" + bad)};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(20260101);
    std::size_t links = 0, mismatches = 0, nlosv = 0, nlosb = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto scene = oracle::random_scene(rng, 50, 100);
        const std::vector<ScenarioStep> one{scene.step};
        const double diag = scenario_diagonal(scene.buildings, one);
        Classifier cls(scene.buildings);
        const auto got = cls.classify(scene.step, {diag, diag}, scene.threshold);
        const auto want = oracle::brute_force_classify(scene.step, scene.buildings, scene.threshold);
        if (got.links.size() != want.size()) {
            ++mismatches;
            continue;
        }
        for (std::size_t i = 0; i < want.size(); ++i) {
            ++links;
            const auto& g = got.links[i];
            const bool has_blocker = g.blocker_id.has_value();
            const bool want_blocker = want[i].second.condition != LinkCondition::LOS;
            if (g.target_id != want[i].first || g.condition != want[i].second.condition ||
                has_blocker != want_blocker) {
                ++mismatches;
            }
            nlosb += g.condition == LinkCondition::NLOSb;
            nlosv += g.condition == LinkCondition::NLOSv;
        }
    }
    return {mismatches == 0, std::to_string(links) + " links (" + std::to_string(nlosb) + " NLOSb, " +
                                 std::to_string(nlosv) + " NLOSv), " + std::to_string(mismatches) + " mismatches"};
}

Outcome culling_monotonicity() {
    const auto& sc = city();
    const double diag = scenario_diagonal(sc.buildings, sc.steps);
    const std::vector<double> rbs{100, 300, 500, 900, diag};
    Classifier cls(sc.buildings);
    std::vector<std::uint64_t> missed(rbs.size(), 0);
    std::uint64_t reference = 0;
    std::size_t violations = 0;
    for (const auto& step : sc.steps) {
        std::vector<std::vector<std::string>> sets;
        for (double rb : rbs) {
            const auto r = cls.classify(step, {rb, diag}, 1.0);
            auto& s = sets.emplace_back();
            for (const auto& l : r.links) {
                if (l.condition == LinkCondition::NLOSb) {
                    s.push_back(l.target_id);
                }
            }
        }
        for (std::size_t i = 1; i < sets.size(); ++i) {
            if (!std::includes(sets[i].begin(), sets[i].end(), sets[i - 1].begin(), sets[i - 1].end())) {
                ++violations;
            }
        }
        reference += sets.back().size();
        for (std::size_t i = 0; i < rbs.size(); ++i) {
            missed[i] += sets.back().size() - sets[i].size();
        }
    }
    bool non_increasing = true;
    std::string fractions;
    for (std::size_t i = 0; i < rbs.size(); ++i) {
        const double f = reference > 0 ? static_cast<double>(missed[i]) / static_cast<double>(reference) : 0.0;
        fractions += (i ? " " : "") + fmt("%.4f", f);
        if (i > 0 && missed[i] > missed[i - 1]) {
            non_increasing = false;
        }
    }
    return {violations == 0 && non_increasing && reference > 0,
            "missed NLOSb fraction at r_b=100/300/500/900/diag: " + fractions + "; nesting violations " +
                std::to_string(violations)};
}

struct SweepResults {
    SweepRow culled;
    SweepRow full;
};

const SweepResults& benchmark_sweep() {
    static const SweepResults res = [] {
        const auto& sc = city();
        EmulatorConfig cfg;
        Sweeper sw(sc.steps, sc.buildings, cfg);
        SweepResults r;
        r.full = sw.evaluate(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
        r.culled = sw.evaluate(300, 300);
        return r;
    }();
    return res;
}

Outcome speedup() {
    const auto& s = benchmark_sweep();
    const double ratio = s.full.mean_compute / s.culled.mean_compute;
    return {ratio >= 5.0, "mean classify+channel " + fmt("%.3f", s.full.mean_compute * 1e3) + " ms (diag) vs " +
                              fmt("%.3f", s.culled.mean_compute * 1e3) + " ms (300/300), ratio " +
                              fmt("%.1f", ratio) + "x"};
}

Outcome gnss_statistics() {
    GnssErrorState state({2.32, 10.0}, 5);
    std::vector<double> mu;
    mu.reserve(100000);
    for (int k = 0; k < 100000; ++k) {
        mu.push_back(state.update("node", static_cast<double>(k)).mu);
    }
    double worst = 0.0;
    for (std::size_t k = 1; k <= 30; ++k) {
        worst = std::max(worst, std::fabs(lag_autocorrelation(mu, k) - std::exp(-static_cast<double>(k) / 10.0)));
    }
    std::size_t windows = 0, with_peak = 0;
    for (std::size_t start = 0; start + 600 <= mu.size(); start += 600) {
        ++windows;
        double peak = 0.0;
        for (std::size_t i = start; i < start + 600; ++i) {
            const Position off = apply_error(Position{}, mu[i], 0.0);
            peak = std::max(peak, std::hypot(off.x, off.y));
        }
        with_peak += peak > 5.0;
    }
    const double share = static_cast<double>(with_peak) / static_cast<double>(windows);
    return {worst <= 0.05 && share >= 0.5, "max autocorrelation deviation (k<=30) " + fmt("%.4f", worst) +
                                               "; windows with a >5 m peak " + std::to_string(with_peak) + "/" +
                                               std::to_string(windows)};
}

Outcome shadowing_statistics() {
    ShadowingState s(13, 3.0, 10.0);
    std::vector<double> x;
    x.reserve(100000);
    for (int k = 0; k < 100000; ++k) {
        x.push_back(s.update("link", {10.0 * k, 0.0}, {0.0, 100.0}, 0.0));
    }
    double m = 0.0;
    for (double v : x) {
        m += v;
    }
    m /= static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x) {
        var += (v - m) * (v - m);
    }
    const double sd = std::sqrt(var / static_cast<double>(x.size()));
    const double r1 = lag_autocorrelation(x, 1);
    return {std::fabs(sd - 3.0) <= 0.06 && std::fabs(r1 - std::exp(-1.0)) <= 0.02,
            "std " + fmt("%.4f", sd) + " dB, lag-1 autocorrelation " + fmt("%.4f", r1) + " (target " +
                fmt("%.4f", std::exp(-1.0)) + ")"};
}

Outcome determinism_and_filter() {
    const auto& sc = city();
    auto run_once = [&](unsigned workers) {
        EmulatorConfig cfg;
        cfg.seed = 7;
        cfg.workers = workers;
        std::string out;
        VectorStepSource src(sc.steps);
        run(src, sc.buildings, cfg, [&](const ScenarioStep&, const StepResult& r) {
            for (const auto& msg : r.messages) {
                out += message_to_json(msg);
                out += '\n';
            }
        });
        return out;
    };
    bool identical = true;
    std::size_t below = 0, lines = 0;
    std::string first;
    for (unsigned workers : {1u, 4u}) {
        const std::string a = run_once(workers);
        const std::string b = run_once(workers);
        identical = identical && a == b && (first.empty() || a == first);
        if (first.empty()) {
            first = a;
        }
        std::size_t pos = 0;
        while (pos < a.size()) {
            const std::size_t nl = a.find('\n', pos);
            const auto j = nlohmann::json::parse(a.substr(pos, nl - pos));
            ++lines;
            below += j.at("rx_power").get<double>() < -82.0;
            pos = nl + 1;
        }
    }
    return {identical && below == 0 && lines > 0,
            std::string(identical ? "byte-identical" : "DIFFERENT") + " across repeated runs at workers 1 and 4; " +
                std::to_string(lines) + " messages checked, " + std::to_string(below) + " below -82 dBm"};
}

Outcome realtime_budget() {
    const auto& s = benchmark_sweep();
    return {s.culled.mean_delay_top50 < 1.0, "mean_delay_top50 at 300/300 = " +
                                                 fmt("%.4f", s.culled.mean_delay_top50 * 1e3) + " ms, max " +
                                                 fmt("%.4f", s.culled.max_delay * 1e3) + " ms"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> check;
    };
    const Criterion criteria[] = {
        {1, "formula fidelity", formula_fidelity},
        {2, "classification oracle equivalence", oracle_equivalence},
        {3, "culling monotonicity", culling_monotonicity},
        {4, "speedup trend", speedup},
        {5, "GNSS statistics", gnss_statistics},
        {6, "shadowing statistics", shadowing_statistics},
        {7, "filter soundness and determinism", determinism_and_filter},
        {8, "real-time budget reporting", realtime_budget},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
