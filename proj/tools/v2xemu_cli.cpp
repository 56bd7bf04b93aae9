// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: run, sweep, gen-scenario, gnss-diag, validate.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "v2xemu/config.hpp"
#include "v2xemu/errors.hpp"
#include "v2xemu/output.hpp"
#include "v2xemu/pipeline.hpp"
#include "v2xemu/scenario.hpp"
#include "v2xemu/sweep.hpp"
#include "v2xemu/synthetic.hpp"

namespace fs = std::filesystem;
using namespace v2xemu;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
    std::string config;
    std::string trace;
    std::string buildings;
    std::string out;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config, "Emulator config JSON file")->check(CLI::ExistingFile);
    cmd->add_option("--trace", a.trace, "Trace file (JSON lines, one step per line)")->required();
    cmd->add_option("--buildings", a.buildings, "Building polygons JSON file")->required();
    cmd->add_option("--out", a.out, "Output directory (created if missing)")->required();
    cmd->add_option("--seed", a.seed, "Global RNG seed (default 0)");
    cmd->add_option("--workers", a.workers, "Classification worker threads (default 1)")->check(CLI::PositiveNumber);
    cmd->add_option("--set", a.overrides, "Config override key=value with a dotted key, repeatable");
}

EmulatorConfig effective_config(const CommonArgs& a) {
    std::vector<std::string> overrides = a.overrides;
    if (a.seed) {
        overrides.push_back("seed=" + std::to_string(*a.seed));
    }
    if (a.workers) {
        overrides.push_back("workers=" + std::to_string(*a.workers));
    }
    return load_config(a.config, overrides);
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p);
    if (!f) {
        throw std::runtime_error(p.string() + ": cannot open for writing");
    }
    return f;
}

void write_effective_config(const fs::path& dir, const EmulatorConfig& cfg) {
    auto f = open_out(dir / "effective_config.json");
    f << config_to_json(cfg).dump(2) << '\n';
}

int cmd_run(const CommonArgs& a) {
    const EmulatorConfig cfg = effective_config(a);
    auto buildings = load_buildings(a.buildings);
    fs::create_directories(a.out);
    const fs::path out(a.out);
    write_effective_config(out, cfg);
    auto messages = open_out(out / "messages.jsonl");
    auto metrics = open_out(out / "metrics.csv");
    auto ego = open_out(out / "ego_fixes.jsonl");
    metrics << kMetricsHeader << '\n';

    TraceReader reader(a.trace);
    const RunSummary s = run(reader, std::move(buildings), cfg, [&](const ScenarioStep&, const StepResult& r) {
        for (const auto& m : r.messages) {
            messages << message_to_json(m) << '\n';
        }
        metrics << metrics_to_csv(r.metrics) << '\n';
        ego << ego_fix_to_json(r.ego_fix) << '\n';
    });
    std::printf("steps=%zu messages=%zu mean_delay=%.6f s max_delay=%.6f s over_budget=%zu (budget %.3f s)\n",
                s.steps, s.messages, s.mean_delay, s.max_delay, s.over_budget_steps, cfg.effective_budget());
    return kExitOk;
}

std::vector<double> parse_range_list(const std::string& list) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto comma = list.find(',', start);
        const std::string tok = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(parse_range(tok));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

int cmd_sweep(const CommonArgs& a, const std::string& rb_list, const std::string& rv_list) {
    const EmulatorConfig cfg = effective_config(a);
    const auto rb = parse_range_list(rb_list);
    const auto rv = parse_range_list(rv_list);
    const auto buildings = load_buildings(a.buildings);
    const auto steps = load_trace(a.trace);
    fs::create_directories(a.out);
    const fs::path out(a.out);
    write_effective_config(out, cfg);

    Sweeper sweeper(steps, buildings, cfg);
    auto csv = open_out(out / "sweep.csv");
    csv << kSweepHeader << '\n';
    for (double b : rb) {
        for (double v : rv) {
            const SweepRow row = sweeper.evaluate(b, v);
            csv << sweep_row_to_csv(row) << '\n';
            csv.flush();
            std::printf("rb=%g rv=%g mean_delay_top50=%.6f s nlosb_missed=%llu/%llu\n", row.rb, row.rv,
                        row.mean_delay_top50, static_cast<unsigned long long>(row.nlosb_missed),
                        static_cast<unsigned long long>(row.total_reference_nlosb));
        }
    }
    return kExitOk;
}

int cmd_gen(const GridSpec& spec, const std::string& out_dir) {
    const SyntheticScenario sc = generate_synthetic_scenario(spec);
    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    {
        auto f = open_out(out / "buildings.json");
        f << serialize_buildings(sc.buildings) << '\n';
    }
    write_trace(out / "trace.jsonl", sc.steps);
    std::printf("buildings=%zu steps=%zu vehicles=%d\n", sc.buildings.size(), sc.steps.size(), spec.vehicle_count);
    return kExitOk;
}

int cmd_gnss_diag(const std::string& config, const std::vector<std::string>& overrides, double duration,
                  double step, std::uint64_t seed, double window, double peak_threshold) {
    const EmulatorConfig cfg = load_config(config, overrides);
    const StationaryReport total = stationary_rms(cfg.gnss, duration, step, seed);
    std::size_t windows = 0;
    std::size_t with_peak = 0;
    if (window > 0.0 && window <= duration) {
        // independent windows from derived seeds
        windows = static_cast<std::size_t>(duration / window);
        for (std::size_t w = 0; w < windows; ++w) {
            const StationaryReport r = stationary_rms(cfg.gnss, window, step, derive_seed(seed, "window", std::to_string(w)));
            with_peak += r.peak > peak_threshold ? 1 : 0;
        }
    }
    std::printf("sigma=%.4f t_corr=%.4f samples=%zu rms=%.4f analytic_rms=%.4f peak=%.4f\n", cfg.gnss.sigma,
                cfg.gnss.t_corr, total.samples, total.rms, cfg.gnss.sigma, total.peak);
    if (windows > 0) {
        std::printf("windows=%zu window=%.1f s windows_with_peak_over_%.2f_m=%zu (%.1f%%)\n", windows, window,
                    peak_threshold, with_peak, 100.0 * static_cast<double>(with_peak) / static_cast<double>(windows));
    }
    return kExitOk;
}

int cmd_validate(const std::string& trace, const std::string& buildings, const std::string& config) {
    if (!config.empty()) {
        (void)load_config(config, {});
    }
    if (!buildings.empty()) {
        (void)load_buildings(buildings);
    }
    if (!trace.empty()) {
        TraceReader reader(trace);
        while (reader.next()) {
        }
    }
    std::printf("OK\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"v2xemu: real-time V2X link-quality emulator"};
    app.require_subcommand(1);

    CommonArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Emulate every step of a trace; writes messages.jsonl, metrics.csv, "
                                              "ego_fixes.jsonl and effective_config.json");
    add_common(run_cmd, run_args);

    CommonArgs sweep_args;
    std::string rb_list = "inf";
    std::string rv_list = "inf";
    auto* sweep_cmd = app.add_subcommand("sweep", "Run the trace for each (r_b, r_v) pair; writes sweep.csv");
    add_common(sweep_cmd, sweep_args);
    sweep_cmd->add_option("--rb-list", rb_list, "Comma-separated building scanning ranges in m ('inf' = diagonal)");
    sweep_cmd->add_option("--rv-list", rv_list, "Comma-separated vehicle scanning ranges in m ('inf' = diagonal)");

    GridSpec grid;
    std::string gen_out;
    int blocks = 0;
    bool benchmark = false;
    auto* gen_cmd = app.add_subcommand("gen-scenario", "Generate a synthetic Manhattan city; writes buildings.json "
                                                       "and trace.jsonl");
    gen_cmd->add_option("--out", gen_out, "Output directory")->required();
    gen_cmd->add_flag("--benchmark", benchmark, "Start from the 10x10-block, 2000-building, 500-vehicle city");
    gen_cmd->add_option("--blocks", blocks, "Blocks per side (sets both --blocks-x and --blocks-y)");
    gen_cmd->add_option("--blocks-x", grid.blocks_x, "Blocks along x");
    gen_cmd->add_option("--blocks-y", grid.blocks_y, "Blocks along y");
    gen_cmd->add_option("--block-size", grid.block_size, "Block edge length in m");
    gen_cmd->add_option("--street-width", grid.street_width, "Street width in m");
    gen_cmd->add_option("--lots-x", grid.lots_x, "Buildings per block along x");
    gen_cmd->add_option("--lots-y", grid.lots_y, "Buildings per block along y");
    gen_cmd->add_option("--vehicles", grid.vehicle_count, "Vehicle count including the ego");
    gen_cmd->add_option("--duration", grid.duration, "Trace duration in s");
    gen_cmd->add_option("--step", grid.step_period, "Step period in s");
    gen_cmd->add_option("--seed", grid.seed, "Generator seed");

    std::string diag_config;
    std::vector<std::string> diag_overrides;
    double diag_duration = 10000.0;
    double diag_step = 1.0;
    std::uint64_t diag_seed = 0;
    double diag_window = 600.0;
    double diag_peak = 5.0;
    auto* diag_cmd = app.add_subcommand("gnss-diag", "Static-receiver GNSS error statistics");
    diag_cmd->add_option("--config", diag_config, "Emulator config JSON file (uses its gnss section)")
        ->check(CLI::ExistingFile);
    diag_cmd->add_option("--set", diag_overrides, "Config override key=value with a dotted key, repeatable");
    diag_cmd->add_option("--duration", diag_duration, "Simulated time in s");
    diag_cmd->add_option("--step", diag_step, "Sampling period in s");
    diag_cmd->add_option("--seed", diag_seed, "RNG seed");
    diag_cmd->add_option("--window", diag_window, "Window length in s for the peak count (0 disables)");
    diag_cmd->add_option("--peak", diag_peak, "Peak threshold in m");

    std::string val_trace;
    std::string val_buildings;
    std::string val_config;
    auto* val_cmd = app.add_subcommand("validate", "Check input files without running; prints OK or the first "
                                                   "violation");
    val_cmd->add_option("--trace", val_trace, "Trace file to check");
    val_cmd->add_option("--buildings", val_buildings, "Building file to check");
    val_cmd->add_option("--config", val_config, "Config file to check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return kExitUsage;
    }

    try {
        if (*run_cmd) {
            return cmd_run(run_args);
        }
        if (*sweep_cmd) {
            return cmd_sweep(sweep_args, rb_list, rv_list);
        }
        if (*gen_cmd) {
            GridSpec spec = grid;
            if (benchmark) {
                // benchmark values, except where a flag was given explicitly
                const GridSpec bench = benchmark_city_spec(grid.seed);
                auto pick = [&](const char* flag, auto& field, auto value) {
                    if (gen_cmd->count(flag) == 0) {
                        field = value;
                    }
                };
                pick("--blocks-x", spec.blocks_x, bench.blocks_x);
                pick("--blocks-y", spec.blocks_y, bench.blocks_y);
                pick("--block-size", spec.block_size, bench.block_size);
                pick("--street-width", spec.street_width, bench.street_width);
                pick("--lots-x", spec.lots_x, bench.lots_x);
                pick("--lots-y", spec.lots_y, bench.lots_y);
                pick("--vehicles", spec.vehicle_count, bench.vehicle_count);
                pick("--duration", spec.duration, bench.duration);
                pick("--step", spec.step_period, bench.step_period);
            }
            if (blocks > 0) {
                spec.blocks_x = spec.blocks_y = blocks;
            }
            return cmd_gen(spec, gen_out);
        }
        if (*diag_cmd) {
            return cmd_gnss_diag(diag_config, diag_overrides, diag_duration, diag_step, diag_seed, diag_window,
                                 diag_peak);
        }
        if (*val_cmd) {
            return cmd_validate(val_trace, val_buildings, val_config);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
    return kExitUsage;
}
