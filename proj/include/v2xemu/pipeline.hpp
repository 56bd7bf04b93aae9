// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "v2xemu/channel.hpp"
#include "v2xemu/geometry.hpp"
#include "v2xemu/gnss.hpp"
#include "v2xemu/scenario.hpp"

namespace v2xemu {

struct EmulatorConfig {
    ScenarioConfig scenario;
    CullingRanges ranges;
    RadioConfig radio;
    GnssConfig gnss;      // errors embedded in received messages
    GnssConfig gnss_ego;  // ego self-fix
    double nlosv_threshold = 1.0;  // m
    unsigned workers = 1;
    std::uint64_t seed = 0;
    double cell_size = 50.0;         // m, grid index cell
    double shadowing_eviction = 5.0; // s
    std::optional<double> budget;    // s; defaults to scenario.step_period
    std::string kernel_backend = "auto";  // auto | scalar | avx2

    /// Throws std::invalid_argument on any violated component invariant.
    void validate() const;
    double effective_budget() const { return budget.value_or(scenario.step_period); }
};

struct ReceivedMessage {
    double step_t = 0.0;
    std::string sender_id;
    GeoPosition reported_position;
    double reported_speed = 0.0;
    double reported_heading = 0.0;
    LinkCondition condition = LinkCondition::LOS;
    double rx_power = 0.0;
};

struct EgoFix {
    double step_t = 0.0;
    GeoPosition exact;
    GeoPosition reported;
};

struct ConditionCounts {
    std::size_t total_in_range = 0;
    std::size_t los = 0;
    std::size_t nlosb = 0;
    std::size_t nlosv = 0;
    std::size_t delivered = 0;
};

/// Timings in seconds. Phases may overlap under parallelism; wall_delay is
/// the authoritative figure.
struct StepMetrics {
    double step_t = 0.0;
    double wall_delay = 0.0;
    ConditionCounts counts;
    double t_cull = 0.0;
    double t_classify = 0.0;
    double t_channel = 0.0;
    double t_gnss = 0.0;
    bool over_budget = false;
};

struct StepResult {
    std::vector<ReceivedMessage> messages;
    StepMetrics metrics;
    EgoFix ego_fix;
    ClassificationResult links;
};

/// The emulation stage. Holds the static scene and the per-link/per-node
/// random state; steps must be fed in timestamp order.
class Emulator {
public:
    Emulator(std::vector<Building> buildings, EmulatorConfig config);

    /// Runs one step end to end and measures its wall-clock delay with a
    /// monotonic clock.
    StepResult process(const ScenarioStep& step);

    const EmulatorConfig& config() const noexcept { return config_; }
    const Classifier& classifier() const noexcept { return classifier_; }

private:
    EmulatorConfig config_;
    Classifier classifier_;
    ShadowingState shadowing_;
    GnssErrorState gnss_remote_;
    GnssErrorState gnss_ego_;
};

struct RunSummary {
    std::size_t steps = 0;
    std::size_t messages = 0;
    std::size_t over_budget_steps = 0;
    double max_delay = 0.0;
    double mean_delay = 0.0;
};

using StepCallback = std::function<void(const ScenarioStep&, const StepResult&)>;

/// Pulls every step from `source` through a fresh Emulator, handing each
/// result to `on_step`. Overruns of the real-time budget are reported, never
/// enforced.
RunSummary run(StepSource& source, std::vector<Building> buildings, const EmulatorConfig& config,
               const StepCallback& on_step);

kernels::Backend resolve_backend(const std::string& name);

}  // namespace v2xemu
