// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include "v2xemu/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "v2xemu/errors.hpp"

namespace v2xemu {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

// Path-loss formulas are undefined at zero distance; co-located antennas are
// evaluated at 1 m.
constexpr double kMinLinkDistance = 1.0;

}  // namespace

kernels::Backend resolve_backend(const std::string& name) {
    if (name == "auto") {
        return kernels::default_backend();
    }
    if (name == "scalar") {
        return kernels::Backend::Scalar;
    }
    if (name == "avx2") {
        return kernels::Backend::Avx2;
    }
    throw std::invalid_argument("unknown kernel backend '" + name + "' (expected auto, scalar or avx2)");
}

void EmulatorConfig::validate() const {
    if (!(scenario.step_period > 0.0)) {
        throw std::invalid_argument("scenario.step_period must be > 0");
    }
    ranges.validate();
    radio.validate();
    gnss.validate();
    gnss_ego.validate();
    if (!(nlosv_threshold > 0.0)) {
        throw std::invalid_argument("nlosv_threshold must be > 0");
    }
    if (workers < 1) {
        throw std::invalid_argument("workers must be >= 1");
    }
    if (!(cell_size > 0.0)) {
        throw std::invalid_argument("cell_size must be > 0");
    }
    if (!(shadowing_eviction > 0.0)) {
        throw std::invalid_argument("shadowing_eviction must be > 0");
    }
    if (budget && !(*budget > 0.0)) {
        throw std::invalid_argument("budget must be > 0");
    }
    (void)resolve_backend(kernel_backend);
}

Emulator::Emulator(std::vector<Building> buildings, EmulatorConfig config)
    : config_((config.validate(), std::move(config))),
      classifier_(std::move(buildings), ClassifierOptions{config_.cell_size, resolve_backend(config_.kernel_backend)}),
      shadowing_(derive_seed(config_.seed, "shadowing"), config_.radio.shadowing_std,
                 config_.radio.decorrelation_distance, config_.shadowing_eviction),
      gnss_remote_(config_.gnss, config_.seed, "gnss-remote"),
      gnss_ego_(config_.gnss_ego, config_.seed, "gnss-ego") {}

StepResult Emulator::process(const ScenarioStep& step) {
    StepResult out;
    const auto t0 = Clock::now();

    const auto culled = classifier_.cull(step, config_.ranges);
    const auto t1 = Clock::now();

    out.links = classifier_.classify_culled(step, culled, config_.nlosv_threshold, config_.workers);
    const auto t2 = Clock::now();

    const double ant = config_.scenario.antenna_height_offset;
    const double ego_h = step.ego.height + ant;
    struct Delivered {
        std::size_t link;
        double rx_power;
    };
    std::vector<Delivered> delivered;
    delivered.reserve(out.links.links.size());
    ConditionCounts& counts = out.metrics.counts;
    counts.total_in_range = out.links.links.size();
    for (std::size_t k = 0; k < out.links.links.size(); ++k) {
        const auto& link = out.links.links[k];
        const VehicleState& target = step.others[link.target_index];
        const double target_h = target.height + ant;
        const double dh = target_h - ego_h;
        const double d3d = std::max(std::sqrt(link.distance_2d * link.distance_2d + dh * dh), kMinLinkDistance);
        std::optional<NlosvInput> nlosv;
        switch (link.condition) {
            case LinkCondition::LOS:
                ++counts.los;
                break;
            case LinkCondition::NLOSb:
                ++counts.nlosb;
                break;
            case LinkCondition::NLOSv:
                ++counts.nlosv;
                nlosv = NlosvInput{*link.blocker, ego_h, target_h};
                break;
        }
        const double shadow = shadowing_.update(link.target_id, step.ego.position, target.position, step.timestamp);
        const LinkBudget budget = assess_link(link.condition, d3d, nlosv, config_.radio, shadow);
        if (budget.delivered) {
            delivered.push_back({k, budget.rx_power});
        }
    }
    shadowing_.evict(step.timestamp);
    counts.delivered = delivered.size();
    const auto t3 = Clock::now();

    const GeoOrigin& origin = config_.scenario.origin;
    const GnssError ego_err = gnss_ego_.update(step.ego.id, step.timestamp);
    out.ego_fix.step_t = step.timestamp;
    out.ego_fix.exact = origin.to_geodetic(step.ego.position);
    out.ego_fix.reported = origin.to_geodetic(apply_error(step.ego.position, ego_err.mu, ego_err.theta));

    out.messages.reserve(delivered.size());
    for (const auto& [k, rx_power] : delivered) {
        const auto& link = out.links.links[k];
        const VehicleState& sender = step.others[link.target_index];
        const GnssError e = gnss_remote_.update(sender.id, step.timestamp);
        ReceivedMessage msg;
        msg.step_t = step.timestamp;
        msg.sender_id = sender.id;
        msg.reported_position = origin.to_geodetic(apply_error(sender.position, e.mu, e.theta));
        msg.reported_speed = sender.speed;
        msg.reported_heading = sender.heading;
        msg.condition = link.condition;
        msg.rx_power = rx_power;
        out.messages.push_back(std::move(msg));
    }
    const auto t4 = Clock::now();

    out.metrics.step_t = step.timestamp;
    out.metrics.t_cull = seconds_between(t0, t1);
    out.metrics.t_classify = seconds_between(t1, t2);
    out.metrics.t_channel = seconds_between(t2, t3);
    out.metrics.t_gnss = seconds_between(t3, t4);
    out.metrics.wall_delay = seconds_between(t0, t4);
    out.metrics.over_budget = out.metrics.wall_delay > config_.effective_budget();
    return out;
}

RunSummary run(StepSource& source, std::vector<Building> buildings, const EmulatorConfig& config,
               const StepCallback& on_step) {
    Emulator emu(std::move(buildings), config);
    RunSummary summary;
    double delay_sum = 0.0;
    while (auto step = source.next()) {
        StepResult r;
        try {
            r = emu.process(*step);
        } catch (const ContractViolation& e) {
            throw ContractViolation("step t=" + std::to_string(step->timestamp) + ": " + e.what());
        }
        ++summary.steps;
        summary.messages += r.messages.size();
        summary.over_budget_steps += r.metrics.over_budget ? 1 : 0;
        summary.max_delay = std::max(summary.max_delay, r.metrics.wall_delay);
        delay_sum += r.metrics.wall_delay;
        if (on_step) {
            on_step(*step, r);
        }
    }
    summary.mean_delay = summary.steps > 0 ? delay_sum / static_cast<double>(summary.steps) : 0.0;
    return summary;
}

}  // namespace v2xemu
