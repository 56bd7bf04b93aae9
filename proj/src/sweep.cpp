// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include "v2xemu/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace v2xemu {

Sweeper::Sweeper(std::span<const ScenarioStep> steps, std::span<const Building> buildings, EmulatorConfig base)
    : steps_(steps),
      buildings_(buildings.begin(), buildings.end()),
      base_(std::move(base)),
      diagonal_(scenario_diagonal(buildings, steps)) {}

const Sweeper::Reference& Sweeper::reference() {
    if (reference_) {
        return *reference_;
    }
    EmulatorConfig cfg = base_;
    cfg.ranges = {diagonal_, diagonal_};
    Emulator emu(buildings_, cfg);
    Reference ref;
    ref.links.reserve(steps_.size());
    ref.delivered.reserve(steps_.size());
    for (const auto& step : steps_) {
        const StepResult r = emu.process(step);
        auto& links = ref.links.emplace_back();
        links.reserve(r.links.links.size());
        for (const auto& l : r.links.links) {
            links.emplace_back(l.target_id, l.condition);
        }
        ref.delivered.push_back(r.metrics.counts.delivered);
    }
    reference_ = std::move(ref);
    return *reference_;
}

SweepRow Sweeper::evaluate(double rb, double rv) {
    const Reference& ref = reference();
    SweepRow row;
    row.rb = std::isinf(rb) ? diagonal_ : rb;
    row.rv = std::isinf(rv) ? diagonal_ : rv;

    EmulatorConfig cfg = base_;
    cfg.ranges = {row.rb, row.rv};
    Emulator emu(buildings_, cfg);
    row.metrics.reserve(steps_.size());

    double compute_sum = 0.0;
    for (std::size_t s = 0; s < steps_.size(); ++s) {
        const StepResult r = emu.process(steps_[s]);
        row.metrics.push_back(r.metrics);
        compute_sum += r.metrics.t_cull + r.metrics.t_classify + r.metrics.t_channel;
        row.delivered_diff +=
            static_cast<std::int64_t>(r.metrics.counts.delivered) - static_cast<std::int64_t>(ref.delivered[s]);

        // Both link lists are id-sorted: merge.
        const auto& ref_links = ref.links[s];
        const auto& run_links = r.links.links;
        std::size_t j = 0;
        for (const auto& [id, ref_cond] : ref_links) {
            while (j < run_links.size() && run_links[j].target_id < id) {
                ++j;
            }
            const bool present = j < run_links.size() && run_links[j].target_id == id;
            const LinkCondition cond = present ? run_links[j].condition : LinkCondition::LOS;
            if (ref_cond == LinkCondition::NLOSb) {
                ++row.total_reference_nlosb;
                if (cond != LinkCondition::NLOSb) {
                    ++row.nlosb_missed;
                }
            }
            if (present) {
                if (cond != ref_cond) {
                    ++row.misclassified;
                }
                if ((cond == LinkCondition::NLOSb && ref_cond != LinkCondition::NLOSb) ||
                    (cond == LinkCondition::NLOSv && ref_cond == LinkCondition::LOS)) {
                    ++row.over_reported;
                }
            }
        }
    }

    const std::size_t n = row.metrics.size();
    if (n > 0) {
        double sum = 0.0;
        for (const auto& m : row.metrics) {
            sum += m.wall_delay;
            row.max_delay = std::max(row.max_delay, m.wall_delay);
        }
        row.mean_delay_all = sum / static_cast<double>(n);
        row.mean_compute = compute_sum / static_cast<double>(n);

        // Busiest steps: most vehicles in the scene, then most links in range,
        // then earliest.
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto va = steps_[a].others.size();
            const auto vb = steps_[b].others.size();
            if (va != vb) {
                return va > vb;
            }
            return row.metrics[a].counts.total_in_range > row.metrics[b].counts.total_in_range;
        });
        const std::size_t top = std::min(kTopSteps, n);
        double top_sum = 0.0;
        for (std::size_t i = 0; i < top; ++i) {
            top_sum += row.metrics[order[i]].wall_delay;
        }
        row.mean_delay_top50 = top_sum / static_cast<double>(top);
    }
    return row;
}

std::vector<SweepRow> Sweeper::sweep(std::span<const double> rb_values, std::span<const double> rv_values) {
    if (rb_values.empty() || rv_values.empty()) {
        throw std::invalid_argument("sweep: range lists must not be empty");
    }
    std::vector<SweepRow> rows;
    rows.reserve(rb_values.size() * rv_values.size());
    for (double rb : rb_values) {
        for (double rv : rv_values) {
            rows.push_back(evaluate(rb, rv));
        }
    }
    return rows;
}

}  // namespace v2xemu
