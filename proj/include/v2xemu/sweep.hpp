// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "v2xemu/pipeline.hpp"

namespace v2xemu {

/// Outcome of one (r_b, r_v) pair, compared against the unculled reference.
struct SweepRow {
    double rb = 0.0;
    double rv = 0.0;
    double mean_delay_top50 = 0.0;  // mean wall delay of the 50 busiest steps
    double max_delay = 0.0;
    double mean_delay_all = 0.0;
    std::uint64_t nlosb_missed = 0;           // reference NLOSb links not NLOSb here
    std::uint64_t total_reference_nlosb = 0;
    std::int64_t delivered_diff = 0;          // delivered here minus delivered in reference
    std::uint64_t misclassified = 0;          // links classified in both runs with different condition
    std::uint64_t over_reported = 0;          // non-LOS here but LOS in reference (must stay 0)
    double mean_compute = 0.0;                // mean of t_cull + t_classify + t_channel
    std::vector<StepMetrics> metrics;         // per step
};

/// Runs the pipeline over an in-memory trace for several culling-range pairs.
/// The unculled reference (both ranges at the scenario diagonal) is computed
/// once, on first use, and reused for every pair.
class Sweeper {
public:
    static constexpr std::size_t kTopSteps = 50;

    Sweeper(std::span<const ScenarioStep> steps, std::span<const Building> buildings, EmulatorConfig base);

    SweepRow evaluate(double rb, double rv);

    /// Every (rb, rv) in the cartesian product, rb-major. Infinite values
    /// are replaced by the scenario diagonal.
    std::vector<SweepRow> sweep(std::span<const double> rb_values, std::span<const double> rv_values);

    double diagonal() const noexcept { return diagonal_; }

private:
    struct Reference {
        std::vector<std::vector<std::pair<std::string, LinkCondition>>> links;  // per step, id-sorted
        std::vector<std::size_t> delivered;
    };

    const Reference& reference();

    std::span<const ScenarioStep> steps_;
    std::vector<Building> buildings_;
    EmulatorConfig base_;
    double diagonal_;
    std::optional<Reference> reference_;
};

}  // namespace v2xemu
