// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "v2xemu/scenario.hpp"

namespace v2xemu {

/// Manhattan-grid city parameters. Street centerlines sit at multiples of
/// (block_size + street_width); each block is split into lots_x * lots_y
/// rectangular buildings separated by lot_gap.
struct GridSpec {
    int blocks_x = 1;
    int blocks_y = 1;
    double block_size = 100.0;
    double street_width = 20.0;
    int lots_x = 1;
    int lots_y = 1;
    double lot_gap = 4.0;
    int vehicle_count = 1;  // including the ego
    double duration = 60.0;
    double step_period = 0.1;
    double truck_fraction = 0.15;
    std::uint64_t seed = 0;
};

struct SyntheticScenario {
    std::vector<Building> buildings;
    std::vector<ScenarioStep> steps;
};

/// Deterministic city + trace. Vehicles drive on the right-hand lane of the
/// street grid at constant speed and pick a new direction (never a U-turn) at
/// each intersection from their own seeded stream. The ego starts at the
/// intersection closest to the city center.
///
/// Throws std::invalid_argument on non-positive counts or sizes.
SyntheticScenario generate_synthetic_scenario(const GridSpec& spec);

/// The desk-scale benchmark city: 10x10 blocks of 5x4 lots (2000 buildings),
/// 500 vehicles, 60 s at 0.1 s.
GridSpec benchmark_city_spec(std::uint64_t seed = 0);

}  // namespace v2xemu
