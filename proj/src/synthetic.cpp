// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include "v2xemu/synthetic.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "v2xemu/rng.hpp"

namespace v2xemu {

namespace {

struct Dir {
    int dx;
    int dy;
};

constexpr std::array<Dir, 4> kDirs{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

struct Mover {
    VehicleState state;
    int node_x = 0;
    int node_y = 0;
    int dir = 0;  // index into kDirs
    double progress = 0.0;
    RngEngine rng;
};

std::string padded(const char* prefix, int value, int width) {
    std::string digits = std::to_string(value);
    if (static_cast<int>(digits.size()) < width) {
        digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
    }
    return prefix + digits;
}

}  // namespace

GridSpec benchmark_city_spec(std::uint64_t seed) {
    GridSpec g;
    g.blocks_x = 10;
    g.blocks_y = 10;
    g.block_size = 100.0;
    g.street_width = 20.0;
    g.lots_x = 5;
    g.lots_y = 4;
    g.lot_gap = 4.0;
    g.vehicle_count = 500;
    g.duration = 60.0;
    g.step_period = 0.1;
    g.seed = seed;
    return g;
}

SyntheticScenario generate_synthetic_scenario(const GridSpec& spec) {
    if (spec.blocks_x < 1 || spec.blocks_y < 1 || spec.lots_x < 1 || spec.lots_y < 1 || spec.vehicle_count < 1) {
        throw std::invalid_argument("grid spec: counts must be positive");
    }
    if (!(spec.block_size > 0.0) || !(spec.street_width > 0.0) || !(spec.duration > 0.0) ||
        !(spec.step_period > 0.0) || spec.lot_gap < 0.0) {
        throw std::invalid_argument("grid spec: sizes and durations must be positive");
    }
    const double lot_w = (spec.block_size - (spec.lots_x - 1) * spec.lot_gap) / spec.lots_x;
    const double lot_h = (spec.block_size - (spec.lots_y - 1) * spec.lot_gap) / spec.lots_y;
    if (!(lot_w > 0.0) || !(lot_h > 0.0)) {
        throw std::invalid_argument("grid spec: lot_gap leaves no room for buildings");
    }

    const double pitch = spec.block_size + spec.street_width;
    SyntheticScenario out;
    out.buildings.reserve(static_cast<std::size_t>(spec.blocks_x) * spec.blocks_y * spec.lots_x * spec.lots_y);
    for (int bx = 0; bx < spec.blocks_x; ++bx) {
        for (int by = 0; by < spec.blocks_y; ++by) {
            const double x0 = bx * pitch + spec.street_width / 2.0;
            const double y0 = by * pitch + spec.street_width / 2.0;
            for (int lx = 0; lx < spec.lots_x; ++lx) {
                for (int ly = 0; ly < spec.lots_y; ++ly) {
                    const double ax = x0 + lx * (lot_w + spec.lot_gap);
                    const double ay = y0 + ly * (lot_h + spec.lot_gap);
                    char id[48];
                    std::snprintf(id, sizeof id, "b%03d_%03d_%02d_%02d", bx, by, lx, ly);
                    out.buildings.push_back(
                        {id, {{ax, ay}, {ax + lot_w, ay}, {ax + lot_w, ay + lot_h}, {ax, ay + lot_h}}});
                }
            }
        }
    }

    const int nodes_x = spec.blocks_x + 1;
    const int nodes_y = spec.blocks_y + 1;
    const double lane_offset = spec.street_width / 4.0;
    auto valid = [&](int x, int y) { return x >= 0 && y >= 0 && x < nodes_x && y < nodes_y; };

    const int id_width = std::max(4, static_cast<int>(std::to_string(spec.vehicle_count).size()));
    std::vector<Mover> movers(static_cast<std::size_t>(spec.vehicle_count));
    for (int i = 0; i < spec.vehicle_count; ++i) {
        Mover& m = movers[static_cast<std::size_t>(i)];
        m.state.id = i == 0 ? std::string("ego") : padded("v", i, id_width);
        m.rng = make_engine(spec.seed, "synthetic", m.state.id);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        if (i == 0) {
            m.node_x = spec.blocks_x / 2;
            m.node_y = spec.blocks_y / 2;
            m.dir = 0;
            m.progress = 0.0;
        } else {
            m.node_x = static_cast<int>(unit(m.rng) * nodes_x) % nodes_x;
            m.node_y = static_cast<int>(unit(m.rng) * nodes_y) % nodes_y;
            m.dir = static_cast<int>(unit(m.rng) * 4) % 4;
            m.progress = unit(m.rng) * pitch;
        }
        // Rotate to a direction that stays on the grid.
        for (int k = 0; k < 4; ++k) {
            const Dir d = kDirs[static_cast<std::size_t>(m.dir)];
            if (valid(m.node_x + d.dx, m.node_y + d.dy)) {
                break;
            }
            m.dir = (m.dir + 1) % 4;
        }
        m.state.speed = 6.0 + 8.0 * unit(m.rng);
        if (i != 0 && unit(m.rng) < spec.truck_fraction) {
            m.state.length = 10.0;
            m.state.width = 2.5;
            m.state.height = 3.5;
        }
    }

    auto place = [&](Mover& m) {
        const Dir d = kDirs[static_cast<std::size_t>(m.dir)];
        const double cx = m.node_x * pitch + d.dx * m.progress;
        const double cy = m.node_y * pitch + d.dy * m.progress;
        // right-hand side of the direction of travel
        m.state.position = {cx + d.dy * lane_offset, cy - d.dx * lane_offset};
        m.state.heading = normalize_angle(std::atan2(static_cast<double>(d.dy), static_cast<double>(d.dx)));
    };

    auto advance = [&](Mover& m, double dt) {
        m.progress += m.state.speed * dt;
        while (m.progress >= pitch) {
            m.progress -= pitch;
            const Dir d = kDirs[static_cast<std::size_t>(m.dir)];
            m.node_x += d.dx;
            m.node_y += d.dy;
            std::array<int, 3> options{};
            int n = 0;
            const int reverse = (m.dir + 2) % 4;
            for (int k = 0; k < 4; ++k) {
                const Dir c = kDirs[static_cast<std::size_t>(k)];
                if (k != reverse && valid(m.node_x + c.dx, m.node_y + c.dy)) {
                    options[static_cast<std::size_t>(n++)] = k;
                }
            }
            if (n == 0) {
                m.dir = reverse;
            } else {
                std::uniform_int_distribution<int> pick(0, n - 1);
                m.dir = options[static_cast<std::size_t>(pick(m.rng))];
            }
        }
    };

    const auto step_count = static_cast<std::size_t>(std::llround(spec.duration / spec.step_period));
    out.steps.reserve(step_count);
    for (std::size_t k = 0; k < step_count; ++k) {
        ScenarioStep step;
        step.timestamp = static_cast<double>(k) * spec.step_period;
        step.others.reserve(movers.size() - 1);
        for (std::size_t i = 0; i < movers.size(); ++i) {
            place(movers[i]);
            if (i == 0) {
                step.ego = movers[i].state;
            } else {
                step.others.push_back(movers[i].state);
            }
        }
        out.steps.push_back(std::move(step));
        for (auto& m : movers) {
            advance(m, spec.step_period);
        }
    }
    return out;
}

}  // namespace v2xemu
