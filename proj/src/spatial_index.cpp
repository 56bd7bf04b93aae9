// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include "v2xemu/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace v2xemu {

GridIndex::GridIndex(Bounds bounds, double cell_size) : bounds_(bounds), cell_(cell_size) {
    if (!(cell_size > 0.0)) {
        throw std::invalid_argument("grid cell size must be > 0");
    }
    const double w = std::max(bounds.max_x - bounds.min_x, 0.0);
    const double h = std::max(bounds.max_y - bounds.min_y, 0.0);
    nx_ = static_cast<std::size_t>(std::floor(w / cell_)) + 1;
    ny_ = static_cast<std::size_t>(std::floor(h / cell_)) + 1;
    cells_.assign(nx_ * ny_, {});
}

void GridIndex::clear() {
    for (auto& c : cells_) {
        c.clear();
    }
}

std::size_t GridIndex::cell_coord_x(double x) const {
    const double c = std::floor((x - bounds_.min_x) / cell_);
    if (!(c > 0.0)) {
        return 0;
    }
    return c >= static_cast<double>(nx_ - 1) ? nx_ - 1 : static_cast<std::size_t>(c);
}

std::size_t GridIndex::cell_coord_y(double y) const {
    const double c = std::floor((y - bounds_.min_y) / cell_);
    if (!(c > 0.0)) {
        return 0;
    }
    return c >= static_cast<double>(ny_ - 1) ? ny_ - 1 : static_cast<std::size_t>(c);
}

void GridIndex::insert(std::uint32_t object, Bounds box) {
    const std::size_t x0 = cell_coord_x(box.min_x);
    const std::size_t x1 = cell_coord_x(box.max_x);
    const std::size_t y0 = cell_coord_y(box.min_y);
    const std::size_t y1 = cell_coord_y(box.max_y);
    for (std::size_t cy = y0; cy <= y1; ++cy) {
        for (std::size_t cx = x0; cx <= x1; ++cx) {
            cells_[cy * nx_ + cx].push_back(object);
        }
    }
}

void GridIndex::query_disc(Position center, double radius, std::vector<std::uint32_t>& out) const {
    out.clear();
    const std::size_t x0 = cell_coord_x(center.x - radius);
    const std::size_t x1 = cell_coord_x(center.x + radius);
    const std::size_t y0 = cell_coord_y(center.y - radius);
    const std::size_t y1 = cell_coord_y(center.y + radius);
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::size_t cy = y0; cy <= y1; ++cy) {
        // border cells also hold everything clamped in from outside the box
        const double lo_y = cy == 0 ? -inf : bounds_.min_y + static_cast<double>(cy) * cell_;
        const double hi_y = cy + 1 == ny_ ? inf : bounds_.min_y + static_cast<double>(cy + 1) * cell_;
        const double ddy = std::max({lo_y - center.y, 0.0, center.y - hi_y});
        for (std::size_t cx = x0; cx <= x1; ++cx) {
            const double lo_x = cx == 0 ? -inf : bounds_.min_x + static_cast<double>(cx) * cell_;
            const double hi_x = cx + 1 == nx_ ? inf : bounds_.min_x + static_cast<double>(cx + 1) * cell_;
            const double ddx = std::max({lo_x - center.x, 0.0, center.x - hi_x});
            if (ddx * ddx + ddy * ddy > radius * radius) {
                continue;
            }
            const auto& cell = cells_[cy * nx_ + cx];
            out.insert(out.end(), cell.begin(), cell.end());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

Bounds bounds_of(const Building& b) {
    Bounds r{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& p : b.vertices) {
        r.min_x = std::min(r.min_x, p.x);
        r.min_y = std::min(r.min_y, p.y);
        r.max_x = std::max(r.max_x, p.x);
        r.max_y = std::max(r.max_y, p.y);
    }
    return r;
}

double nearest_vertex_distance(Position p, const Building& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : b.vertices) {
        best = std::min(best, distance(p, v));
    }
    return best;
}

}  // namespace v2xemu
