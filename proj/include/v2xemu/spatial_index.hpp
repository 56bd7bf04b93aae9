// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "v2xemu/scenario.hpp"

namespace v2xemu {

struct Bounds {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;
};

/// Uniform grid over a fixed bounding box. Objects are registered by their
/// axis-aligned bounds into every overlapped cell; anything outside the box
/// is clamped into the border cells, so queries stay a superset for objects
/// anywhere in the plane.
///
/// Queries return candidate indices (in ascending order, deduplicated); the
/// caller applies the exact distance filter.
class GridIndex {
public:
    GridIndex() = default;
    GridIndex(Bounds bounds, double cell_size);

    void clear();
    void insert(std::uint32_t object, Bounds box);
    void insert(std::uint32_t object, Position p) { insert(object, Bounds{p.x, p.y, p.x, p.y}); }

    /// All objects registered in cells overlapping the disc. Reentrant.
    void query_disc(Position center, double radius, std::vector<std::uint32_t>& out) const;

    std::size_t cells_x() const noexcept { return nx_; }
    std::size_t cells_y() const noexcept { return ny_; }
    double cell_size() const noexcept { return cell_; }

private:
    std::size_t cell_coord_x(double x) const;
    std::size_t cell_coord_y(double y) const;

    Bounds bounds_{};
    double cell_ = 1.0;
    std::size_t nx_ = 1;
    std::size_t ny_ = 1;
    std::vector<std::vector<std::uint32_t>> cells_{1};
};

Bounds bounds_of(const Building& b);

/// Smallest distance from `p` to any vertex of the building (the building's
/// distance for range culling).
double nearest_vertex_distance(Position p, const Building& b);

}  // namespace v2xemu
