// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Data-parallel inner loops of the link classifier.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime. Variants evaluate the same IEEE expressions in
// the same order (the build disables FP contraction), so they return
// identical results; the equivalence tests hold them to that.

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "v2xemu/scenario.hpp"

namespace v2xemu::kernels {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

/// Structure-of-arrays wall list: wall i runs from (ax[i], ay[i]) to (bx[i], by[i]).
struct WallsView {
    std::span<const double> ax;
    std::span<const double> ay;
    std::span<const double> bx;
    std::span<const double> by;

    std::size_t size() const noexcept { return ax.size(); }
};

struct PointsView {
    std::span<const double> x;
    std::span<const double> y;

    std::size_t size() const noexcept { return x.size(); }
};

/// Owning SoA wall storage.
struct WallBuffer {
    std::vector<double> ax, ay, bx, by;

    void clear();
    void reserve(std::size_t n);
    void push_back(Position a, Position b);
    std::size_t size() const noexcept { return ax.size(); }
    WallsView view() const { return {ax, ay, bx, by}; }
    WallsView view(std::size_t first, std::size_t count) const;
};

struct PointBuffer {
    std::vector<double> x, y;

    void clear();
    void reserve(std::size_t n);
    void push_back(Position p);
    std::size_t size() const noexcept { return x.size(); }
    PointsView view() const { return {x, y}; }
};

/// Index of the first wall touching the link segment (a, b), or npos.
/// The link is open at a and b; walls are closed; collinear overlap counts.
std::size_t first_wall_crossing(Position a, Position b, const WallsView& walls, Backend backend);

/// Index of the first point (skipping index `skip`) whose perpendicular
/// distance to the ego->target line is below `threshold` and whose projection
/// falls strictly inside the segment, or npos.
std::size_t first_between(Position ego, Position target, const PointsView& points, double threshold,
                          std::size_t skip, Backend backend);

bool available(Backend b);

/// AVX2 when the CPU supports it, unless V2XEMU_KERNELS=scalar is set.
Backend default_backend();

namespace scalar {
std::size_t first_wall_crossing(Position a, Position b, const WallsView& walls);
std::size_t first_between(Position ego, Position target, const PointsView& points, double threshold,
                          std::size_t skip);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
std::size_t first_wall_crossing(Position a, Position b, const WallsView& walls);
std::size_t first_between(Position ego, Position target, const PointsView& points, double threshold,
                          std::size_t skip);
}  // namespace avx2
#endif

}  // namespace v2xemu::kernels
