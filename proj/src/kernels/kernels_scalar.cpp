// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "v2xemu/kernels.hpp"

namespace v2xemu::kernels::scalar {

std::size_t first_wall_crossing(Position a, Position b, const WallsView& walls) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    const std::size_t n = walls.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double px = walls.ax[i];
        const double py = walls.ay[i];
        const double qx = walls.bx[i];
        const double qy = walls.by[i];
        // orientation of the wall endpoints w.r.t. the link line
        const double o1 = dx * (py - a.y) - dy * (px - a.x);
        const double o2 = dx * (qy - a.y) - dy * (qx - a.x);
        if (o1 == 0.0 && o2 == 0.0) {
            // collinear: compare projections against the open interval (0, len2)
            const double tp = (px - a.x) * dx + (py - a.y) * dy;
            const double tq = (qx - a.x) * dx + (qy - a.y) * dy;
            const double lo = tp < tq ? tp : tq;
            const double hi = tp < tq ? tq : tp;
            if (lo < len2 && hi > 0.0) {
                return i;
            }
            continue;
        }
        const double wx = qx - px;
        const double wy = qy - py;
        // orientation of the link endpoints w.r.t. the wall line
        const double o3 = wx * (a.y - py) - wy * (a.x - px);
        const double o4 = wx * (b.y - py) - wy * (b.x - px);
        const bool link_straddles = (o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0);
        const bool wall_same_side = (o1 > 0.0 && o2 > 0.0) || (o1 < 0.0 && o2 < 0.0);
        if (link_straddles && !wall_same_side) {
            return i;
        }
    }
    return npos;
}

std::size_t first_between(Position ego, Position target, const PointsView& points, double threshold,
                          std::size_t skip) {
    const double dx = target.x - ego.x;
    const double dy = target.y - ego.y;
    const double len2 = dx * dx + dy * dy;
    const double len = std::sqrt(len2);
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i == skip) {
            continue;
        }
        const double sx = points.x[i] - ego.x;
        const double sy = points.y[i] - ego.y;
        const double cross = dx * sy - dy * sx;
        const double dot = dx * sx + dy * sy;
        const double d_orth = std::fabs(cross) / len;
        if (d_orth < threshold && dot > 0.0 && dot < len2) {
            return i;
        }
    }
    return npos;
}

}  // namespace v2xemu::kernels::scalar
