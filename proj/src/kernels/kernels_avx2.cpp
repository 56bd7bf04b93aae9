// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
//
// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <bit>

#include "v2xemu/kernels.hpp"

namespace v2xemu::kernels::avx2 {

namespace {

inline __m256d gt(__m256d a, __m256d b) { return _mm256_cmp_pd(a, b, _CMP_GT_OQ); }
inline __m256d lt(__m256d a, __m256d b) { return _mm256_cmp_pd(a, b, _CMP_LT_OQ); }
inline __m256d eq(__m256d a, __m256d b) { return _mm256_cmp_pd(a, b, _CMP_EQ_OQ); }

}  // namespace

std::size_t first_wall_crossing(Position a, Position b, const WallsView& walls) {
    const double dx_s = b.x - a.x;
    const double dy_s = b.y - a.y;
    const double len2_s = dx_s * dx_s + dy_s * dy_s;

    const __m256d ax = _mm256_set1_pd(a.x);
    const __m256d ay = _mm256_set1_pd(a.y);
    const __m256d bx = _mm256_set1_pd(b.x);
    const __m256d by = _mm256_set1_pd(b.y);
    const __m256d dx = _mm256_set1_pd(dx_s);
    const __m256d dy = _mm256_set1_pd(dy_s);
    const __m256d len2 = _mm256_set1_pd(len2_s);
    const __m256d zero = _mm256_setzero_pd();

    const std::size_t n = walls.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d px = _mm256_loadu_pd(walls.ax.data() + i);
        const __m256d py = _mm256_loadu_pd(walls.ay.data() + i);
        const __m256d qx = _mm256_loadu_pd(walls.bx.data() + i);
        const __m256d qy = _mm256_loadu_pd(walls.by.data() + i);

        const __m256d o1 = _mm256_sub_pd(_mm256_mul_pd(dx, _mm256_sub_pd(py, ay)),
                                         _mm256_mul_pd(dy, _mm256_sub_pd(px, ax)));
        const __m256d o2 = _mm256_sub_pd(_mm256_mul_pd(dx, _mm256_sub_pd(qy, ay)),
                                         _mm256_mul_pd(dy, _mm256_sub_pd(qx, ax)));
        const __m256d collinear = _mm256_and_pd(eq(o1, zero), eq(o2, zero));

        const __m256d tp = _mm256_add_pd(_mm256_mul_pd(_mm256_sub_pd(px, ax), dx),
                                         _mm256_mul_pd(_mm256_sub_pd(py, ay), dy));
        const __m256d tq = _mm256_add_pd(_mm256_mul_pd(_mm256_sub_pd(qx, ax), dx),
                                         _mm256_mul_pd(_mm256_sub_pd(qy, ay), dy));
        const __m256d lo = _mm256_blendv_pd(tq, tp, lt(tp, tq));
        const __m256d hi = _mm256_blendv_pd(tp, tq, lt(tp, tq));
        const __m256d overlap = _mm256_and_pd(lt(lo, len2), gt(hi, zero));

        const __m256d wx = _mm256_sub_pd(qx, px);
        const __m256d wy = _mm256_sub_pd(qy, py);
        const __m256d o3 = _mm256_sub_pd(_mm256_mul_pd(wx, _mm256_sub_pd(ay, py)),
                                         _mm256_mul_pd(wy, _mm256_sub_pd(ax, px)));
        const __m256d o4 = _mm256_sub_pd(_mm256_mul_pd(wx, _mm256_sub_pd(by, py)),
                                         _mm256_mul_pd(wy, _mm256_sub_pd(bx, px)));
        const __m256d straddles = _mm256_or_pd(_mm256_and_pd(gt(o3, zero), lt(o4, zero)),
                                               _mm256_and_pd(lt(o3, zero), gt(o4, zero)));
        const __m256d same_side = _mm256_or_pd(_mm256_and_pd(gt(o1, zero), gt(o2, zero)),
                                               _mm256_and_pd(lt(o1, zero), lt(o2, zero)));
        const __m256d proper = _mm256_andnot_pd(same_side, straddles);

        const __m256d hit = _mm256_blendv_pd(proper, overlap, collinear);
        const int mask = _mm256_movemask_pd(hit);
        if (mask != 0) {
            return i + static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(mask)));
        }
    }
    if (i < n) {
        const WallsView tail{walls.ax.subspan(i), walls.ay.subspan(i), walls.bx.subspan(i), walls.by.subspan(i)};
        const std::size_t r = scalar::first_wall_crossing(a, b, tail);
        return r == npos ? npos : i + r;
    }
    return npos;
}

std::size_t first_between(Position ego, Position target, const PointsView& points, double threshold,
                          std::size_t skip) {
    const double dx_s = target.x - ego.x;
    const double dy_s = target.y - ego.y;
    const double len2_s = dx_s * dx_s + dy_s * dy_s;

    const __m256d ex = _mm256_set1_pd(ego.x);
    const __m256d ey = _mm256_set1_pd(ego.y);
    const __m256d dx = _mm256_set1_pd(dx_s);
    const __m256d dy = _mm256_set1_pd(dy_s);
    const __m256d len2 = _mm256_set1_pd(len2_s);
    const __m256d len = _mm256_sqrt_pd(len2);
    const __m256d thr = _mm256_set1_pd(threshold);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d sign = _mm256_set1_pd(-0.0);

    const std::size_t n = points.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d sx = _mm256_sub_pd(_mm256_loadu_pd(points.x.data() + i), ex);
        const __m256d sy = _mm256_sub_pd(_mm256_loadu_pd(points.y.data() + i), ey);
        const __m256d cross = _mm256_sub_pd(_mm256_mul_pd(dx, sy), _mm256_mul_pd(dy, sx));
        const __m256d dot = _mm256_add_pd(_mm256_mul_pd(dx, sx), _mm256_mul_pd(dy, sy));
        const __m256d d_orth = _mm256_div_pd(_mm256_andnot_pd(sign, cross), len);
        const __m256d hit = _mm256_and_pd(lt(d_orth, thr), _mm256_and_pd(gt(dot, zero), lt(dot, len2)));
        unsigned mask = static_cast<unsigned>(_mm256_movemask_pd(hit));
        if (skip >= i && skip < i + 4) {
            mask &= ~(1u << (skip - i));
        }
        if (mask != 0) {
            return i + static_cast<std::size_t>(std::countr_zero(mask));
        }
    }
    if (i < n) {
        const PointsView tail{points.x.subspan(i), points.y.subspan(i)};
        const std::size_t tail_skip = (skip != npos && skip >= i) ? skip - i : npos;
        const std::size_t r = scalar::first_between(ego, target, tail, threshold, tail_skip);
        return r == npos ? npos : i + r;
    }
    return npos;
}

}  // namespace v2xemu::kernels::avx2
