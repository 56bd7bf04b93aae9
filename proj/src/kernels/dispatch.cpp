// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <cstring>

#include "v2xemu/kernels.hpp"

namespace v2xemu::kernels {

std::string_view to_string(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return "scalar";
        case Backend::Avx2:
            return "avx2";
    }
    return "unknown";
}

void WallBuffer::clear() {
    ax.clear();
    ay.clear();
    bx.clear();
    by.clear();
}

void WallBuffer::reserve(std::size_t n) {
    ax.reserve(n);
    ay.reserve(n);
    bx.reserve(n);
    by.reserve(n);
}

void WallBuffer::push_back(Position a, Position b) {
    ax.push_back(a.x);
    ay.push_back(a.y);
    bx.push_back(b.x);
    by.push_back(b.y);
}

WallsView WallBuffer::view(std::size_t first, std::size_t count) const {
    return {std::span(ax).subspan(first, count), std::span(ay).subspan(first, count),
            std::span(bx).subspan(first, count), std::span(by).subspan(first, count)};
}

void PointBuffer::clear() {
    x.clear();
    y.clear();
}

void PointBuffer::reserve(std::size_t n) {
    x.reserve(n);
    y.reserve(n);
}

void PointBuffer::push_back(Position p) {
    x.push_back(p.x);
    y.push_back(p.y);
}

bool available(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Backend default_backend() {
    static const Backend chosen = [] {
        const char* env = std::getenv("V2XEMU_KERNELS");
        if (env != nullptr && std::strcmp(env, "scalar") == 0) {
            return Backend::Scalar;
        }
        return available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
    }();
    return chosen;
}

std::size_t first_wall_crossing(Position a, Position b, const WallsView& walls, Backend backend) {
#if defined(__x86_64__) || defined(_M_X64)
    if (backend == Backend::Avx2) {
        return avx2::first_wall_crossing(a, b, walls);
    }
#endif
    (void)backend;
    return scalar::first_wall_crossing(a, b, walls);
}

std::size_t first_between(Position ego, Position target, const PointsView& points, double threshold,
                          std::size_t skip, Backend backend) {
#if defined(__x86_64__) || defined(_M_X64)
    if (backend == Backend::Avx2) {
        return avx2::first_between(ego, target, points, threshold, skip);
    }
#endif
    (void)backend;
    return scalar::first_between(ego, target, points, threshold, skip);
}

}  // namespace v2xemu::kernels
