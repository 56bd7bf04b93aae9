// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include "v2xemu/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace v2xemu {

std::string_view to_string(LinkCondition c) {
    switch (c) {
        case LinkCondition::LOS:
            return "LOS";
        case LinkCondition::NLOSb:
            return "NLOSb";
        case LinkCondition::NLOSv:
            return "NLOSv";
    }
    return "?";
}

void CullingRanges::validate() const {
    if (!(r_b > 0.0) || !(r_v > 0.0)) {
        throw std::invalid_argument("culling ranges must be > 0");
    }
}

const LinkClassification* ClassificationResult::find(std::string_view target_id) const {
    auto it = std::lower_bound(links.begin(), links.end(), target_id,
                               [](const LinkClassification& l, std::string_view id) { return l.target_id < id; });
    return (it != links.end() && it->target_id == target_id) ? &*it : nullptr;
}

double orthogonal_distance(Position ego, Position target, Position third) {
    const double dx = target.x - ego.x;
    const double dy = target.y - ego.y;
    const double sx = third.x - ego.x;
    const double sy = third.y - ego.y;
    return std::fabs(dx * sy - dy * sx) / std::sqrt(dx * dx + dy * dy);
}

bool is_between(Position ego, Position target, Position third, double threshold) {
    const double xs[] = {third.x};
    const double ys[] = {third.y};
    return kernels::scalar::first_between(ego, target, {xs, ys}, threshold, kernels::npos) == 0;
}

bool segment_intersects_building(Position a, Position b, const Building& building) {
    kernels::WallBuffer walls;
    const std::size_t n = building.vertices.size();
    walls.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        walls.push_back(building.vertices[i], building.vertices[(i + 1) % n]);
    }
    return kernels::scalar::first_wall_crossing(a, b, walls.view()) != kernels::npos;
}

Classifier::Classifier(std::vector<Building> buildings, ClassifierOptions options)
    : buildings_(std::move(buildings)), options_(options) {
    if (!kernels::available(options_.backend)) {
        throw std::invalid_argument("kernel backend '" + std::string(kernels::to_string(options_.backend)) +
                                    "' is not supported on this CPU");
    }
    std::sort(buildings_.begin(), buildings_.end(),
              [](const Building& a, const Building& b) { return a.id < b.id; });

    bounds_ = {0.0, 0.0, 0.0, 0.0};
    if (!buildings_.empty()) {
        bounds_ = bounds_of(buildings_.front());
        for (const auto& b : buildings_) {
            const Bounds bb = bounds_of(b);
            bounds_.min_x = std::min(bounds_.min_x, bb.min_x);
            bounds_.min_y = std::min(bounds_.min_y, bb.min_y);
            bounds_.max_x = std::max(bounds_.max_x, bb.max_x);
            bounds_.max_y = std::max(bounds_.max_y, bb.max_y);
        }
    }
    building_index_ = GridIndex(bounds_, options_.cell_size);
    wall_offset_.reserve(buildings_.size() + 1);
    for (std::uint32_t i = 0; i < buildings_.size(); ++i) {
        const auto& b = buildings_[i];
        building_index_.insert(i, bounds_of(b));
        wall_offset_.push_back(static_cast<std::uint32_t>(walls_.size()));
        const std::size_t n = b.vertices.size();
        for (std::size_t k = 0; k < n; ++k) {
            walls_.push_back(b.vertices[k], b.vertices[(k + 1) % n]);
        }
    }
    wall_offset_.push_back(static_cast<std::uint32_t>(walls_.size()));
}

Classifier::Culled Classifier::cull(const ScenarioStep& step, const CullingRanges& ranges) const {
    ranges.validate();
    Culled out;
    const Position ego = step.ego.position;

    building_index_.query_disc(ego, ranges.r_b, out.buildings);
    std::erase_if(out.buildings,
                  [&](std::uint32_t i) { return !(nearest_vertex_distance(ego, buildings_[i]) < ranges.r_b); });
    // indices already ascend, and buildings_ is id-sorted

    GridIndex vehicle_index(bounds_, options_.cell_size);
    for (std::uint32_t i = 0; i < step.others.size(); ++i) {
        vehicle_index.insert(i, step.others[i].position);
    }
    vehicle_index.query_disc(ego, ranges.r_v, out.vehicles);
    std::erase_if(out.vehicles,
                  [&](std::uint32_t i) { return !(distance(ego, step.others[i].position) < ranges.r_v); });
    std::sort(out.vehicles.begin(), out.vehicles.end(),
              [&](std::uint32_t a, std::uint32_t b) { return step.others[a].id < step.others[b].id; });
    return out;
}

ClassificationResult Classifier::classify(const ScenarioStep& step, const CullingRanges& ranges, double threshold,
                                          unsigned workers) const {
    return classify_culled(step, cull(step, ranges), threshold, workers);
}

ClassificationResult Classifier::classify_culled(const ScenarioStep& step, const Culled& culled, double threshold,
                                                 unsigned workers) const {
    if (!(threshold > 0.0)) {
        throw std::invalid_argument("NLOSv threshold must be > 0");
    }
    const Position ego = step.ego.position;

    // Gather the walls of in-range buildings into one contiguous scan list.
    kernels::WallBuffer walls;
    std::vector<std::uint32_t> owner_end;  // exclusive wall end per culled building
    owner_end.reserve(culled.buildings.size());
    {
        std::size_t total = 0;
        for (auto b : culled.buildings) {
            total += wall_offset_[b + 1] - wall_offset_[b];
        }
        walls.reserve(total);
        for (auto b : culled.buildings) {
            for (std::uint32_t w = wall_offset_[b]; w < wall_offset_[b + 1]; ++w) {
                walls.ax.push_back(walls_.ax[w]);
                walls.ay.push_back(walls_.ay[w]);
                walls.bx.push_back(walls_.bx[w]);
                walls.by.push_back(walls_.by[w]);
            }
            owner_end.push_back(static_cast<std::uint32_t>(walls.size()));
        }
    }
    kernels::PointBuffer points;
    points.reserve(culled.vehicles.size());
    for (auto v : culled.vehicles) {
        points.push_back(step.others[v].position);
    }
    const kernels::WallsView wall_view = walls.view();
    const kernels::PointsView point_view = points.view();

    ClassificationResult result;
    result.links.resize(culled.vehicles.size());

    auto classify_one = [&](std::size_t k) {
        const VehicleState& target = step.others[culled.vehicles[k]];
        LinkClassification& link = result.links[k];
        link.target_id = target.id;
        link.target_index = culled.vehicles[k];
        link.distance_2d = distance(ego, target.position);
        link.condition = LinkCondition::LOS;

        const std::size_t wall = kernels::first_wall_crossing(ego, target.position, wall_view, options_.backend);
        if (wall != kernels::npos) {
            const auto owner = static_cast<std::size_t>(
                std::upper_bound(owner_end.begin(), owner_end.end(), static_cast<std::uint32_t>(wall)) -
                owner_end.begin());
            link.condition = LinkCondition::NLOSb;
            link.blocker_id = buildings_[culled.buildings[owner]].id;
            return;
        }
        const std::size_t third = kernels::first_between(ego, target.position, point_view, threshold, k,
                                                         options_.backend);
        if (third != kernels::npos) {
            const VehicleState& blocker = step.others[culled.vehicles[third]];
            link.condition = LinkCondition::NLOSv;
            link.blocker_id = blocker.id;
            link.blocker = BlockerGeometry{distance(blocker.position, ego),
                                           distance(blocker.position, target.position), blocker.height};
        }
    };

    const std::size_t n = result.links.size();
    const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
    if (threads <= 1) {
        for (std::size_t k = 0; k < n; ++k) {
            classify_one(k);
        }
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t k = t; k < n; k += threads) {
                    classify_one(k);
                }
            });
        }
    }
    return result;
}

}  // namespace v2xemu
