// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "v2xemu/kernels.hpp"
#include "v2xemu/scenario.hpp"
#include "v2xemu/spatial_index.hpp"

namespace v2xemu {

enum class LinkCondition : std::uint8_t { LOS, NLOSb, NLOSv };

std::string_view to_string(LinkCondition c);

/// Scanning ranges around the ego. Infinity disables culling.
struct CullingRanges {
    double r_b = std::numeric_limits<double>::infinity();  // buildings
    double r_v = std::numeric_limits<double>::infinity();  // vehicles

    /// Throws std::invalid_argument unless both ranges are > 0.
    void validate() const;
    /// r_b > r_v is legal but usually not intended.
    bool building_range_exceeds_vehicle_range() const { return r_b > r_v; }
};

/// Where a blocking vehicle sits along an NLOSv link.
struct BlockerGeometry {
    double to_ego = 0.0;     // blocker -> ego, m
    double to_target = 0.0;  // blocker -> target (transmitter), m
    double height = 0.0;     // blocker vehicle height, m
};

struct LinkClassification {
    std::string target_id;
    std::size_t target_index = 0;  // index into ScenarioStep::others
    LinkCondition condition = LinkCondition::LOS;
    double distance_2d = 0.0;
    std::optional<std::string> blocker_id;
    std::optional<BlockerGeometry> blocker;  // NLOSv only
};

/// Links for every target within r_v of the ego, sorted by target id.
struct ClassificationResult {
    std::vector<LinkClassification> links;

    const LinkClassification* find(std::string_view target_id) const;
};

/// Perpendicular distance from `third` to the infinite line through `ego`
/// and `target`.
///
/// Computed as |(t - e) x (s - e)| / |t - e|. Multiplying the numerator and
/// denominator of the slope form |m x_s - y_s - m x_e + y_e| / sqrt(m^2 + 1)
/// by |x_t - x_e| gives exactly this expression, so the two agree wherever the
/// slope is defined; for a vertical line it reduces to |x_s - x_e|.
double orthogonal_distance(Position ego, Position target, Position third);

/// orthogonal_distance < threshold and the projection of `third` lies strictly
/// inside the ego->target segment.
bool is_between(Position ego, Position target, Position third, double threshold);

/// True iff the open segment (a, b) crosses or touches any edge of the
/// building, collinear overlap included.
bool segment_intersects_building(Position a, Position b, const Building& building);

struct ClassifierOptions {
    double cell_size = 50.0;
    kernels::Backend backend = kernels::default_backend();
};

/// Link classifier for a fixed set of buildings.
///
/// Per step: culls buildings (nearest-vertex distance < r_b) and vehicles
/// (center distance < r_v) through grid indices, then for each in-range
/// target checks in-range buildings in id order (first crossing wall wins,
/// NLOSb), then in-range third vehicles in id order (first one in between
/// wins, NLOSv), else LOS.
///
/// Thread-safety: classify() is const and may be called concurrently;
/// `workers` > 1 fans targets out over that many threads.
class Classifier {
public:
    explicit Classifier(std::vector<Building> buildings, ClassifierOptions options = {});

    ClassificationResult classify(const ScenarioStep& step, const CullingRanges& ranges, double threshold,
                                  unsigned workers = 1) const;

    /// Cull-phase output, exposed for diagnostics and the pipeline's timers.
    struct Culled {
        std::vector<std::uint32_t> buildings;  // indices into buildings(), id order
        std::vector<std::uint32_t> vehicles;   // indices into step.others, id order
    };
    Culled cull(const ScenarioStep& step, const CullingRanges& ranges) const;
    ClassificationResult classify_culled(const ScenarioStep& step, const Culled& culled, double threshold,
                                         unsigned workers = 1) const;

    std::span<const Building> buildings() const noexcept { return buildings_; }
    kernels::Backend backend() const noexcept { return options_.backend; }
    const Bounds& bounds() const noexcept { return bounds_; }

private:
    std::vector<Building> buildings_;  // sorted by id
    ClassifierOptions options_;
    Bounds bounds_{};
    GridIndex building_index_;
    kernels::WallBuffer walls_;                 // all walls, building order
    std::vector<std::uint32_t> wall_offset_;    // first wall of building i
};

}  // namespace v2xemu
