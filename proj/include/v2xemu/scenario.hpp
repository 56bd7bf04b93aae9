// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace v2xemu {

/// Point in the local planar frame, meters (x east, y north).
struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

/// Geodetic fix, degrees.
struct GeoPosition {
    double lat = 0.0;
    double lon = 0.0;

    friend bool operator==(const GeoPosition&, const GeoPosition&) = default;
};

/// Equirectangular projection around a fixed anchor. Exact inverse of itself
/// (both directions are affine), accurate to well under a centimeter at city
/// scale.
class GeoOrigin {
public:
    static constexpr double kEarthRadius = 6378137.0;  // WGS84 equatorial, m

    GeoOrigin() = default;
    GeoOrigin(double lat_deg, double lon_deg);

    GeoPosition to_geodetic(Position p) const;
    Position to_planar(GeoPosition g) const;

    double lat() const noexcept { return lat_; }
    double lon() const noexcept { return lon_; }

private:
    double lat_ = 0.0;
    double lon_ = 0.0;
    double meters_per_deg_lat_ = 0.0;
    double meters_per_deg_lon_ = 0.0;
};

struct VehicleDefaults {
    static constexpr double kLength = 4.5;
    static constexpr double kWidth = 1.8;
    static constexpr double kHeight = 1.5;
};

struct VehicleState {
    std::string id;
    Position position;
    double speed = 0.0;    // m/s
    double heading = 0.0;  // radians CCW from east, [0, 2pi)
    double length = VehicleDefaults::kLength;
    double width = VehicleDefaults::kWidth;
    double height = VehicleDefaults::kHeight;

    friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

/// Closed 2D polygon; the last vertex connects back to the first.
struct Building {
    std::string id;
    std::vector<Position> vertices;

    friend bool operator==(const Building&, const Building&) = default;
};

struct ScenarioStep {
    double timestamp = 0.0;  // seconds since scenario start
    VehicleState ego;
    std::vector<VehicleState> others;

    friend bool operator==(const ScenarioStep&, const ScenarioStep&) = default;
};

struct ScenarioConfig {
    GeoOrigin origin{44.4949, 11.3426};
    double step_period = 0.1;
    double antenna_height_offset = 0.1;
};

/// Wraps an angle into [0, 2pi).
double normalize_angle(double radians);

/// Throws InvalidPolygonError if `b` has fewer than three vertices, non-finite
/// or repeated consecutive vertices, or self-intersecting edges.
void validate_building(const Building& b);

/// Reads a JSON array of {"id", "vertices": [[x,y],...]}. Order preserved;
/// duplicate ids are rejected.
std::vector<Building> load_buildings(const std::filesystem::path& path);
std::vector<Building> parse_buildings(std::string_view json_text, std::string_view source = "<buildings>");
std::string serialize_buildings(std::span<const Building> buildings);

/// Reads a flat scenario config: origin_lat, origin_lon, step_period,
/// antenna_height_offset. Missing keys keep their defaults.
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

/// One JSON-lines record of the trace format (no trailing newline).
std::string serialize_step(const ScenarioStep& step);

/// Parses one trace line. `line_no` is only used for error messages.
/// Per-step invariants (ego id absent from others) are checked here;
/// ordering across steps is the reader's job.
ScenarioStep parse_step(std::string_view line, std::size_t line_no = 0);

/// Pull-style producer of scenario steps.
class StepSource {
public:
    virtual ~StepSource() = default;
    virtual std::optional<ScenarioStep> next() = 0;
};

/// Streams a JSON-lines trace one step at a time. Blank lines are skipped.
/// Enforces strictly increasing timestamps.
class TraceReader final : public StepSource {
public:
    explicit TraceReader(const std::filesystem::path& path);
    explicit TraceReader(std::unique_ptr<std::istream> in, std::string source_name = "<stream>");

    std::optional<ScenarioStep> next() override;

    std::size_t line_number() const noexcept { return line_no_; }

private:
    std::unique_ptr<std::istream> in_;
    std::string source_;
    std::string line_;
    std::size_t line_no_ = 0;
    std::optional<double> last_t_;
};

/// Serves steps from memory.
class VectorStepSource final : public StepSource {
public:
    explicit VectorStepSource(std::span<const ScenarioStep> steps) : steps_(steps) {}
    std::optional<ScenarioStep> next() override;

private:
    std::span<const ScenarioStep> steps_;
    std::size_t pos_ = 0;
};

/// Loads the whole trace into memory (convenience for sweeps and tests).
std::vector<ScenarioStep> load_trace(const std::filesystem::path& path);

void write_trace(const std::filesystem::path& path, std::span<const ScenarioStep> steps);

/// Euclidean distance in the planar frame.
double distance(Position a, Position b);

/// A range strictly larger than any distance between two objects of the
/// scenario (buildings and every vehicle position of every step). Using it as
/// a culling range disables culling.
double scenario_diagonal(std::span<const Building> buildings, std::span<const ScenarioStep> steps);

}  // namespace v2xemu
