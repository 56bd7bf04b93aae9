// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include "v2xemu/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "v2xemu/errors.hpp"

namespace v2xemu {

using nlohmann::json;

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string locate(std::string_view source, std::size_t line_no) {
    std::string s(source);
    if (line_no > 0) {
        s += ":" + std::to_string(line_no);
    }
    return s;
}

double require_number(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(where + ": missing field '" + key + "'");
    }
    if (!it->is_number()) {
        throw ParseError(where + ": field '" + key + "' must be a number");
    }
    double v = it->get<double>();
    if (!std::isfinite(v)) {
        throw ParseError(where + ": field '" + key + "' is not finite");
    }
    return v;
}

double optional_positive(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) {
        return fallback;
    }
    double v = require_number(obj, key, where);
    if (!(v > 0.0)) {
        throw ParseError(where + ": field '" + key + "' must be > 0");
    }
    return v;
}

VehicleState parse_vehicle(const json& v, const std::string& where) {
    if (!v.is_object()) {
        throw ParseError(where + ": vehicle must be an object");
    }
    VehicleState s;
    auto id = v.find("id");
    if (id == v.end() || !id->is_string()) {
        throw ParseError(where + ": vehicle 'id' must be a string");
    }
    s.id = id->get<std::string>();
    const std::string at = where + " (vehicle '" + s.id + "')";
    s.position = {require_number(v, "x", at), require_number(v, "y", at)};
    s.speed = require_number(v, "speed", at);
    s.heading = normalize_angle(require_number(v, "heading", at));
    s.length = optional_positive(v, "length", VehicleDefaults::kLength, at);
    s.width = optional_positive(v, "width", VehicleDefaults::kWidth, at);
    s.height = optional_positive(v, "height", VehicleDefaults::kHeight, at);
    return s;
}

json vehicle_to_json(const VehicleState& s) {
    return json{{"id", s.id},         {"x", s.position.x},   {"y", s.position.y},
                {"speed", s.speed},   {"heading", s.heading}, {"length", s.length},
                {"width", s.width},   {"height", s.height}};
}

double orient(Position a, Position b, Position c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool on_segment(Position a, Position b, Position p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

// Closed-segment intersection, used only for polygon validation.
bool segments_touch(Position a, Position b, Position c, Position d) {
    const double o1 = orient(a, b, c);
    const double o2 = orient(a, b, d);
    const double o3 = orient(c, d, a);
    const double o4 = orient(c, d, b);
    if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
        return true;
    }
    return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
           (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

}  // namespace

GeoOrigin::GeoOrigin(double lat_deg, double lon_deg)
    : lat_(lat_deg),
      lon_(lon_deg),
      meters_per_deg_lat_(kEarthRadius * kDegToRad),
      meters_per_deg_lon_(kEarthRadius * kDegToRad * std::cos(lat_deg * kDegToRad)) {}

GeoPosition GeoOrigin::to_geodetic(Position p) const {
    return {lat_ + p.y / meters_per_deg_lat_, lon_ + p.x / meters_per_deg_lon_};
}

Position GeoOrigin::to_planar(GeoPosition g) const {
    return {(g.lon - lon_) * meters_per_deg_lon_, (g.lat - lat_) * meters_per_deg_lat_};
}

double normalize_angle(double radians) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(radians, two_pi);
    if (r < 0.0) {
        r += two_pi;
    }
    // fmod of a tiny negative value can round back up to exactly 2pi
    return r >= two_pi ? 0.0 : r;
}

double distance(Position a, Position b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

void validate_building(const Building& b) {
    const auto& v = b.vertices;
    const std::size_t n = v.size();
    if (n < 3) {
        throw InvalidPolygonError(b.id, "needs at least 3 vertices, got " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(v[i].x) || !std::isfinite(v[i].y)) {
            throw InvalidPolygonError(b.id, "vertex " + std::to_string(i) + " is not finite");
        }
        if (v[i] == v[(i + 1) % n]) {
            throw InvalidPolygonError(b.id, "zero-length edge at vertex " + std::to_string(i));
        }
    }
    // Non-adjacent edges must not touch; adjacent edges may only share their
    // common vertex (no fold-back).
    for (std::size_t i = 0; i < n; ++i) {
        const Position a = v[i];
        const Position bb = v[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const Position c = v[j];
            const Position d = v[(j + 1) % n];
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                const Position shared = (j == i + 1) ? bb : a;
                const Position p = (j == i + 1) ? a : bb;
                const Position q = (j == i + 1) ? d : c;
                if (orient(p, shared, q) == 0.0 &&
                    ((q.x - shared.x) * (p.x - shared.x) + (q.y - shared.y) * (p.y - shared.y)) > 0.0) {
                    throw InvalidPolygonError(b.id, "edges " + std::to_string(i) + " and " + std::to_string(j) +
                                                        " fold back onto each other");
                }
                continue;
            }
            if (segments_touch(a, bb, c, d)) {
                throw InvalidPolygonError(b.id, "edges " + std::to_string(i) + " and " + std::to_string(j) +
                                                    " intersect");
            }
        }
    }
}

std::vector<Building> parse_buildings(std::string_view json_text, std::string_view source) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(source) + ": " + e.what());
    }
    if (!doc.is_array()) {
        throw ParseError(std::string(source) + ": top-level value must be an array of buildings");
    }
    std::vector<Building> out;
    out.reserve(doc.size());
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const json& rec = doc[i];
        const std::string where = std::string(source) + ": building[" + std::to_string(i) + "]";
        if (!rec.is_object()) {
            throw ParseError(where + ": must be an object");
        }
        auto id = rec.find("id");
        if (id == rec.end() || !id->is_string()) {
            throw ParseError(where + ": 'id' must be a string");
        }
        Building b;
        b.id = id->get<std::string>();
        auto verts = rec.find("vertices");
        if (verts == rec.end() || !verts->is_array()) {
            throw ParseError(where + ": 'vertices' must be an array");
        }
        for (const json& p : *verts) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                throw ParseError(where + ": each vertex must be [x, y]");
            }
            b.vertices.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        validate_building(b);
        if (!seen.insert(b.id).second) {
            throw InvalidPolygonError(b.id, "duplicate building id");
        }
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<Building> load_buildings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string() + ": cannot open file");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_buildings(ss.str(), path.string());
}

std::string serialize_buildings(std::span<const Building> buildings) {
    json arr = json::array();
    for (const auto& b : buildings) {
        json verts = json::array();
        for (const auto& p : b.vertices) {
            verts.push_back({p.x, p.y});
        }
        arr.push_back({{"id", b.id}, {"vertices", std::move(verts)}});
    }
    return arr.dump();
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string() + ": cannot open file");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError(path.string() + ": scenario config must be an object");
    }
    ScenarioConfig cfg;
    double lat = cfg.origin.lat();
    double lon = cfg.origin.lon();
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_number()) {
            throw ParseError(path.string() + ": '" + key + "' must be a number");
        }
        const double v = value.get<double>();
        if (key == "origin_lat") {
            lat = v;
        } else if (key == "origin_lon") {
            lon = v;
        } else if (key == "step_period") {
            if (!(v > 0.0)) {
                throw ParseError(path.string() + ": step_period must be > 0");
            }
            cfg.step_period = v;
        } else if (key == "antenna_height_offset") {
            cfg.antenna_height_offset = v;
        } else {
            throw ParseError(path.string() + ": unknown key '" + key + "'");
        }
    }
    cfg.origin = GeoOrigin(lat, lon);
    return cfg;
}

std::string serialize_step(const ScenarioStep& step) {
    json vehicles = json::array();
    for (const auto& v : step.others) {
        vehicles.push_back(vehicle_to_json(v));
    }
    json line{{"t", step.timestamp}, {"ego", vehicle_to_json(step.ego)}, {"vehicles", std::move(vehicles)}};
    return line.dump();
}

ScenarioStep parse_step(std::string_view line, std::size_t line_no) {
    const std::string where = locate("trace", line_no);
    json doc;
    try {
        doc = json::parse(line.begin(), line.end());
    } catch (const json::parse_error& e) {
        throw ParseError(where + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError(where + ": step must be an object");
    }
    ScenarioStep step;
    step.timestamp = require_number(doc, "t", where);
    auto ego = doc.find("ego");
    if (ego == doc.end() || ego->is_null()) {
        throw TraceError(where + ": step at t=" + std::to_string(step.timestamp) + " has no ego");
    }
    step.ego = parse_vehicle(*ego, where + " ego");
    auto vehicles = doc.find("vehicles");
    if (vehicles != doc.end()) {
        if (!vehicles->is_array()) {
            throw ParseError(where + ": 'vehicles' must be an array");
        }
        step.others.reserve(vehicles->size());
        for (std::size_t i = 0; i < vehicles->size(); ++i) {
            step.others.push_back(parse_vehicle((*vehicles)[i], where + " vehicles[" + std::to_string(i) + "]"));
            if (step.others.back().id == step.ego.id) {
                throw TraceError(where + ": ego id '" + step.ego.id + "' also listed among vehicles");
            }
        }
    }
    return step;
}

TraceReader::TraceReader(const std::filesystem::path& path)
    : in_(std::make_unique<std::ifstream>(path)), source_(path.string()) {
    if (!*in_) {
        throw ParseError(source_ + ": cannot open file");
    }
}

TraceReader::TraceReader(std::unique_ptr<std::istream> in, std::string source_name)
    : in_(std::move(in)), source_(std::move(source_name)) {}

std::optional<ScenarioStep> TraceReader::next() {
    while (std::getline(*in_, line_)) {
        ++line_no_;
        if (line_.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        ScenarioStep step;
        try {
            step = parse_step(line_, line_no_);
        } catch (const ParseError& e) {
            throw ParseError(source_ + ": " + e.what());
        } catch (const TraceError& e) {
            throw TraceError(source_ + ": " + e.what());
        }
        if (last_t_ && !(step.timestamp > *last_t_)) {
            std::ostringstream msg;
            msg << source_ << ":" << line_no_ << ": non-monotone timestamp " << step.timestamp
                << " after " << *last_t_;
            throw TraceError(msg.str());
        }
        last_t_ = step.timestamp;
        return step;
    }
    return std::nullopt;
}

std::optional<ScenarioStep> VectorStepSource::next() {
    if (pos_ >= steps_.size()) {
        return std::nullopt;
    }
    return steps_[pos_++];
}

std::vector<ScenarioStep> load_trace(const std::filesystem::path& path) {
    TraceReader reader(path);
    std::vector<ScenarioStep> steps;
    while (auto s = reader.next()) {
        steps.push_back(std::move(*s));
    }
    return steps;
}

void write_trace(const std::filesystem::path& path, std::span<const ScenarioStep> steps) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError(path.string() + ": cannot open file for writing");
    }
    for (const auto& s : steps) {
        out << serialize_step(s) << '\n';
    }
}

double scenario_diagonal(std::span<const Building> buildings, std::span<const ScenarioStep> steps) {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x;
    double max_x = -min_x;
    double max_y = -min_x;
    auto add = [&](Position p) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    };
    for (const auto& b : buildings) {
        for (const auto& p : b.vertices) {
            add(p);
        }
    }
    for (const auto& s : steps) {
        add(s.ego.position);
        for (const auto& v : s.others) {
            add(v.position);
        }
    }
    if (min_x > max_x) {
        return 1.0;
    }
    const double d = std::hypot(max_x - min_x, max_y - min_y);
    return d * (1.0 + 1e-9) + 1.0;
}

}  // namespace v2xemu
