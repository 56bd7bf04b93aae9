// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include "v2xemu/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "v2xemu/errors.hpp"

namespace v2xemu {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) {
        throw ConfigError("config: '" + where + "' must be an object");
    }
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) {
        throw ConfigError("config: '" + where + "' must be a number");
    }
    return j.get<double>();
}

double range_value(const json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return parse_range(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError("config: '" + where + "': " + e.what());
        }
    }
    return number(j, where);
}

json range_to_json(double r) {
    return std::isinf(r) ? json("inf") : json(r);
}

// Calls `handle(key, value)` for each member; throws on keys `handle` rejects.
template <typename F>
void for_members(const json& obj, const std::string& section, F&& handle) {
    require_object(obj, section.empty() ? "<root>" : section);
    for (const auto& [key, value] : obj.items()) {
        const std::string path = section.empty() ? key : section + "." + key;
        if (!handle(key, value, path)) {
            throw ConfigError("config: unknown key '" + path + "'");
        }
    }
}

GnssConfig gnss_from(const json& obj, const std::string& section, GnssConfig g) {
    for_members(obj, section, [&](const std::string& key, const json& v, const std::string& path) {
        if (key == "sigma") {
            g.sigma = number(v, path);
        } else if (key == "t_corr") {
            g.t_corr = number(v, path);
        } else {
            return false;
        }
        return true;
    });
    return g;
}

}  // namespace

double parse_range(std::string_view token) {
    if (token == "inf" || token == "diag" || token == "diagonal") {
        return kInf;
    }
    double v = 0.0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc() || ptr != end || !(v > 0.0)) {
        throw std::invalid_argument("invalid range '" + std::string(token) + "' (positive meters or 'inf')");
    }
    return v;
}

EmulatorConfig config_from_json(const json& doc) {
    EmulatorConfig cfg;
    bool ego_given = false;
    double lat = cfg.scenario.origin.lat();
    double lon = cfg.scenario.origin.lon();
    for_members(doc, "", [&](const std::string& key, const json& v, const std::string& path) {
        if (key == "scenario") {
            for_members(v, path, [&](const std::string& k, const json& x, const std::string& p) {
                if (k == "origin_lat") {
                    lat = number(x, p);
                } else if (k == "origin_lon") {
                    lon = number(x, p);
                } else if (k == "step_period") {
                    cfg.scenario.step_period = number(x, p);
                } else if (k == "antenna_height_offset") {
                    cfg.scenario.antenna_height_offset = number(x, p);
                } else {
                    return false;
                }
                return true;
            });
        } else if (key == "ranges") {
            for_members(v, path, [&](const std::string& k, const json& x, const std::string& p) {
                if (k == "r_b") {
                    cfg.ranges.r_b = range_value(x, p);
                } else if (k == "r_v") {
                    cfg.ranges.r_v = range_value(x, p);
                } else {
                    return false;
                }
                return true;
            });
        } else if (key == "radio") {
            for_members(v, path, [&](const std::string& k, const json& x, const std::string& p) {
                if (k == "tx_power") {
                    cfg.radio.tx_power = number(x, p);
                } else if (k == "sensitivity") {
                    cfg.radio.sensitivity = number(x, p);
                } else if (k == "carrier_freq") {
                    cfg.radio.carrier_freq = number(x, p);
                } else if (k == "shadowing_std") {
                    cfg.radio.shadowing_std = number(x, p);
                } else if (k == "decorrelation_distance") {
                    cfg.radio.decorrelation_distance = number(x, p);
                } else {
                    return false;
                }
                return true;
            });
        } else if (key == "gnss") {
            cfg.gnss = gnss_from(v, path, cfg.gnss);
        } else if (key == "gnss_ego") {
            ego_given = true;
        } else if (key == "nlosv_threshold") {
            cfg.nlosv_threshold = number(v, path);
        } else if (key == "workers") {
            if (!v.is_number_integer() || v.get<long long>() < 1) {
                throw ConfigError("config: 'workers' must be a positive integer");
            }
            cfg.workers = v.get<unsigned>();
        } else if (key == "seed") {
            if (!v.is_number_integer()) {
                throw ConfigError("config: 'seed' must be an integer");
            }
            cfg.seed = v.is_number_unsigned() ? v.get<std::uint64_t>()
                                              : static_cast<std::uint64_t>(v.get<std::int64_t>());
        } else if (key == "cell_size") {
            cfg.cell_size = number(v, path);
        } else if (key == "shadowing_eviction") {
            cfg.shadowing_eviction = number(v, path);
        } else if (key == "budget") {
            if (v.is_null()) {
                cfg.budget.reset();
            } else {
                cfg.budget = number(v, path);
            }
        } else if (key == "kernels") {
            if (!v.is_string()) {
                throw ConfigError("config: 'kernels' must be a string");
            }
            cfg.kernel_backend = v.get<std::string>();
        } else {
            return false;
        }
        return true;
    });
    cfg.scenario.origin = GeoOrigin(lat, lon);
    cfg.gnss_ego = ego_given ? gnss_from(doc.at("gnss_ego"), "gnss_ego", cfg.gnss) : cfg.gnss;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

json config_to_json(const EmulatorConfig& c) {
    return json{
        {"scenario",
         {{"origin_lat", c.scenario.origin.lat()},
          {"origin_lon", c.scenario.origin.lon()},
          {"step_period", c.scenario.step_period},
          {"antenna_height_offset", c.scenario.antenna_height_offset}}},
        {"ranges", {{"r_b", range_to_json(c.ranges.r_b)}, {"r_v", range_to_json(c.ranges.r_v)}}},
        {"radio",
         {{"tx_power", c.radio.tx_power},
          {"sensitivity", c.radio.sensitivity},
          {"carrier_freq", c.radio.carrier_freq},
          {"shadowing_std", c.radio.shadowing_std},
          {"decorrelation_distance", c.radio.decorrelation_distance}}},
        {"gnss", {{"sigma", c.gnss.sigma}, {"t_corr", c.gnss.t_corr}}},
        {"gnss_ego", {{"sigma", c.gnss_ego.sigma}, {"t_corr", c.gnss_ego.t_corr}}},
        {"nlosv_threshold", c.nlosv_threshold},
        {"workers", c.workers},
        {"seed", c.seed},
        {"cell_size", c.cell_size},
        {"shadowing_eviction", c.shadowing_eviction},
        {"budget", c.budget ? json(*c.budget) : json(nullptr)},
        {"kernels", c.kernel_backend},
    };
}

void apply_override(json& doc, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
    }
    const std::string_view path = assignment.substr(0, eq);
    const std::string value(assignment.substr(eq + 1));

    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;
    }

    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key(path.substr(start, dot == std::string_view::npos ? path.npos : dot - start));
        if (key.empty()) {
            throw ConfigError("override '" + std::string(assignment) + "' has an empty key segment");
        }
        if (node->is_null()) {
            *node = json::object();
        }
        if (!node->is_object()) {
            throw ConfigError("override '" + std::string(assignment) + "' descends into a non-object");
        }
        if (dot == std::string_view::npos) {
            (*node)[key] = parsed;
            return;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
}

EmulatorConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides) {
    json doc = json::object();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) {
            throw ConfigError(path.string() + ": cannot open config file");
        }
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError(path.string() + ": " + e.what());
        }
    }
    for (const auto& o : overrides) {
        apply_override(doc, o);
    }
    return config_from_json(doc);
}

}  // namespace v2xemu
