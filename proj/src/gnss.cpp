// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include "v2xemu/gnss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "v2xemu/errors.hpp"

namespace v2xemu {

void GnssConfig::validate() const {
    if (!(sigma >= 0.0)) {
        throw std::invalid_argument("gnss.sigma must be >= 0");
    }
    if (!(t_corr > 0.0)) {
        throw std::invalid_argument("gnss.t_corr must be > 0");
    }
}

GnssError advance_error(GnssError previous, double dt, double t_corr, double n_mu, double n_theta) {
    const double a = std::exp(-dt / t_corr);
    const double b = std::sqrt(1.0 - a * a);
    return {a * previous.mu + b * n_mu, a * previous.theta + b * n_theta};
}

Position apply_error(Position exact, double mu, double theta) {
    return {exact.x + mu * std::cos(theta), exact.y + mu * std::sin(theta)};
}

GeoPosition apply_error(GeoPosition exact, double mu, double theta, const GeoOrigin& origin) {
    return origin.to_geodetic(apply_error(origin.to_planar(exact), mu, theta));
}

GnssErrorState::GnssErrorState(GnssConfig config, std::uint64_t seed, std::string stream_name)
    : config_(config), seed_(seed), stream_(std::move(stream_name)) {
    config_.validate();
}

GnssError GnssErrorState::update(std::string_view node_id, double now) {
    auto it = nodes_.find(std::string(node_id));
    if (it == nodes_.end()) {
        Node node;
        node.rng = make_engine(seed_, stream_, node_id);
        node.normal = std::normal_distribution<double>(0.0, 1.0);
        node.angle = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi);
        node.error.mu = config_.sigma * node.normal(node.rng);
        node.error.theta = node.angle(node.rng);
        node.last_time = now;
        it = nodes_.emplace(std::string(node_id), std::move(node)).first;
    } else {
        Node& node = it->second;
        if (now < node.last_time) {
            std::ostringstream msg;
            msg << "gnss clock regression for node '" << node_id << "': " << now << " < " << node.last_time;
            throw ClockRegressionError(msg.str());
        }
        const double dt = now - node.last_time;
        if (dt > 0.0) {
            const double n_mu = config_.sigma * node.normal(node.rng);
            const double n_theta = node.angle(node.rng);
            node.error = advance_error(node.error, dt, config_.t_corr, n_mu, n_theta);
        }
        node.last_time = now;
    }
    return {it->second.error.mu, normalize_angle(it->second.error.theta)};
}

StationaryReport stationary_rms(const GnssConfig& config, double duration, double step, std::uint64_t seed) {
    if (!(step > 0.0) || !(duration >= step)) {
        throw std::invalid_argument("stationary_rms: need duration >= step > 0");
    }
    GnssErrorState state(config, seed, "gnss-diag");
    const auto n = static_cast<std::size_t>(std::floor(duration / step));
    StationaryReport r;
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const GnssError e = state.update("static", static_cast<double>(k) * step);
        const Position fix = apply_error(Position{}, e.mu, e.theta);
        const double radial = std::hypot(fix.x, fix.y);
        sum_sq += radial * radial;
        r.peak = std::max(r.peak, radial);
    }
    r.samples = n;
    r.rms = n > 0 ? std::sqrt(sum_sq / static_cast<double>(n)) : 0.0;
    return r;
}

}  // namespace v2xemu
