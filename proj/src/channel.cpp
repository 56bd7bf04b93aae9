// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include "v2xemu/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "v2xemu/errors.hpp"

namespace v2xemu {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) {
        throw DomainError(std::string(what) + " must be > 0, got " + std::to_string(v));
    }
}

}  // namespace

void RadioConfig::validate() const {
    if (!(carrier_freq > 0.0)) {
        throw std::invalid_argument("radio.carrier_freq must be > 0");
    }
    if (!(shadowing_std >= 0.0)) {
        throw std::invalid_argument("radio.shadowing_std must be >= 0");
    }
    if (!(decorrelation_distance > 0.0)) {
        throw std::invalid_argument("radio.decorrelation_distance must be > 0");
    }
}

double path_loss_los(double d3d, double fc_ghz) {
    require_positive(d3d, "d3d");
    require_positive(fc_ghz, "fc");
    return 38.77 + 16.7 * std::log10(d3d) + 18.2 * std::log10(fc_ghz);
}

double path_loss_nlosb(double d3d, double fc_ghz) {
    require_positive(d3d, "d3d");
    require_positive(fc_ghz, "fc");
    return 36.85 + 30.0 * std::log10(d3d) + 18.9 * std::log10(fc_ghz);
}

double wavelength(double fc_ghz) {
    require_positive(fc_ghz, "fc");
    return kSpeedOfLight / (fc_ghz * 1e9);
}

double fresnel_radius(double d1, double d2, double fc_ghz) {
    require_positive(d1, "d1");
    require_positive(d2, "d2");
    return std::sqrt(wavelength(fc_ghz) * d1 * d2 / (d1 + d2));
}

double link_height_at(double h_a, double h_b, double d_from_a, double d_from_b) {
    const double total = d_from_a + d_from_b;
    if (!(total > 0.0)) {
        return h_a;
    }
    return h_a + (h_b - h_a) * (d_from_a / total);
}

double diffraction_parameter(double h_obstacle, double h_link_at_blocker, double d1, double d2, double fc_ghz) {
    const double h = h_obstacle - h_link_at_blocker;
    return std::numbers::sqrt2 * h / fresnel_radius(d1, d2, fc_ghz);
}

double nlosv_extra_loss(double h_obstacle, double h_link_at_blocker, double d1, double d2, double fc_ghz) {
    const double nu = diffraction_parameter(h_obstacle, h_link_at_blocker, d1, d2, fc_ghz);
    if (nu <= 0.7) {
        return 0.0;
    }
    const double v = nu - 0.1;
    return 6.9 + 20.0 * std::log10(std::sqrt(v * v + 1.0) + v);
}

LinkBudget assess_link(LinkCondition condition, double distance_3d, const std::optional<NlosvInput>& nlosv,
                       const RadioConfig& radio, double shadowing_db) {
    LinkBudget b;
    switch (condition) {
        case LinkCondition::LOS:
            b.path_loss = path_loss_los(distance_3d, radio.carrier_freq);
            break;
        case LinkCondition::NLOSb:
            b.path_loss = path_loss_nlosb(distance_3d, radio.carrier_freq);
            break;
        case LinkCondition::NLOSv: {
            if (!nlosv) {
                throw ContractViolation("NLOSv link assessed without blocker geometry");
            }
            const auto& g = nlosv->blocker;
            // The blocker is d_to_target from the transmitter, d_to_ego from the receiver.
            const double h_link =
                link_height_at(nlosv->target_antenna_height, nlosv->ego_antenna_height, g.to_target, g.to_ego);
            b.path_loss = path_loss_los(distance_3d, radio.carrier_freq) +
                          nlosv_extra_loss(g.height, h_link, g.to_target, g.to_ego, radio.carrier_freq);
            break;
        }
    }
    b.shadowing = shadowing_db;
    b.rx_power = radio.tx_power - b.path_loss - b.shadowing;
    b.delivered = b.rx_power >= radio.sensitivity;
    return b;
}

double correlate(double previous, double rho, double innovation) {
    return rho * previous + std::sqrt(1.0 - rho * rho) * innovation;
}

ShadowingState::ShadowingState(std::uint64_t seed, double shadowing_std, double decorrelation_distance,
                               double eviction_horizon)
    : seed_(seed), std_(shadowing_std), decorrelation_(decorrelation_distance), horizon_(eviction_horizon) {
    if (!(decorrelation_distance > 0.0)) {
        throw std::invalid_argument("decorrelation distance must be > 0");
    }
    if (!(shadowing_std >= 0.0)) {
        throw std::invalid_argument("shadowing std must be >= 0");
    }
}

double ShadowingState::update(std::string_view target_id, Position ego, Position target, double now) {
    auto it = links_.find(std::string(target_id));
    if (it == links_.end()) {
        Link link;
        link.rng = make_engine(seed_, "shadowing", target_id);
        link.normal = std::normal_distribution<double>(0.0, 1.0);
        link.value = std_ * link.normal(link.rng);
        link.last_ego = ego;
        link.last_target = target;
        link.last_seen = now;
        return links_.emplace(std::string(target_id), std::move(link)).first->second.value;
    }
    Link& link = it->second;
    const double moved = distance(link.last_ego, ego) + distance(link.last_target, target);
    if (moved > 0.0) {
        const double rho = std::exp(-moved / decorrelation_);
        link.value = correlate(link.value, rho, std_ * link.normal(link.rng));
    }
    link.last_ego = ego;
    link.last_target = target;
    link.last_seen = now;
    return link.value;
}

void ShadowingState::evict(double now) {
    std::erase_if(links_, [&](const auto& kv) { return now - kv.second.last_seen > horizon_; });
}

std::optional<double> ShadowingState::value(std::string_view target_id) const {
    auto it = links_.find(std::string(target_id));
    if (it == links_.end()) {
        return std::nullopt;
    }
    return it->second.value;
}

}  // namespace v2xemu
