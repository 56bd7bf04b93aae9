// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Urban V2X path loss (ETSI TR 103 257-1), knife-edge NLOSv diffraction and
// distance-correlated log-normal shadowing.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "v2xemu/geometry.hpp"
#include "v2xemu/rng.hpp"
#include "v2xemu/scenario.hpp"

namespace v2xemu {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct RadioConfig {
    double tx_power = 23.0;      // dBm
    double sensitivity = -82.0;  // dBm
    double carrier_freq = 5.9;   // GHz
    double shadowing_std = 3.0;  // dB
    double decorrelation_distance = 10.0;  // m

    /// Throws std::invalid_argument on carrier_freq <= 0, shadowing_std < 0
    /// or decorrelation_distance <= 0.
    void validate() const;
};

struct LinkBudget {
    double path_loss = 0.0;  // dB
    double shadowing = 0.0;  // dB
    double rx_power = 0.0;   // dBm
    bool delivered = false;
};

/// 38.77 + 16.7 log10(d3d) + 18.2 log10(fc). Throws DomainError if d3d <= 0
/// or fc <= 0.
double path_loss_los(double d3d, double fc_ghz);

/// 36.85 + 30 log10(d3d) + 18.9 log10(fc).
double path_loss_nlosb(double d3d, double fc_ghz);

/// Wavelength in meters for a carrier in GHz.
double wavelength(double fc_ghz);

/// First Fresnel zone radius sqrt(lambda d1 d2 / (d1 + d2)).
double fresnel_radius(double d1, double d2, double fc_ghz);

/// Height of the straight antenna-to-antenna line above ground at a point
/// `d_from_a` from antenna A and `d_from_b` from antenna B.
double link_height_at(double h_a, double h_b, double d_from_a, double d_from_b);

/// Extra NLOSv attenuation of a blocking vehicle:
///   nu = sqrt(2) H / r_f with H = h_obstacle - h_link_at_blocker,
///   0 for nu <= 0.7, else 6.9 + 20 log10(sqrt((nu - 0.1)^2 + 1) + nu - 0.1).
/// The model jumps from 0 to ~11.84 dB at nu = 0.7.
/// Throws DomainError on d1 <= 0 or d2 <= 0.
double nlosv_extra_loss(double h_obstacle, double h_link_at_blocker, double d1, double d2, double fc_ghz);

/// Diffraction parameter nu used by nlosv_extra_loss.
double diffraction_parameter(double h_obstacle, double h_link_at_blocker, double d1, double d2, double fc_ghz);

/// Heights needed to evaluate an NLOSv link.
struct NlosvInput {
    BlockerGeometry blocker;
    double ego_antenna_height = 0.0;
    double target_antenna_height = 0.0;
};

/// Path loss selected by condition; NLOSv is LOS loss plus diffraction loss.
/// rx = tx - path_loss - shadowing; delivered iff rx >= sensitivity.
/// Throws ContractViolation when condition is NLOSv and `nlosv` is empty,
/// DomainError when distance_3d <= 0.
LinkBudget assess_link(LinkCondition condition, double distance_3d, const std::optional<NlosvInput>& nlosv,
                       const RadioConfig& radio, double shadowing_db);

/// One AR(1) step of a unit-free Gauss-Markov process: rho * prev +
/// sqrt(1 - rho^2) * innovation.
double correlate(double previous, double rho, double innovation);

/// Per-link spatially correlated shadowing.
///
/// Each link owns an RNG stream derived from (seed, target id), so a value
/// never depends on which other links exist or on update order. The moved
/// distance of a link is the sum of ego and target displacements since its
/// last update; rho = exp(-moved / decorrelation_distance).
class ShadowingState {
public:
    ShadowingState(std::uint64_t seed, double shadowing_std, double decorrelation_distance,
                   double eviction_horizon = 5.0);

    /// Advances (or initializes) the link to `target_id` and returns its
    /// shadowing in dB. `now` drives eviction only.
    double update(std::string_view target_id, Position ego, Position target, double now);

    /// Drops links not updated within the eviction horizon of `now`; they are
    /// re-initialized with a fresh draw if seen again.
    void evict(double now);

    std::size_t size() const noexcept { return links_.size(); }
    std::optional<double> value(std::string_view target_id) const;

private:
    struct Link {
        double value = 0.0;
        Position last_ego;
        Position last_target;
        double last_seen = 0.0;
        RngEngine rng;
        std::normal_distribution<double> normal;
    };

    std::uint64_t seed_;
    double std_;
    double decorrelation_;
    double horizon_;
    std::unordered_map<std::string, Link> links_;
};

}  // namespace v2xemu
