// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>

#include "v2xemu/rng.hpp"
#include "v2xemu/scenario.hpp"

namespace v2xemu {

/// Correlated positioning-error parameters.
///
/// `sigma` is the standard deviation of the signed magnitude innovations.
/// The stationary RMS of the radial error equals sigma, so the default is
/// taken directly from the 2.32 m distance-RMS of a static field
/// measurement. Recalibrate here if a different mapping is wanted.
struct GnssConfig {
    double sigma = 2.32;   // m
    double t_corr = 10.0;  // s

    void validate() const;
};

/// Magnitude/angle pair of the error process. `theta` is not wrapped.
struct GnssError {
    double mu = 0.0;
    double theta = 0.0;
};

/// One step of the recursion, with a = exp(-dt / t_corr):
///   mu' = a mu + sqrt(1 - a^2) n_mu,  theta' = a theta + sqrt(1 - a^2) n_theta.
/// Pure; n_mu ~ N(0, sigma^2) and n_theta ~ U(0, 2pi) are supplied by the caller.
GnssError advance_error(GnssError previous, double dt, double t_corr, double n_mu, double n_theta);

/// Planar offset of magnitude mu at bearing theta (east += mu cos theta,
/// north += mu sin theta). Negative mu points the opposite way.
Position apply_error(Position exact, double mu, double theta);

/// Geodetic form: converts through the planar frame of `origin`.
GeoPosition apply_error(GeoPosition exact, double mu, double theta, const GeoOrigin& origin);

/// Per-node error processes with independent RNG streams derived from
/// (seed, stream name, node id).
class GnssErrorState {
public:
    GnssErrorState(GnssConfig config, std::uint64_t seed, std::string stream_name = "gnss");

    /// Advances the node's process to `now` and returns (mu, theta) with theta
    /// normalized to [0, 2pi). The first call for a node draws a fresh sample.
    /// Throws ClockRegressionError if `now` precedes the node's last update.
    GnssError update(std::string_view node_id, double now);

    const GnssConfig& config() const noexcept { return config_; }
    std::size_t size() const noexcept { return nodes_.size(); }

private:
    struct Node {
        GnssError error;  // raw theta
        double last_time = 0.0;
        RngEngine rng;
        std::normal_distribution<double> normal;
        std::uniform_real_distribution<double> angle;
    };

    GnssConfig config_;
    std::uint64_t seed_;
    std::string stream_;
    std::unordered_map<std::string, Node> nodes_;
};

/// Result of a static-receiver simulation.
struct StationaryReport {
    double rms = 0.0;        // RMS radial error, m
    double peak = 0.0;       // largest radial error, m
    std::size_t samples = 0;
};

/// Simulates a node parked at the origin for `duration` seconds sampled every
/// `step`, and reports the radial error statistics of the emitted fixes.
StationaryReport stationary_rms(const GnssConfig& config, double duration, double step, std::uint64_t seed);

}  // namespace v2xemu
