// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "v2xemu/channel.hpp"
#include "v2xemu/errors.hpp"

using namespace v2xemu;

// Reference values below were evaluated once with 40-digit arithmetic and
// frozen; the tolerance is 1e-9 dB throughout.
namespace {

constexpr double kTol = 1e-9;

double series_std(const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) {
        m += v;
    }
    m /= static_cast<double>(x.size());
    double s = 0.0;
    for (double v : x) {
        s += (v - m) * (v - m);
    }
    return std::sqrt(s / static_cast<double>(x.size()));
}

double lag_autocorrelation(const std::vector<double>& x, std::size_t k) {
    double m = 0.0;
    for (double v : x) {
        m += v;
    }
    m /= static_cast<double>(x.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        den += (x[i] - m) * (x[i] - m);
        if (i + k < x.size()) {
            num += (x[i] - m) * (x[i + k] - m);
        }
    }
    return num / den;
}

}  // namespace

TEST_CASE("LOS path loss") {
    CHECK(std::fabs(path_loss_los(1.0, 1.0) - 38.77) < kTol);
    CHECK(std::fabs(path_loss_los(100.0, 5.9) - 86.19950661188702) < kTol);
    CHECK(std::fabs(path_loss_los(10.0, 5.9) - 69.49950661188702) < kTol);
    CHECK(std::fabs(path_loss_los(100.0, 5.9) - path_loss_los(10.0, 5.9) - 16.7) < kTol);
}

TEST_CASE("NLOSb path loss") {
    CHECK(std::fabs(path_loss_nlosb(1.0, 1.0) - 36.85) < kTol);
    CHECK(std::fabs(path_loss_nlosb(100.0, 5.9) - 111.41910302003653) < kTol);
    CHECK(std::fabs(path_loss_nlosb(400.0, 5.9) - 129.4809027598754) < kTol);
}

TEST_CASE("path loss domain errors") {
    CHECK_THROWS_AS(path_loss_los(0.0, 5.9), DomainError);
    CHECK_THROWS_AS(path_loss_los(-1.0, 5.9), DomainError);
    CHECK_THROWS_AS(path_loss_nlosb(10.0, 0.0), DomainError);
    CHECK_THROWS_AS(nlosv_extra_loss(2.0, 1.0, 0.0, 10.0, 5.9), DomainError);
    CHECK_THROWS_AS(nlosv_extra_loss(2.0, 1.0, 10.0, -1.0, 5.9), DomainError);
}

TEST_CASE("Fresnel radius and diffraction parameter") {
    CHECK(std::fabs(wavelength(5.9) - 0.0508122810169491525) < 1e-15);
    CHECK(std::fabs(fresnel_radius(50, 50, 5.9) - 1.1270789792307054) < 1e-12);
    CHECK(std::fabs(diffraction_parameter(2.0, 1.5, 50, 50, 5.9) - 0.6273799744443708) < 1e-12);
}

TEST_CASE("NLOSv extra loss") {
    SUBCASE("blocker below the link line") {
        CHECK(nlosv_extra_loss(1.0, 1.6, 50, 50, 5.9) == 0.0);
        CHECK(nlosv_extra_loss(1.6, 1.6, 50, 50, 5.9) == 0.0);
    }
    SUBCASE("H = 0.5 m, 50/50 m is below the branch point") {
        CHECK(nlosv_extra_loss(2.0, 1.5, 50, 50, 5.9) == 0.0);
    }
    SUBCASE("just above nu = 0.7") {
        const double rf = fresnel_radius(50, 50, 5.9);
        const double h = 0.7 * (1.0 + 1e-13) * rf / std::numbers::sqrt2;
        CHECK(diffraction_parameter(h, 0.0, 50, 50, 5.9) > 0.7);
        CHECK(std::fabs(nlosv_extra_loss(h, 0.0, 50, 50, 5.9) - 11.840750293771823) < kTol);
        const double below = 0.7 * (1.0 - 1e-13) * rf / std::numbers::sqrt2;
        CHECK(nlosv_extra_loss(below, 0.0, 50, 50, 5.9) == 0.0);
    }
    SUBCASE("H = 2 m, 50/50 m") {
        CHECK(std::fabs(diffraction_parameter(3.5, 1.5, 50, 50, 5.9) - 2.5095198977774834) < 1e-12);
        CHECK(std::fabs(nlosv_extra_loss(3.5, 1.5, 50, 50, 5.9) - 20.911149829317946) < kTol);
    }
    SUBCASE("H = 1 m, 30/70 m") {
        CHECK(std::fabs(diffraction_parameter(2.6, 1.6, 30, 70, 5.9) - 1.369055343995614) < 1e-12);
        CHECK(std::fabs(nlosv_extra_loss(2.6, 1.6, 30, 70, 5.9) - 16.102193685521226) < kTol);
    }
}

TEST_CASE("link height interpolation") {
    CHECK(link_height_at(1.0, 3.0, 0.0, 10.0) == 1.0);
    CHECK(link_height_at(1.0, 3.0, 10.0, 0.0) == 3.0);
    CHECK(link_height_at(1.0, 3.0, 25.0, 75.0) == doctest::Approx(1.5));
}

TEST_CASE("assess_link examples") {
    RadioConfig radio;
    auto los = assess_link(LinkCondition::LOS, 100.0, std::nullopt, radio, 0.0);
    CHECK(std::fabs(los.rx_power - (23.0 - 86.19950661188702)) < kTol);
    CHECK(los.delivered);

    auto nlosb = assess_link(LinkCondition::NLOSb, 400.0, std::nullopt, radio, 0.0);
    CHECK(std::fabs(nlosb.rx_power - -106.4809027598754) < kTol);
    CHECK_FALSE(nlosb.delivered);

    // rx exactly at sensitivity is delivered
    RadioConfig edge_radio = radio;
    edge_radio.sensitivity = los.rx_power;
    CHECK(assess_link(LinkCondition::LOS, 100.0, std::nullopt, edge_radio, 0.0).delivered);
    edge_radio.sensitivity = std::nextafter(los.rx_power, 0.0);
    CHECK_FALSE(assess_link(LinkCondition::LOS, 100.0, std::nullopt, edge_radio, 0.0).delivered);

    CHECK_THROWS_AS(assess_link(LinkCondition::NLOSv, 100.0, std::nullopt, radio, 0.0), ContractViolation);
    CHECK_THROWS_AS(assess_link(LinkCondition::LOS, 0.0, std::nullopt, radio, 0.0), DomainError);
}

TEST_CASE("assess_link NLOSv") {
    RadioConfig radio;
    NlosvInput in;
    in.blocker = {50.0, 50.0, 3.6};
    in.ego_antenna_height = 1.6;
    in.target_antenna_height = 1.6;
    const auto b = assess_link(LinkCondition::NLOSv, 100.0, in, radio, 0.0);
    CHECK(std::fabs(b.path_loss - (86.19950661188702 + 20.911149829317946)) < kTol);

    in.blocker.height = 1.0;  // below the link: reduces to LOS exactly
    const auto low = assess_link(LinkCondition::NLOSv, 100.0, in, radio, 0.0);
    CHECK(low.path_loss == path_loss_los(100.0, 5.9));
}

TEST_CASE("property: monotonic and ordered path loss") {
    double prev_los = -1e300, prev_nlosb = -1e300;
    for (double d = 2.0; d < 5000.0; d *= 1.01) {
        const double los = path_loss_los(d, 5.9);
        const double nlosb = path_loss_nlosb(d, 5.9);
        REQUIRE(los > prev_los);
        REQUIRE(nlosb > prev_nlosb);
        REQUIRE(nlosb > los);
        prev_los = los;
        prev_nlosb = nlosb;
    }
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double d1 = 1.0 + 300.0 * u(rng), d2 = 1.0 + 300.0 * u(rng);
        const double extra = nlosv_extra_loss(4.0 * u(rng), 0.5 + 2.0 * u(rng), d1, d2, 5.9);
        REQUIRE(extra >= 0.0);
    }
}

TEST_CASE("LOS delivery radius") {
    // bisection on 23 - PL_LOS(d) = -82
    double lo = 1.0, hi = 1e5;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (23.0 - path_loss_los(mid, 5.9) >= -82.0 ? lo : hi) = mid;
    }
    CHECK(lo == doctest::Approx(1335.912603577917).epsilon(1e-12));
    RadioConfig radio;
    CHECK(assess_link(LinkCondition::LOS, 1335.0, std::nullopt, radio, 0.0).delivered);
    CHECK_FALSE(assess_link(LinkCondition::LOS, 1337.0, std::nullopt, radio, 0.0).delivered);
}

TEST_CASE("shadowing: zero displacement keeps the value, first draw is fresh") {
    ShadowingState s(7, 3.0, 10.0);
    const double v0 = s.update("a", {0, 0}, {10, 0}, 0.0);
    CHECK(s.update("a", {0, 0}, {10, 0}, 0.1) == v0);
    const double v1 = s.update("a", {1, 0}, {10, 0}, 0.2);
    CHECK(v1 != v0);
    ShadowingState zero(7, 0.0, 10.0);
    CHECK(zero.update("a", {0, 0}, {1, 0}, 0.0) == 0.0);
}

TEST_CASE("shadowing: per-link streams do not depend on other links") {
    ShadowingState a(11, 3.0, 10.0);
    ShadowingState b(11, 3.0, 10.0);
    std::vector<double> xa, xb;
    for (int k = 0; k < 50; ++k) {
        const Position e{static_cast<double>(k), 0};
        xa.push_back(a.update("link", e, {100, 0}, k * 0.1));
        b.update("other", e, {0, 100}, k * 0.1);
        xb.push_back(b.update("link", e, {100, 0}, k * 0.1));
    }
    CHECK(xa == xb);
}

TEST_CASE("shadowing: eviction") {
    ShadowingState s(1, 3.0, 10.0, 5.0);
    s.update("a", {0, 0}, {1, 0}, 0.0);
    s.update("b", {0, 0}, {1, 0}, 4.0);
    s.evict(5.0);
    CHECK(s.size() == 2);
    s.evict(5.5);
    CHECK(s.size() == 1);
    CHECK_FALSE(s.value("a"));
    CHECK(s.value("b"));
}

TEST_CASE("shadowing statistics at constant displacement") {
    ShadowingState s(2024, 3.0, 10.0);
    std::vector<double> x;
    x.reserve(100000);
    for (int k = 0; k < 100000; ++k) {
        // ego moves 10 m per update, target fixed
        x.push_back(s.update("l", {10.0 * k, 0}, {0, 50}, 0.0));
    }
    CHECK(std::fabs(series_std(x) - 3.0) < 0.06);
    CHECK(std::fabs(lag_autocorrelation(x, 1) - std::exp(-1.0)) < 0.02);
    CHECK(std::fabs(lag_autocorrelation(x, 2) - std::exp(-2.0)) < 0.02);
}

TEST_CASE("radio config validation") {
    RadioConfig r;
    r.validate();
    r.carrier_freq = 0.0;
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
    r = RadioConfig{};
    r.decorrelation_distance = 0.0;
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
}
