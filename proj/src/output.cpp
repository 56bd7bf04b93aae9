// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include "v2xemu/output.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "v2xemu/sweep.hpp"

namespace v2xemu {

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_range(double v) {
    return std::isinf(v) ? std::string("inf") : fmt_g(v);
}

}  // namespace

std::string message_to_json(const ReceivedMessage& m) {
    nlohmann::ordered_json j{{"t", m.step_t},
                             {"sender", m.sender_id},
                             {"lat", m.reported_position.lat},
                             {"lon", m.reported_position.lon},
                             {"speed", m.reported_speed},
                             {"heading", m.reported_heading},
                             {"condition", to_string(m.condition)},
                             {"rx_power", m.rx_power}};
    return j.dump();
}

std::string ego_fix_to_json(const EgoFix& f) {
    nlohmann::ordered_json j{{"t", f.step_t},
                             {"exact_lat", f.exact.lat},
                             {"exact_lon", f.exact.lon},
                             {"lat", f.reported.lat},
                             {"lon", f.reported.lon}};
    return j.dump();
}

std::string metrics_to_csv(const StepMetrics& m) {
    const auto& c = m.counts;
    return fmt_g(m.step_t) + "," + fmt_g(m.wall_delay) + "," + std::to_string(c.total_in_range) + "," +
           std::to_string(c.los) + "," + std::to_string(c.nlosb) + "," + std::to_string(c.nlosv) + "," +
           std::to_string(c.delivered) + "," + fmt_g(m.t_cull) + "," + fmt_g(m.t_classify) + "," +
           fmt_g(m.t_channel) + "," + fmt_g(m.t_gnss);
}

std::string sweep_row_to_csv(const SweepRow& r) {
    return fmt_range(r.rb) + "," + fmt_range(r.rv) + "," + fmt_g(r.mean_delay_top50) + "," + fmt_g(r.max_delay) +
           "," + fmt_g(r.mean_delay_all) + "," + std::to_string(r.nlosb_missed) + "," +
           std::to_string(r.total_reference_nlosb) + "," + std::to_string(r.delivered_diff);
}

}  // namespace v2xemu
