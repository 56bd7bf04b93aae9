// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>

#include "v2xemu/pipeline.hpp"

namespace v2xemu {

struct SweepRow;

/// {"t","sender","lat","lon","speed","heading","condition","rx_power"}
std::string message_to_json(const ReceivedMessage& m);

/// {"t","exact_lat","exact_lon","lat","lon"}
std::string ego_fix_to_json(const EgoFix& f);

inline constexpr const char* kMetricsHeader =
    "step_t,wall_delay,total_in_range,los,nlosb,nlosv,delivered,t_cull,t_classify,t_channel,t_gnss";
std::string metrics_to_csv(const StepMetrics& m);

inline constexpr const char* kSweepHeader =
    "rb,rv,mean_delay_top50,max_delay,mean_delay_all,nlosb_missed,total_reference_nlosb,delivered_diff";
std::string sweep_row_to_csv(const SweepRow& r);

}  // namespace v2xemu
