// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "v2xemu/pipeline.hpp"

namespace v2xemu {

/// Decodes an emulator config document. Every key is optional; unknown keys
/// and wrongly typed values throw ConfigError. Ranges accept a number or the
/// string "inf". A missing "gnss_ego" section inherits "gnss".
EmulatorConfig config_from_json(const nlohmann::json& doc);

/// Full document with every field spelled out (used for effective_config.json).
nlohmann::json config_to_json(const EmulatorConfig& config);

/// Sets `doc[a][b]... = value` for an override "a.b...=value". The value is
/// parsed as JSON when possible, otherwise taken as a string.
void apply_override(nlohmann::json& doc, std::string_view assignment);

/// Reads the config file (or starts from an empty document when `path` is
/// empty), applies overrides in order, then decodes.
EmulatorConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides);

/// Parses a range token: a positive number, or "inf"/"diag" (culling off).
double parse_range(std::string_view token);

}  // namespace v2xemu
