// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace v2xemu {

/// Malformed input file (JSON syntax or schema). The message carries a
/// file/line/record locator.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Building polygon that violates the polygon invariants.
class InvalidPolygonError : public std::runtime_error {
public:
    InvalidPolygonError(std::string building_id, const std::string& what)
        : std::runtime_error("invalid polygon '" + building_id + "': " + what),
          building_id_(std::move(building_id)) {}

    const std::string& building_id() const noexcept { return building_id_; }

private:
    std::string building_id_;
};

/// Trace-level violation: non-monotone timestamps, missing ego, ego listed
/// among the other vehicles.
class TraceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside a formula's domain (e.g. non-positive distance).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Internal contract violation (caller broke a precondition).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Time went backwards for a stateful process.
class ClockRegressionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration file or override problem (unknown key, bad type, bad value).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace v2xemu
