// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace v2xemu {

using RngEngine = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// FNV-1a; stable across platforms and runs, unlike std::hash.
constexpr std::uint64_t hash_name(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed of the named sub-stream `stream` for entity `key` under the global
/// seed. Streams for different (stream, key) pairs are decorrelated, and the
/// seed of one entity does not depend on which other entities exist.
constexpr std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view stream,
                                    std::string_view key = {}) noexcept {
    std::uint64_t s = mix64(global_seed);
    s = mix64(s ^ hash_name(stream));
    s = mix64(s ^ hash_name(key));
    return s;
}

inline RngEngine make_engine(std::uint64_t global_seed, std::string_view stream, std::string_view key = {}) {
    std::seed_seq seq{static_cast<std::uint32_t>(derive_seed(global_seed, stream, key)),
                      static_cast<std::uint32_t>(derive_seed(global_seed, stream, key) >> 32)};
    return RngEngine(seq);
}

}  // namespace v2xemu
