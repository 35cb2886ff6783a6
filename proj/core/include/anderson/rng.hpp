// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random numbers: every variate is a pure function of
// (seed, stream, counter), so parallel sampling is schedule-independent.
#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>

namespace anderson {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11 constants).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  [[nodiscard]] Counter operator()(Counter ctr) const;

 private:
  Key key_;
};

/// Name and version recorded in experiment manifests.
inline constexpr std::string_view kRngIdentity = "philox4x32-10+box-muller/v1";

/// Two independent standard normals for block `counter` of `stream`.
std::pair<double, double> gaussian_pair(std::uint64_t seed, std::uint64_t stream,
                                        std::uint64_t counter);

/// Standard normal attached to an integer site index.
double gaussian_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Uniform on (0,1) from 64 random bits.
double uniform_open01(std::uint64_t bits);

}  // namespace anderson
