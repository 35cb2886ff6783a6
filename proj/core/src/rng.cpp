// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/rng.hpp"

#include <cmath>
#include <numbers>

namespace anderson {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::operator()(Counter ctr) const {
  Key key = key_;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

double uniform_open01(std::uint64_t bits) {
  // 52 random bits, shifted off zero by half a step; the largest value
  // 1 - 2^-53 is still exactly representable.
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

std::pair<double, double> gaussian_pair(std::uint64_t seed, std::uint64_t stream,
                                        std::uint64_t counter) {
  const Philox4x32 gen(seed);
  const auto out = gen({static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32),
                        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)});
  const std::uint64_t b0 = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  const std::uint64_t b1 = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
  const double u0 = uniform_open01(b0);
  const double u1 = uniform_open01(b1);
  const double r = std::sqrt(-2.0 * std::log(u0));
  const double theta = 2.0 * std::numbers::pi * u1;
  return {r * std::cos(theta), r * std::sin(theta)};
}

double gaussian_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const auto [g0, g1] = gaussian_pair(seed, stream, index >> 1);
  return (index & 1U) ? g1 : g0;
}

}  // namespace anderson
