// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/profiles.hpp"

#include <cmath>
#include <numbers>

namespace anderson::profiles {

using std::numbers::pi;

Jet smooth_step(double t) {
  if (t <= 0.0) return {0.0, 0.0, 0.0};
  if (t >= 1.0) return {1.0, 0.0, 0.0};
  // s = 1 / (1 + exp(1/t - 1/(1-t))), stable at both ends.
  const double z = 1.0 / t - 1.0 / (1.0 - t);
  if (z > 700.0) return {0.0, 0.0, 0.0};
  if (z < -700.0) return {1.0, 0.0, 0.0};
  const double s = 1.0 / (1.0 + std::exp(z));
  const double p = 1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t));
  const double dp = -2.0 / (t * t * t) + 2.0 / ((1.0 - t) * (1.0 - t) * (1.0 - t));
  const double d1 = s * (1.0 - s) * p;
  const double d2 = d1 * (1.0 - 2.0 * s) * p + s * (1.0 - s) * dp;
  return {s, d1, d2};
}

Jet cutoff(double r) {
  if (r <= 1.0) return {1.0, 0.0, 0.0};
  if (r >= 2.0) return {0.0, 0.0, 0.0};
  const auto s = smooth_step(r - 1.0);
  return {1.0 - s.value, -s.d1, -s.d2};
}

Jet half_cutoff(double r) {
  if (r <= 0.5) return {1.0, 0.0, 0.0};
  if (r >= 1.0) return {0.0, 0.0, 0.0};
  const auto s = smooth_step(2.0 * r - 1.0);
  return {1.0 - s.value, -2.0 * s.d1, -4.0 * s.d2};
}

Jet bump(double r) {
  if (r >= 1.0) return {0.0, 0.0, 0.0};
  const double q = 1.0 - r * r;
  const double v = std::exp(-1.0 / q);
  // d/dr exp(-1/q) = exp(-1/q) * (-2r / q^2)
  const double g = -2.0 * r / (q * q);
  const double dg = -2.0 / (q * q) - 8.0 * r * r / (q * q * q);
  return {v, v * g, v * (g * g + dg)};
}

double green_2d(double r) {
  if (r >= 2.0) return 0.0;
  return -std::log(r) * cutoff(r).value / (2.0 * pi);
}

double green_2d_remainder(double r) {
  if (r <= 1.0 || r >= 2.0) return 0.0;
  const auto c = cutoff(r);
  // -Delta(-log(r) chi / 2pi) with the radial Laplacian f'' + f'/r.
  return (2.0 * c.d1 / r + std::log(r) * (c.d2 + c.d1 / r)) / (2.0 * pi);
}

double green_3d(double r) {
  if (r >= 2.0) return 0.0;
  return cutoff(r).value / (4.0 * pi * r);
}

double green_3d_remainder(double r) {
  if (r <= 1.0 || r >= 2.0) return 0.0;
  // Delta(chi/r) = chi''/r in three dimensions.
  return -cutoff(r).d2 / (4.0 * pi * r);
}

double green_2d_cell_average(double h) {
  // Mean of log|x| over [-a,a]^2 is log a + log(2)/2 - 3/2 + pi/4.
  const double a = 0.5 * h;
  const double mean_log = std::log(a) + 0.5 * std::log(2.0) - 1.5 + 0.25 * pi;
  return -mean_log / (2.0 * pi);
}

double green_3d_cell_average(double h) {
  // Integral of 1/|x| over the unit cube centered at 0 is
  // 3 log((sqrt3+1)/(sqrt3-1)) - pi/2; it scales as h^2.
  const double s3 = std::sqrt(3.0);
  const double unit = 3.0 * std::log((s3 + 1.0) / (s3 - 1.0)) - 0.5 * pi;
  return unit / h / (4.0 * pi);
}

}  // namespace anderson::profiles
