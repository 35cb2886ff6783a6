// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "anderson/profiles.hpp"
#include "anderson/radial.hpp"

using namespace anderson;
using std::numbers::pi;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Fourier transform of the unit-mass bump by direct radial quadrature.
double bump_hat(int dim, double u) {
  auto radial_kernel = [&](double r) {
    if (dim == 2) return 2 * pi * r * std::cyl_bessel_j(0.0, u * r);
    const double ur = u * r;
    return 4 * pi * r * r * (ur == 0.0 ? 1.0 : std::sin(ur) / ur);
  };
  const auto rho = [](double r) { return profiles::bump(r).value; };
  const double num = simpson([&](double r) { return rho(r) * radial_kernel(r); }, 0.0, 1.0, 20000);
  const double mass = simpson(
      [&](double r) { return rho(r) * (dim == 2 ? 2 * pi * r : 4 * pi * r * r); }, 0.0, 1.0, 20000);
  return num / mass;
}

}  // namespace

TEST_CASE("smooth step and cutoffs") {
  CHECK(profiles::smooth_step(0.0).value == 0.0);
  CHECK(profiles::smooth_step(1.0).value == 1.0);
  CHECK(profiles::smooth_step(0.5).value == doctest::Approx(0.5));
  CHECK(profiles::smooth_step(0.3).value + profiles::smooth_step(0.7).value == doctest::Approx(1.0));
  CHECK(profiles::cutoff(0.9).value == 1.0);
  CHECK(profiles::cutoff(2.0).value == 0.0);
  CHECK(profiles::half_cutoff(0.5).value == 1.0);
  CHECK(profiles::half_cutoff(1.0).value == 0.0);
  CHECK(profiles::bump(1.0).value == 0.0);
  CHECK(profiles::bump(0.0).value == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("profile jets agree with finite differences") {
  const double d = 1e-5;
  using P = profiles::Jet (*)(double);
  for (P p : {&profiles::smooth_step, &profiles::cutoff, &profiles::half_cutoff, &profiles::bump}) {
    for (double r : {0.2, 0.45, 0.63, 0.8, 1.3, 1.7}) {
      const auto j = p(r);
      const double fp = p(r + d).value, fm = p(r - d).value;
      CHECK(j.d1 == doctest::Approx((fp - fm) / (2 * d)).epsilon(1e-6).scale(1.0));
      CHECK(j.d2 == doctest::Approx((fp - 2 * j.value + fm) / (d * d)).epsilon(1e-3).scale(1.0));
    }
  }
}

TEST_CASE("Green remainders are minus the radial Laplacian of the kernels") {
  const double d = 1e-4;
  for (double r : {0.4, 0.9, 1.1, 1.35, 1.5, 1.8, 2.2}) {
    const double g1 = (profiles::green_2d(r + d) - profiles::green_2d(r - d)) / (2 * d);
    const double g2 =
        (profiles::green_2d(r + d) - 2 * profiles::green_2d(r) + profiles::green_2d(r - d)) / (d * d);
    CHECK(profiles::green_2d_remainder(r) == doctest::Approx(-(g2 + g1 / r)).epsilon(1e-5).scale(1.0));
    const double k1 = (profiles::green_3d(r + d) - profiles::green_3d(r - d)) / (2 * d);
    const double k2 =
        (profiles::green_3d(r + d) - 2 * profiles::green_3d(r) + profiles::green_3d(r - d)) / (d * d);
    CHECK(profiles::green_3d_remainder(r) ==
          doctest::Approx(-(k2 + 2 * k1 / r)).epsilon(1e-5).scale(1.0));
  }
  // Total mass of F is -1 since -Delta G = delta + F integrates to zero.
  const double m2 = simpson([](double r) { return 2 * pi * r * profiles::green_2d_remainder(r); },
                            1.0, 2.0, 4000);
  const double m3 = simpson(
      [](double r) { return 4 * pi * r * r * profiles::green_3d_remainder(r); }, 1.0, 2.0, 4000);
  CHECK(m2 == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(m3 == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("cell averages of the singular kernels match midpoint quadrature") {
  const double h = 0.1;
  {
    const int M = 2000;
    const double dx = h / 2 / M;
    double s = 0.0;
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) s += -std::log(std::hypot((i + 0.5) * dx, (j + 0.5) * dx));
    const double avg = s / (M * M) / (2 * pi);
    CHECK(profiles::green_2d_cell_average(h) == doctest::Approx(avg).epsilon(1e-6));
  }
  {
    const int M = 300;
    const double dx = h / 2 / M;
    double s = 0.0;
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j)
        for (int k = 0; k < M; ++k) {
          const double x = (i + 0.5) * dx, y = (j + 0.5) * dx, z = (k + 0.5) * dx;
          s += 1.0 / std::sqrt(x * x + y * y + z * z);
        }
    const double avg = s / (double(M) * M * M) / (4 * pi);
    CHECK(profiles::green_3d_cell_average(h) == doctest::Approx(avg).epsilon(1e-3));
  }
}

TEST_CASE("tabulated bump transforms match direct quadrature") {
  for (int dim : {2, 3}) {
    CHECK(radial::bump_transform(dim, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double u : {0.37, 2.0, 7.5, 19.0, 55.0}) {
      CHECK(radial::bump_transform(dim, u) == doctest::Approx(bump_hat(dim, u)).epsilon(1e-8).scale(1.0));
    }
  }
  for (double u : {1.0, 12.0, 80.0}) {
    CHECK(radial::bump_transform(2, u) == doctest::Approx(radial::hankel_bump_2d(u)).epsilon(1e-9).scale(1.0));
  }
  CHECK(radial::bump_transform(2, 1e4) == 0.0);
}

TEST_CASE("Green multipliers interpolate between 0 and 1") {
  for (int dim : {2, 3}) {
    CHECK(std::abs(radial::green_multiplier(dim, 1e-3)) < 1e-4);
    CHECK(radial::green_multiplier(dim, 300.0) == doctest::Approx(1.0).epsilon(1e-6));
  }
}
