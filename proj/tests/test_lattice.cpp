// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anderson/error.hpp"
#include "anderson/lattice.hpp"
#include "anderson/rng.hpp"

using namespace anderson;
using std::numbers::pi;

namespace {

Field random_field(const LatticeSpec& lat, std::uint64_t stream) {
  Field f(lat);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = gaussian_at(7, stream, i);
  return f;
}

// h^d sum_y f(y) k(x - y), by the definition.
Field brute_convolve(const Field& f, const Field& k) {
  const auto& lat = f.lattice();
  Field out(lat);
  for (std::size_t x = 0; x < f.size(); ++x) {
    const auto sx = lat.unravel(x);
    double s = 0.0;
    for (std::size_t y = 0; y < f.size(); ++y) {
      const auto sy = lat.unravel(y);
      SiteIndex d{sx[0] - sy[0], sx[1] - sy[1], sx[2] - sy[2]};
      s += f[y] * k[lat.ravel(d)];
    }
    out[x] = s * lat.cell_volume();
  }
  return out;
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("make_lattice validates its arguments") {
  CHECK_THROWS_AS(make_lattice(1, 4.0, 16), Error);
  CHECK_THROWS_AS(make_lattice(2, 4.0, 12), Error);
  CHECK_THROWS_AS(make_lattice(2, -1.0, 16), Error);
  try {
    make_lattice(2, 4.0, 12);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPowerOfTwo);
  }
  const auto lat = make_lattice(3, 4.0, 16);
  CHECK(lat.sites() == 4096);
  CHECK(lat.cell_volume() == doctest::Approx(0.25 * 0.25 * 0.25));
}

TEST_CASE("sites ravel cyclically and positions are cell centred") {
  const auto lat = make_lattice(2, 8.0, 16);
  CHECK(lat.ravel({-1, 0, 0}) == lat.ravel({15, 0, 0}));
  CHECK(lat.ravel({3, 17, 0}) == lat.ravel({3, 1, 0}));
  for (std::size_t i = 0; i < lat.sites(); i += 37) CHECK(lat.ravel(lat.unravel(i)) == i);
  const auto p = lat.position(0);
  CHECK(p[0] == doctest::Approx(-4.0 + 0.25));
  CHECK(p[1] == doctest::Approx(-4.0 + 0.25));
  const auto d = lat.displacement(lat.ravel({15, 1, 0}));
  CHECK(d[0] == doctest::Approx(-0.5));
  CHECK(d[1] == doctest::Approx(0.5));
  CHECK(lat.displacement(0)[0] == 0.0);
}

TEST_CASE("FFT round trip and Parseval") {
  for (int dim : {2, 3}) {
    const auto lat = make_lattice(dim, 3.0, 8);
    const auto f = random_field(lat, dim);
    const auto s = fft_forward(f);
    double sq = 0.0;
    for (double v : f.values()) sq += v * v;
    CHECK(s.full_power() == doctest::Approx(sq * static_cast<double>(lat.sites())).epsilon(1e-12));
    CHECK(max_abs_diff(fft_inverse(s), f) < 1e-13);
    // Conjugate symmetry of the full spectrum.
    const auto a = s.coefficient({1, 2, dim == 3 ? 3 : 0});
    const auto b = s.coefficient({7, 6, dim == 3 ? 5 : 0});
    CHECK(std::abs(a - std::conj(b)) < 1e-12);
  }
}

TEST_CASE("periodic convolution matches the defining sum") {
  for (int dim : {2, 3}) {
    const auto lat = make_lattice(dim, 2.0, 8);
    const auto f = random_field(lat, 10 + dim);
    const auto k = random_field(lat, 20 + dim);
    CHECK(max_abs_diff(periodic_convolve(f, k), brute_convolve(f, k)) < 1e-12);
  }
}

TEST_CASE("periodic correlation matches its defining sum") {
  const auto lat = make_lattice(2, 2.0, 8);
  const auto f = random_field(lat, 3);
  const auto k = random_field(lat, 4);
  const auto c = periodic_correlate(f, k);
  for (std::size_t x = 0; x < f.size(); x += 5) {
    const auto sx = lat.unravel(x);
    double s = 0.0;
    for (std::size_t y = 0; y < f.size(); ++y) {
      const auto sy = lat.unravel(y);
      s += f[y] * k[lat.ravel({sy[0] - sx[0], sy[1] - sx[1], 0})];
    }
    CHECK(c[x] == doctest::Approx(s * lat.cell_volume()).epsilon(1e-12));
  }
}

TEST_CASE("spectral derivatives are exact on resolved trigonometric fields") {
  const double L = 5.0;
  const auto lat = make_lattice(2, L, 32);
  const double k1 = 2 * pi * 3 / L, k2 = 2 * pi * 2 / L;
  const auto f = Field::from_position(
      lat, [&](const Point& x) { return std::sin(k1 * x[0]) * std::cos(k2 * x[1]); });
  const auto dx = Field::from_position(
      lat, [&](const Point& x) { return k1 * std::cos(k1 * x[0]) * std::cos(k2 * x[1]); });
  const auto dy = Field::from_position(
      lat, [&](const Point& x) { return -k2 * std::sin(k1 * x[0]) * std::sin(k2 * x[1]); });
  const auto g = spectral_gradient(f);
  CHECK(max_abs_diff(g[0], dx) < 1e-12);
  CHECK(max_abs_diff(g[1], dy) < 1e-12);
  const auto lap = laplacian(f, LaplacianKind::Spectral);
  CHECK(max_abs_diff(lap, -(k1 * k1 + k2 * k2) * f) < 1e-11);

  // Second-order stencil by explicit differences.
  const auto fd = laplacian(f, LaplacianKind::FiniteDifference);
  const double h = lat.spacing();
  for (std::size_t i = 0; i < f.size(); i += 11) {
    const auto s = lat.unravel(i);
    double v = -4.0 * f[i];
    v += f[lat.ravel({s[0] + 1, s[1], 0})] + f[lat.ravel({s[0] - 1, s[1], 0})];
    v += f[lat.ravel({s[0], s[1] + 1, 0})] + f[lat.ravel({s[0], s[1] - 1, 0})];
    CHECK(fd[i] == doctest::Approx(v / (h * h)).epsilon(1e-10));
  }
}

TEST_CASE("spectral gradient converges to the derivative of a Gaussian") {
  const auto lat = make_lattice(3, 12.0, 64);
  const auto f = Field::from_position(lat, [](const Point& x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  });
  const auto dz = Field::from_position(lat, [](const Point& x) {
    return -2 * x[2] * std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  });
  CHECK(max_abs_diff(spectral_derivative(f, DerivativeOp::grad(2)), dz) < 1e-8);
}

TEST_CASE("field arithmetic and reductions") {
  const auto lat = make_lattice(2, 2.0, 8);
  Field a(lat, 2.0);
  Field b(lat, 3.0);
  CHECK((a + b).mean() == doctest::Approx(5.0));
  CHECK((a - b).min() == doctest::Approx(-1.0));
  CHECK(multiply(a, b).max() == doctest::Approx(6.0));
  CHECK(a.integral() == doctest::Approx(8.0));
  CHECK(inner_product(a, b) == doctest::Approx(24.0));
  CHECK(l2_norm(b) == doctest::Approx(6.0));
  CHECK(map(a, [](double v) { return v * v; }).sup_norm() == doctest::Approx(4.0));
  a[3] = std::nan("");
  CHECK_FALSE(a.all_finite());
  CHECK_THROWS_AS(a + Field(make_lattice(2, 2.0, 16)), Error);
}

TEST_CASE("weights") {
  const auto p = Weight::polynomial(0.5);
  CHECK(p.at_radius(3.0) == doctest::Approx(2.0));
  const auto e = Weight::exponential(1.0);
  CHECK(e.at_radius(0.0) == doctest::Approx(std::exp(1.0)));
  CHECK(Weight::unit()({1.0, 2.0, 0.0}, 2) == doctest::Approx(1.0));
  CHECK(p({3.0, 4.0, 0.0}, 2) == doctest::Approx(std::sqrt(6.0)));
  const auto lat = make_lattice(2, 4.0, 8);
  const auto w = weight_eval(p, lat);
  CHECK(w[0] == doctest::Approx(p(lat.position(0), 2)));
}
