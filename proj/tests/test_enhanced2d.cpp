// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anderson/enhanced2d.hpp"
#include "anderson/error.hpp"
#include "anderson/profiles.hpp"

using namespace anderson;
using std::numbers::pi;

namespace {

double max_rel(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m / std::max(1.0, b.sup_norm());
}

struct Setup {
  LatticeSpec lat = make_lattice(2, 8.0, 64);
  GreenKernel2D kernel = build_green_kernel(lat);
  Mollifier m = make_mollifier(lat, 0.5);
  RenormConstant2D c = compute_renorm_2d(m, kernel);
};

}  // namespace

TEST_CASE("Green kernel layout and support") {
  Setup s;
  CHECK(s.kernel.G[0] == doctest::Approx(profiles::green_2d_cell_average(s.lat.spacing())));
  for (std::size_t i = 0; i < s.lat.sites(); ++i) {
    const auto d = s.lat.displacement(i);
    const double r = std::hypot(d[0], d[1]);
    if (r >= 2.0) {
      CHECK(s.kernel.G[i] == 0.0);
      CHECK(s.kernel.F[i] == 0.0);
    }
  }
  CHECK_THROWS_AS(build_green_kernel(make_lattice(2, 4.0, 32)), Error);
  CHECK_THROWS_AS(build_green_kernel(make_lattice(3, 8.0, 16)), Error);
}

TEST_CASE("minus the stencil Laplacian of G converges to F away from the origin") {
  auto error = [](int n) {
    const auto lat = make_lattice(2, 8.0, n);
    const auto k = build_green_kernel(lat);
    const auto lap = laplacian(k.G, LaplacianKind::FiniteDifference);
    double err = 0.0;
    for (std::size_t i = 0; i < lat.sites(); ++i) {
      const auto d = lat.displacement(i);
      const double r = std::hypot(d[0], d[1]);
      if (r > 0.5 && r < 2.5) err = std::max(err, std::abs(-lap[i] - k.F[i]));
    }
    return err;
  };
  const double e1 = error(256), e2 = error(512);
  CHECK(e2 < 5e-3);
  CHECK(e1 / e2 > 3.0);  // second order
}

TEST_CASE("C_eps equals the real-space gradient energy of G * rho_eps") {
  Setup s;
  const auto Y = periodic_convolve(s.m.profile, s.kernel.G);
  double e = 0.0;
  for (const auto& g : spectral_gradient(Y)) e += inner_product(g, g);
  CHECK(s.c.value == doctest::Approx(e).epsilon(1e-12));
  CHECK(s.c.epsilon == 0.5);
}

TEST_CASE("lattice C_eps approaches the continuum constant") {
  const auto lat = make_lattice(2, 8.0, 256);
  const auto c = compute_renorm_2d(make_mollifier(lat, 0.25), build_green_kernel(lat));
  CHECK(c.value == doctest::Approx(renorm_2d_continuum(0.25)).epsilon(2e-3));
}

TEST_CASE("continuum C_eps grows like log(1/eps) / (2 pi)") {
  const double inc = renorm_2d_continuum(1.0 / 256) - renorm_2d_continuum(1.0 / 128);
  CHECK(inc == doctest::Approx(std::log(2.0) / (2 * pi)).epsilon(5e-3));
}

TEST_CASE("U is centred: its spatial mean averages to zero over samples") {
  Setup s;
  const int n = 48;
  double acc = 0.0, acc2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto q = build_enhanced_2d(sample_white_noise(s.lat, 3, k), s.m, s.kernel, s.c);
    const double v = q.U.mean();
    acc += v;
    acc2 += v * v;
  }
  const double mean = acc / n;
  const double se = std::sqrt((acc2 / n - mean * mean) / (n - 1));
  CHECK(std::abs(mean) < 4.0 * se);
}

TEST_CASE("enhanced noise identities") {
  Setup s;
  const auto xi = sample_white_noise(s.lat, 4, 0).field;
  const auto q = build_enhanced_2d(xi, s.m, s.kernel, s.c);
  REQUIRE(q.epsilon.has_value());

  SUBCASE("shift equivariance") {
    const SiteIndex x{7, -11, 0};
    const auto a = build_enhanced_2d(shift_field(xi, x), s.m, s.kernel, s.c);
    const auto b = shift_enhanced(q, x);
    CHECK(max_rel(a.X, b.X) < 1e-12);
    CHECK(max_rel(a.U, b.U) < 1e-12);
  }
  SUBCASE("T_0 is the identity and T_{-h} inverts T_h") {
    const auto t0 = shift_T_h(q, Field(s.lat), s.kernel);
    CHECK(t0.U.data() == q.U.data());
    const auto h = Field::from_position(s.lat, [](const Point& p) { return std::cos(p[0]) + p[1] * std::exp(-p[1] * p[1]); });
    const auto back = shift_T_h(shift_T_h(q, h, s.kernel), -h, s.kernel);
    CHECK(max_rel(back.X, q.X) < 1e-12);
    CHECK(max_rel(back.U, q.U) < 1e-12);
  }
  SUBCASE("shifting by a mollified h equals enhancing the shifted noise") {
    const auto h = Field::from_position(s.lat, [](const Point& p) { return std::sin(p[0] * p[1] / 4); });
    const auto a = shift_T_h(q, mollify(h, s.m), s.kernel);
    const auto b = build_enhanced_2d(xi + h, s.m, s.kernel, s.c);
    CHECK(max_rel(a.X, b.X) < 1e-12);
    CHECK(max_rel(a.U, b.U) < 1e-12);
  }
  SUBCASE("mismatched eps is rejected") {
    const auto other = make_mollifier(s.lat, 0.75);
    CHECK_THROWS_AS(build_enhanced_2d(xi, other, s.kernel, s.c), Error);
  }
}

TEST_CASE("gradient overlaps") {
  CHECK(gradient_overlap(0.1, 0.3) == doctest::Approx(gradient_overlap(0.3, 0.1)));
  CHECK(gradient_overlap(0.1, 0.1) > gradient_overlap(0.2, 0.2));
  // Cauchy-Schwarz in the Fourier representation.
  CHECK(gradient_overlap(0.1, 0.3) <=
        std::sqrt(gradient_overlap(0.1, 0.1) * gradient_overlap(0.3, 0.3)));
  CHECK_THROWS_AS(gradient_overlap(0.0, 0.0), Error);
}

TEST_CASE("resonance fixed point") {
  const auto r = solve_resonance(1.0, 0.1);
  CHECK(r.lambda == doctest::Approx(std::pow(0.1, 10.0)));
  CHECK(std::abs(resonance_defect(1.0, 0.1, r.a)) < 1e-10);
  CHECK(r.residual < 1e-10);
  CHECK(r.contraction_factor < 1.0);
  CHECK_THROWS_AS(solve_resonance(1.0, 0.5), Error);
  const auto sweep = resonance_sweep(1.0, {0.5, 0.2, 0.1, 0.05});
  CHECK(sweep.rejected.size() == 1);
  CHECK(sweep.accepted.size() == 3);
  CHECK(sweep.delta0 == 0.2);
  for (const auto& a : sweep.accepted) CHECK(std::abs(a.a) <= sweep.r0 * a.delta * (1 + 1e-12));
}
