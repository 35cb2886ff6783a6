// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "anderson/error.hpp"
#include "anderson/noise.hpp"
#include "anderson/weyl.hpp"

using namespace anderson;

namespace {

// sup over sites within physical distance n (periodic), by brute force.
Field brute_ball_max(const Field& g, double n) {
  const auto& lat = g.lattice();
  const double h = lat.spacing();
  const int r = static_cast<int>(std::floor(n / h));
  Field out(lat);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto s = lat.unravel(i);
    double m = -HUGE_VAL;
    const int rz = lat.dim == 3 ? r : 0;
    for (int a = -r; a <= r; ++a)
      for (int b = -r; b <= r; ++b)
        for (int c = -rz; c <= rz; ++c) {
          if ((a * a + b * b + c * c) * h * h > n * n * (1 + 1e-12)) continue;
          m = std::max(m, g[lat.ravel({s[0] + a, s[1] + b, s[2] + c})]);
        }
    out[i] = m;
  }
  return out;
}

}  // namespace

TEST_CASE("ball max filter matches brute force") {
  for (int dim : {2, 3}) {
    const auto lat = make_lattice(dim, 4.0, 16);
    const auto g = sample_white_noise(lat, 4, dim).field;
    for (double n : {0.25, 0.6, 1.1}) {
      const auto a = ball_max_filter(g, n);
      const auto b = brute_ball_max(g, n);
      CHECK(a.data() == b.data());
    }
  }
}

TEST_CASE("Weyl functions are normalized bumps") {
  const auto lat = make_lattice(2, 16.0, 64);
  const SiteIndex z{10, 20, 0};
  const auto f = weyl_function(lat, z, 2.0);
  CHECK(l2_norm(f) == doctest::Approx(1.0).epsilon(1e-14));
  const auto cz = lat.position(lat.ravel(z));
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = lat.position(i);
    const double r = std::hypot(x[0] - cz[0], x[1] - cz[1]);
    if (r >= 2.0) CHECK(f[i] == 0.0);
  }
}

TEST_CASE("flat potential: residual is the Laplacian norm and quarters") {
  const auto lat = make_lattice(2, 64.0, 512);
  const Field W(lat, 1.0);
  const auto a = weyl_probe(W, 1.0, 2.0);
  const auto b = weyl_probe(W, 1.0, 4.0);
  CHECK(a.sup_dev == 0.0);
  CHECK(a.residual == doctest::Approx(a.laplacian_norm).epsilon(1e-12));
  CHECK(a.residual / b.residual == doctest::Approx(4.0).epsilon(0.05));
  CHECK_THROWS_AS(weyl_probe(W, 1.0, 16.0), Error);
}

TEST_CASE("the probe centres where the potential is flattest") {
  const auto lat = make_lattice(2, 32.0, 128);
  const SiteIndex z{40, 90, 0};
  const auto cz = lat.position(lat.ravel(z));
  auto W = Field::from_position(lat, [&](const Point& x) {
    const double r = std::hypot(x[0] - cz[0], x[1] - cz[1]);
    return r < 3.0 ? 0.0 : 5.0 + std::sin(x[0]);
  });
  const auto res = weyl_probe(W, 0.0, 2.0);
  CHECK(res.sup_dev == 0.0);
  CHECK(std::hypot(lat.position(lat.ravel(res.z))[0] - cz[0], lat.position(lat.ravel(res.z))[1] - cz[1]) <= 1.0 + 1e-12);
  CHECK(res.residual <= res.bound + 1e-12);
}
