// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <sstream>

#include "anderson/error.hpp"
#include "anderson/pam.hpp"
#include "anderson/spectral.hpp"

using namespace anderson;
using std::numbers::pi;

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Reference e^{-tH} f through the matrix exponential of the dense operator.
Field expm_apply(const Field& W, LaplacianKind kind, const Field& f, double t) {
  const auto H = assemble_hamiltonian(W, kind);
  const auto n = static_cast<Eigen::Index>(H.size());
  const Mat A = Eigen::Map<const Mat>(H.matrix.data(), n, n);
  const Mat E = (-t * A).exp();
  const Eigen::VectorXd u = E * Eigen::Map<const Eigen::VectorXd>(f.data().data(), n);
  return Field(f.lattice(), std::vector<double>(u.data(), u.data() + n));
}

double rel_l2(const Field& a, const Field& b) { return l2_norm(a - b) / l2_norm(b); }

Field bump(const LatticeSpec& lat, double cx, double w) {
  return Field::from_position(lat, [&](const Point& x) {
    double r2 = (x[0] - cx) * (x[0] - cx);
    for (int a = 1; a < lat.dim; ++a) r2 += x[a] * x[a];
    return std::exp(-r2 / (2 * w * w));
  });
}

EnhancedNoise2D smooth_noise(const LatticeSpec& lat, double amp) {
  const double k = 2 * pi / lat.extent;
  return {Field::from_position(lat, [&](const Point& x) { return amp * std::cos(k * x[0]) * std::sin(k * x[1]); }),
          Field::from_position(lat, [&](const Point& x) { return amp * std::cos(k * (x[0] - 2 * x[1])); }),
          std::nullopt};
}

}  // namespace

TEST_CASE("heat propagation is exact on Fourier modes") {
  const double L = 6.0;
  const auto lat = make_lattice(2, L, 32);
  const double k = 2 * pi * 3 / L;
  const auto f = Field::from_position(lat, [&](const Point& x) { return std::cos(k * x[1]); });
  const auto u = heat_propagate(f, 0.3);
  CHECK(l2_norm(u - std::exp(-k * k * 0.3) * f) < 1e-13);
  CHECK(heat_propagate(f, 0.0).data() == f.data());
  const double s = (2 - 2 * std::cos(k * lat.spacing())) / (lat.spacing() * lat.spacing());
  CHECK(l2_norm(heat_propagate(f, 0.3, LaplacianKind::FiniteDifference) - std::exp(-s * 0.3) * f) <
        1e-13);
}

TEST_CASE("step grids") {
  CHECK(step_grid(0.25, 1e-3) == std::pair<std::size_t, double>{250, 1e-3});
  const auto [n, dt] = step_grid(0.1, 0.03);
  CHECK(n == 4);
  CHECK(dt == doctest::Approx(0.025));
  CHECK(step_grid(0.0, 0.1).first == 0);
  CHECK_THROWS_AS(step_grid(1.0, 0.0), Error);
}

TEST_CASE("vanishing enhanced noise reduces to the heat semigroup") {
  const auto lat = make_lattice(2, 8.0, 32);
  const auto kernel = build_green_kernel(lat);
  const EnhancedNoise2D q{Field(lat), Field(lat), std::nullopt};
  const auto f = bump(lat, 0.5, 0.7);
  for (auto scheme : {Scheme::ExpEuler, Scheme::Strang}) {
    SemigroupOptions opt;
    opt.scheme = scheme;
    opt.dt = 0.01;
    CHECK(rel_l2(evolve_semigroup_2d(q, kernel, f, 0.2, opt), heat_propagate(f, 0.2)) < 1e-12);
  }
}

TEST_CASE("potential stepping converges to the matrix exponential at the scheme order") {
  const auto lat = make_lattice(2, 4.0, 8);
  const auto W = Field::from_position(lat, [](const Point& x) { return 2.0 * std::sin(x[0]) + x[1] * x[1] / 4; });
  const auto f = bump(lat, 0.2, 0.8);
  for (auto kind : {LaplacianKind::FiniteDifference, LaplacianKind::Spectral}) {
    const auto ref = expm_apply(W, kind, f, 0.5);
    for (auto scheme : {Scheme::ExpEuler, Scheme::Strang}) {
      SemigroupOptions opt;
      opt.scheme = scheme;
      opt.laplacian = kind;
      opt.dt = 0.01;
      const double e1 = rel_l2(evolve_potential(W, f, 0.5, opt), ref);
      opt.dt = 0.005;
      const double e2 = rel_l2(evolve_potential(W, f, 0.5, opt), ref);
      const double order = std::log2(e1 / e2);
      CHECK(order == doctest::Approx(scheme == Scheme::ExpEuler ? 1.0 : 2.0).epsilon(0.1));
    }
  }
}

TEST_CASE("direct 3D solver matches the matrix exponential on 8^3") {
  const auto lat = make_lattice(3, 4.0, 8);
  const auto m = make_mollifier(lat, 1.0, 2.0);
  const auto xi = mollify(sample_white_noise(lat, 1, 0), m);
  const double c = 0.7;
  auto W = xi;
  W += c;
  const auto f = bump(lat, 0.0, 0.8);
  SemigroupOptions opt;
  opt.scheme = Scheme::Strang;
  opt.dt = 1e-3;
  const auto u = evolve_direct_3d(xi, c, f, 0.25, opt);
  CHECK(rel_l2(u, expm_apply(W, LaplacianKind::Spectral, f, 0.25)) < 1e-5);
}

TEST_CASE("the drift semigroup is generated by -Delta + W_eff") {
  const auto lat = make_lattice(2, 8.0, 16);
  const auto kernel = build_green_kernel(lat);
  const auto drift = prepare_drift(smooth_noise(lat, 0.8), kernel);
  const auto W = effective_potential(drift);
  const auto f = bump(lat, 0.5, 1.0);
  SemigroupOptions opt;
  opt.scheme = Scheme::Strang;
  opt.dt = 1e-3;
  SemigroupRun run(drift, f, opt);
  run.advance_to(0.5);
  CHECK(run.time() == doctest::Approx(0.5));
  CHECK(rel_l2(run.result(), expm_apply(W, LaplacianKind::Spectral, f, 0.5)) < 1e-5);
}

TEST_CASE("semigroup algebra: linearity, composition, positivity") {
  const auto lat = make_lattice(2, 8.0, 32);
  const auto kernel = build_green_kernel(lat);
  const auto q = smooth_noise(lat, 0.5);
  const auto f = bump(lat, -1.0, 0.8);
  const auto g = bump(lat, 1.0, 1.1);
  SemigroupOptions opt;
  opt.dt = 2e-3;
  const auto pf = evolve_semigroup_2d(q, kernel, f, 0.2, opt);
  const auto pg = evolve_semigroup_2d(q, kernel, g, 0.2, opt);
  CHECK(rel_l2(evolve_semigroup_2d(q, kernel, 2.0 * f - g, 0.2, opt), 2.0 * pf - pg) < 1e-13);
  SemigroupRun run(q, kernel, f, opt);
  run.advance_to(0.08);
  const auto mid = run.result();
  CHECK(rel_l2(evolve_semigroup_2d(q, kernel, mid, 0.12, opt), pf) < 1e-12);
  CHECK(pf.min() > -1e-10 * pf.max());
}

TEST_CASE("dt policy, diagnostics and wraparound flag") {
  const auto lat = make_lattice(2, 8.0, 32);
  const auto kernel = build_green_kernel(lat);
  const auto q = smooth_noise(lat, 0.5);
  const auto drift = prepare_drift(q, kernel);
  SemigroupOptions opt;
  opt.dt = 10.0 * dt_max_2d(drift, opt.stability_margin);
  try {
    SemigroupRun run(drift, bump(lat, 0, 1), opt);
    FAIL("expected DtPolicyViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DtPolicyViolation);
  }
  opt.dt = 1e-2;
  opt.record_diagnostics = true;
  SemigroupRun centred(drift, bump(lat, 0, 0.5), opt);
  centred.advance(5);
  CHECK(centred.diagnostics().size() == 6);
  CHECK_FALSE(centred.wraparound_suspect());
  SemigroupRun edge(drift, bump(lat, 3.9, 0.3), opt);
  CHECK(edge.wraparound_suspect());
  std::ostringstream os;
  write_diagnostics(os, centred.diagnostics());
  CHECK(os.str().rfind("t,l2,min,max\n", 0) == 0);
}
