// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "anderson/error.hpp"
#include "anderson/noise.hpp"
#include "anderson/spectral.hpp"

using namespace anderson;
using std::numbers::pi;

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Mat dense(const DiscreteHamiltonian& H) {
  const auto n = static_cast<Eigen::Index>(H.size());
  return Eigen::Map<const Mat>(H.matrix.data(), n, n);
}

Eigen::VectorXd vec(const Field& f) {
  return Eigen::Map<const Eigen::VectorXd>(f.data().data(), static_cast<Eigen::Index>(f.size()));
}

Field potential(const LatticeSpec& lat, std::uint64_t stream) {
  auto W = mollify(sample_white_noise(lat, 17, stream), make_mollifier(lat, std::min(4 * lat.spacing(), lat.extent / 4), 2.0));
  W += 1.5;
  return W;
}

Field probe(const LatticeSpec& lat) {
  auto f = Field::from_position(lat, [](const Point& x) { return std::exp(-x[0] * x[0] - 0.5 * x[1] * x[1]) + 0.1 * x[0]; });
  return f;
}

}  // namespace

TEST_CASE("assembled Hamiltonians are symmetric and act like apply_hamiltonian") {
  const auto lat = make_lattice(2, 4.0, 16);
  const auto W = potential(lat, 0);
  const auto f = probe(lat);
  for (auto kind : {LaplacianKind::FiniteDifference, LaplacianKind::Spectral}) {
    const auto H = assemble_hamiltonian(W, kind);
    const Mat A = dense(H);
    CHECK((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    const Eigen::VectorXd Af = A * vec(f);
    const auto Hf = apply_hamiltonian(H, f);
    CHECK((Af - vec(Hf)).cwiseAbs().maxCoeff() < 1e-9 * Af.cwiseAbs().maxCoeff());
  }
  CHECK_THROWS_AS(assemble_hamiltonian(Field(make_lattice(2, 4.0, 128)), LaplacianKind::FiniteDifference),
                  Error);
  const auto op = assemble_hamiltonian(Field(make_lattice(2, 4.0, 128)), LaplacianKind::FiniteDifference,
                                       MatrixForm::OperatorOnly);
  CHECK(op.matrix.empty());
}

TEST_CASE("free Hamiltonians have the Laplacian symbols as spectrum") {
  const auto lat = make_lattice(2, 4.0, 8);
  for (auto kind : {LaplacianKind::FiniteDifference, LaplacianKind::Spectral}) {
    std::vector<double> expected;
    for (int a = -4; a < 4; ++a)
      for (int b = -4; b < 4; ++b)
        expected.push_back(minus_laplacian_symbol(kind, lat, {lat.wavenumber(a), lat.wavenumber(b), 0.0}));
    std::sort(expected.begin(), expected.end());
    const auto ev = eigenvalues(assemble_hamiltonian(Field(lat), kind));
    REQUIRE(ev.size() == expected.size());
    for (std::size_t i = 0; i < ev.size(); ++i) CHECK(ev[i] == doctest::Approx(expected[i]).scale(1.0).epsilon(1e-10));
  }
}

TEST_CASE("eigenvectors diagonalize H and the measure has mass ||f||^2") {
  const auto lat = make_lattice(2, 4.0, 8);
  const auto H = assemble_hamiltonian(potential(lat, 1), LaplacianKind::FiniteDifference);
  const auto eig = eigensolve(H);
  const auto n = static_cast<Eigen::Index>(H.size());
  const Mat V = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>>(eig.vectors.data(), n, n);
  const Mat D = V.transpose() * dense(H) * V;
  CHECK((D - Mat(Eigen::Map<const Eigen::VectorXd>(eig.values.data(), n).asDiagonal())).cwiseAbs().maxCoeff() < 1e-10);
  const auto f = probe(lat);
  const auto mu = spectral_measure(eig, f);
  CHECK(mu.mass() == doctest::Approx(inner_product(f, f)).epsilon(1e-12));
  CHECK(std::is_sorted(mu.lambda.begin(), mu.lambda.end()));
}

TEST_CASE("Laplace and Stieltjes transforms match matrix functions") {
  const auto lat = make_lattice(2, 4.0, 8);
  const auto H = assemble_hamiltonian(potential(lat, 2), LaplacianKind::Spectral);
  const auto f = probe(lat);
  const auto mu = eigensolve_spectral_measure(H, f);
  const Mat A = dense(H);
  const double h2 = lat.cell_volume();
  for (double t : {0.1, 0.5, 2.0}) {
    const double ref = h2 * vec(f).dot((-t * A).exp() * vec(f));
    CHECK(laplace_of_measure(mu, t) == doctest::Approx(ref).epsilon(1e-10));
  }
  const std::complex<double> z(0.3, 0.7);
  const Eigen::MatrixXcd R = A.cast<std::complex<double>>() -
                             z * Eigen::MatrixXcd::Identity(A.rows(), A.cols());
  const Eigen::VectorXcd x = R.partialPivLu().solve(vec(f).cast<std::complex<double>>());
  const std::complex<double> ref = h2 * vec(f).cast<std::complex<double>>().dot(x);
  const auto s = stieltjes_transform(mu, z);
  CHECK(std::abs(s - ref) < 1e-10 * std::abs(ref));
}

TEST_CASE("Laplace transform survives very negative spectra") {
  SpectralMeasure mu{{-300.0, -299.0}, {1.0, 2.0}};
  CHECK(laplace_of_measure(mu, 1.0) == doctest::Approx(std::exp(300.0) * (1 + 2 * std::exp(-1.0))).epsilon(1e-13));
  CHECK(laplace_of_measure(mu, 0.0) == doctest::Approx(3.0));
}

TEST_CASE("Lanczos quadrature reproduces low moments") {
  const auto lat = make_lattice(2, 8.0, 32);
  const auto H = assemble_hamiltonian(potential(lat, 3), LaplacianKind::FiniteDifference,
                                      MatrixForm::OperatorOnly);
  const auto f = probe(lat);
  const auto dense_mu = eigensolve_spectral_measure(assemble_hamiltonian(H.W, LaplacianKind::FiniteDifference), f);
  LanczosOptions opt;
  opt.steps = 20;
  const auto q = lanczos_spectral_measure(H, f, opt);
  CHECK(q.lambda.size() == 20);
  const double scale = std::max(std::abs(dense_mu.lambda.front()), std::abs(dense_mu.lambda.back()));
  for (int k = 0; k < 2 * 20; k += 3) {
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < dense_mu.lambda.size(); ++i) a += dense_mu.weight[i] * std::pow(dense_mu.lambda[i] / scale, k);
    for (std::size_t i = 0; i < q.lambda.size(); ++i) b += q.weight[i] * std::pow(q.lambda[i] / scale, k);
    CHECK(b == doctest::Approx(a).epsilon(1e-6));
  }
  CHECK(laplace_of_measure(q, 0.25) == doctest::Approx(laplace_of_measure(dense_mu, 0.25)).epsilon(1e-8));
}

TEST_CASE("Levy distance") {
  SpectralMeasure a{{0.0, 1.0}, {1.0, 1.0}};
  SpectralMeasure b{{0.25, 1.25}, {2.0, 2.0}};
  CHECK(levy_distance(a, a) == doctest::Approx(0.0).scale(1.0));
  CHECK(levy_distance(a, b) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(levy_distance(a, b) == doctest::Approx(levy_distance(b, a)).epsilon(1e-9));
}

TEST_CASE("IDS pooling, coverage and ground states") {
  std::vector<std::vector<double>> samples{{-1.0, 0.0, 1.0}, {-2.0, 0.5}, {-0.5, 3.0}, {-1.5, 2.0}};
  IdsOptions opt;
  opt.interval_lo = -2.0;
  opt.interval_hi = 3.0;
  opt.coverage_radius = 0.25;
  const auto s = ids_and_ground_state(samples, opt);
  CHECK(s.ground_states == std::vector<double>{-1.0, -2.0, -0.5, -1.5});
  CHECK(s.median_ground_state == doctest::Approx(-1.25));
  // Nine points each cover a 0.5 window; the endpoints -2 and 3 are half covered.
  CHECK(s.coverage == doctest::Approx((9 * 0.5 - 0.5) / 5.0));
  CHECK(s.max_gap == doctest::Approx(1.0));
  std::size_t total = 0;
  for (const auto& b : s.histogram) total += b.count;
  CHECK(total == 9);
  CHECK_THROWS_AS(ids_and_ground_state({{1.0}, {2.0}}), Error);
  std::ostringstream os;
  write_histogram_csv(os, s.histogram);
  CHECK(os.str().find("count") != std::string::npos);
}
