// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/renorm3d.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "anderson/error.hpp"
#include "anderson/parallel.hpp"
#include "anderson/profiles.hpp"
#include "anderson/radial.hpp"
#include "anderson/stats.hpp"

namespace anderson {

Kernel3D build_kernel_3d(const LatticeSpec& lattice) {
  require(lattice.dim == 3, ErrorKind::UnsupportedDimension, "build_kernel_3d needs d = 3");
  require(lattice.extent >= 4.0, ErrorKind::KernelDoesNotFit,
          "build_kernel_3d needs L >= 4 so that B(0,2) fits in one period");
  const double h = lattice.spacing();
  return {Field::from_displacement(lattice, [&](const Point& x) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    return r == 0.0 ? profiles::green_3d_cell_average(h) : profiles::green_3d(r);
  })};
}

double compute_c_eps_3d(const Mollifier& m, const Kernel3D& kernel) {
  require_same_lattice(m.profile.lattice(), kernel.K.lattice(), "compute_c_eps_3d");
  const auto rho2 = periodic_convolve(m.profile, m.profile);
  return inner_product(kernel.K, rho2);
}

double c_eps_3d_continuum(double epsilon) {
  require(epsilon > 0.0, ErrorKind::InvalidArgument, "c_eps_3d_continuum needs eps > 0");
  using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto integrand = [&](double s) {
    const double k = std::exp(s);
    const double r = radial::bump_transform(3, epsilon * k);
    return radial::green_multiplier(3, k) * r * r * k;
  };
  const double s_lo = std::log(1e-4);
  const double s_hi = std::log(2.0e3 / epsilon);
  const int pieces = static_cast<int>(std::ceil((s_hi - s_lo) / 0.25));
  double sum = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double a = s_lo + (s_hi - s_lo) * p / pieces;
    const double b = s_lo + (s_hi - s_lo) * (p + 1) / pieces;
    sum += Quad::integrate(integrand, a, b, 6, 1e-13);
  }
  return sum / (2.0 * std::numbers::pi * std::numbers::pi);
}

double c1_sample_value(const Field& xi, const Mollifier& m, const Kernel3D& kernel, double c_eps,
                       C1Estimator estimator) {
  const auto& K = kernel.K;
  const auto x = mollify(xi, m);
  auto inner = multiply(x, periodic_convolve(x, K));
  inner += -c_eps;
  const auto middle = multiply(x, periodic_convolve(inner, K));
  auto outer = multiply(x, periodic_convolve(middle, K));
  if (estimator == C1Estimator::WithCounterterm) {
    const auto kkx = periodic_convolve(periodic_convolve(x, K), K);
    outer -= c_eps * multiply(x, kkx);
  }
  return outer.mean();
}

C1Estimate estimate_c1_eps_3d(const Mollifier& m, const Kernel3D& kernel, double c_eps,
                              const C1Options& options) {
  require(options.samples >= 2, ErrorKind::InvalidArgument, "estimate_c1_eps_3d needs samples");
  const auto& lat = m.profile.lattice();
  require_same_lattice(lat, kernel.K.lattice(), "estimate_c1_eps_3d");
  const unsigned threads = options.threads == 0 ? default_threads() : options.threads;
  auto batch = [&](std::size_t first, std::size_t count) {
    return parallel_map(
        count,
        [&](std::size_t i) {
          const auto xi = sample_white_noise(lat, options.seed, first + i);
          return c1_sample_value(xi.field, m, kernel, c_eps, options.estimator);
        },
        threads);
  };
  C1Estimate out;
  out.per_sample = batch(0, options.samples);
  out.stderr_ = stats::standard_error(out.per_sample);
  if (options.stderr_target > 0.0) {
    while (out.stderr_ > options.stderr_target) {
      if (out.per_sample.size() >= options.max_samples) {
        fail(ErrorKind::BudgetExhausted, "c1 stderr target not reached within sample budget");
      }
      const std::size_t more =
          std::min(out.per_sample.size(), options.max_samples - out.per_sample.size());
      auto extra = batch(out.per_sample.size(), more);
      out.per_sample.insert(out.per_sample.end(), extra.begin(), extra.end());
      out.stderr_ = stats::standard_error(out.per_sample);
    }
  }
  out.value = stats::mean(out.per_sample);
  return out;
}

double c1_eps_3d_wick(const Mollifier& m, const Kernel3D& kernel, double c_eps) {
  const auto& K = kernel.K;
  require_same_lattice(m.profile.lattice(), K.lattice(), "c1_eps_3d_wick");
  // Covariance of xi_eps and Q = K * cov.
  const auto cov = periodic_convolve(m.profile, m.profile);
  const auto Q = periodic_convolve(cov, K);
  // Pairing (x,z)(y,w) and pairing (x,w)(y,z) of the four noise factors.
  const double p13 = inner_product(K, periodic_convolve(cov, multiply(K, Q)));
  const double p14 = inner_product(K, periodic_convolve(multiply(K, cov), Q));
  // Counterterm expectation c (K * K * cov)(0).
  const double counter = c_eps * inner_product(K, Q);
  return p13 + p14 - counter;
}

}  // namespace anderson
