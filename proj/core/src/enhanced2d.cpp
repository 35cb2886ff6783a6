// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/enhanced2d.hpp"

#include <cmath>
#include <numbers>

#include "anderson/error.hpp"
#include "anderson/profiles.hpp"

namespace anderson {
namespace {

double radius(const Point& x, int dim) {
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a) r2 += x[a] * x[a];
  return std::sqrt(r2);
}

Field squared_gradient(const Field& y) {
  Field out(y.lattice());
  for (const auto& g : spectral_gradient(y)) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += g[i] * g[i];
  }
  return out;
}

Field gradient_dot(const Field& a, const Field& b) {
  const auto ga = spectral_gradient(a);
  const auto gb = spectral_gradient(b);
  Field out(a.lattice());
  for (std::size_t d = 0; d < ga.size(); ++d) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += ga[d][i] * gb[d][i];
  }
  return out;
}

}  // namespace

GreenKernel2D build_green_kernel(const LatticeSpec& lattice) {
  require(lattice.dim == 2, ErrorKind::UnsupportedDimension, "build_green_kernel needs d = 2");
  require(lattice.extent > 4.0, ErrorKind::KernelDoesNotFit,
          "build_green_kernel needs L > 4 so that B(0,2) fits in the torus");
  const double h = lattice.spacing();
  auto G = Field::from_displacement(lattice, [&](const Point& x) {
    const double r = radius(x, 2);
    return r == 0.0 ? profiles::green_2d_cell_average(h) : profiles::green_2d(r);
  });
  auto F = Field::from_displacement(
      lattice, [&](const Point& x) { return profiles::green_2d_remainder(radius(x, 2)); });
  return {std::move(G), std::move(F)};
}

RenormConstant2D compute_renorm_2d(const Mollifier& m, const GreenKernel2D& kernel) {
  const auto& lat = m.profile.lattice();
  require_same_lattice(lat, kernel.G.lattice(), "compute_renorm_2d");
  const auto gs = fft_forward(kernel.G);
  const auto rs = fft_forward(m.profile);
  const double h2 = lat.cell_volume();
  const double nyquist = std::numbers::pi / lat.spacing();
  const int n = lat.points;
  const int last = n / 2 + 1;
  double sum = 0.0;
  gs.for_each_mode([&](std::size_t i, const Point& k) {
    // Y-hat of G * rho with the h^2 convolution factor.
    const double amp = std::norm(gs.half()[i] * rs.half()[i]) * h2 * h2;
    double k2 = 0.0;
    for (int a = 0; a < 2; ++a) {
      if (std::abs(std::abs(k[a]) - nyquist) > 1e-9 * nyquist) k2 += k[a] * k[a];
    }
    const int j = static_cast<int>(i % static_cast<std::size_t>(last));
    const double mult = (j == 0 || j == n / 2) ? 1.0 : 2.0;
    sum += mult * k2 * amp;
  });
  // h^2 sum_x |grad Y|^2 = (h^2 / N^2) sum_k |k|^2 |Y-hat|^2.
  const double value = sum * h2 / static_cast<double>(lat.sites());
  return {m.epsilon, value};
}

EnhancedNoise2D build_enhanced_2d(const Field& xi, const Mollifier& m,
                                  const GreenKernel2D& kernel, const RenormConstant2D& c) {
  require(std::abs(m.epsilon - c.epsilon) <= 1e-12 * m.epsilon, ErrorKind::EpsilonMismatch,
          "mollifier and renormalization constant use different eps");
  require_same_lattice(xi.lattice(), kernel.G.lattice(), "build_enhanced_2d");
  auto X = mollify(xi, m);
  const auto Y = periodic_convolve(X, kernel.G);
  auto U = squared_gradient(Y);
  U += -c.value;
  return {std::move(X), std::move(U), m.epsilon};
}

EnhancedNoise2D build_enhanced_2d(const WhiteNoiseSample& xi, const Mollifier& m,
                                  const GreenKernel2D& kernel, const RenormConstant2D& c) {
  return build_enhanced_2d(xi.field, m, kernel, c);
}

EnhancedNoise2D shift_T_h(const EnhancedNoise2D& q, const Field& h, const GreenKernel2D& kernel) {
  require_same_lattice(q.X.lattice(), h.lattice(), "shift_T_h");
  require_same_lattice(q.X.lattice(), kernel.G.lattice(), "shift_T_h");
  const auto gx = periodic_convolve(q.X, kernel.G);
  const auto gh = periodic_convolve(h, kernel.G);
  auto U = q.U;
  U += 2.0 * gradient_dot(gx, gh);
  U += squared_gradient(gh);
  return {q.X + h, std::move(U), std::nullopt};
}

EnhancedNoise2D shift_enhanced(const EnhancedNoise2D& q, const SiteIndex& shift) {
  return {shift_field(q.X, shift), shift_field(q.U, shift), q.epsilon};
}

}  // namespace anderson
