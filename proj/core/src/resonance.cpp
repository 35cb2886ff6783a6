// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anderson/enhanced2d.hpp"
#include "anderson/error.hpp"
#include "anderson/radial.hpp"

namespace anderson {
namespace {

using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;

// Beyond u = 2000 the bump transform is below double precision.
constexpr double kUCut = 2.0e3;
constexpr double kKMin = 1e-4;
constexpr double kPiece = 0.25;  // width of quadrature pieces in log k

double rho_hat(double delta, double k) {
  return delta == 0.0 ? 1.0 : radial::bump_transform(2, delta * k);
}

}  // namespace

double gradient_overlap(double delta1, double delta2) {
  require(delta1 >= 0.0 && delta2 >= 0.0, ErrorKind::InvalidArgument,
          "gradient_overlap needs nonnegative scales");
  const double coarse = std::max(delta1, delta2);
  require(coarse > 0.0, ErrorKind::InvalidArgument, "v(0,0) diverges");
  const double s_lo = std::log(kKMin);
  const double s_hi = std::log(kUCut / coarse);
  auto integrand = [&](double s) {
    const double k = std::exp(s);
    const double m = radial::green_multiplier(2, k);
    return m * m * rho_hat(delta1, k) * rho_hat(delta2, k);
  };
  const int pieces = static_cast<int>(std::ceil((s_hi - s_lo) / kPiece));
  double sum = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double a = s_lo + (s_hi - s_lo) * p / pieces;
    const double b = s_lo + (s_hi - s_lo) * (p + 1) / pieces;
    sum += Quad::integrate(integrand, a, b, 6, 1e-13);
  }
  return sum / (2.0 * std::numbers::pi);
}

double renorm_2d_continuum(double epsilon) {
  require(epsilon > 0.0, ErrorKind::InvalidArgument, "renorm_2d_continuum needs eps > 0");
  return gradient_overlap(epsilon, epsilon);
}

double resonance_scale(double delta) {
  require(delta > 0.0 && delta < 1.0, ErrorKind::InvalidArgument,
          "resonance scale needs delta in (0,1)");
  return std::pow(delta, 1.0 / delta);
}

namespace {

struct Overlaps {
  double dd, dl, ll, d0, l0;
};

Overlaps overlaps(double delta) {
  const double l = resonance_scale(delta);
  return {gradient_overlap(delta, delta), gradient_overlap(delta, l), gradient_overlap(l, l),
          gradient_overlap(delta, 0.0), gradient_overlap(l, 0.0)};
}

double defect(const Overlaps& v, double c, double a) {
  return v.dd - 2.0 * a * v.dl + a * a * v.ll - 2.0 * v.d0 + 2.0 * a * v.l0 - c;
}

}  // namespace

double resonance_defect(double c, double delta, double a) {
  return defect(overlaps(delta), c, a);
}

ResonanceResult solve_resonance(double c, double delta, const ResonanceOptions& options) {
  const auto v = overlaps(delta);
  auto M = [&](double f) {
    return (c - v.dd + 2.0 * f * v.dl - f * f * v.ll + 2.0 * v.d0) / (2.0 * v.l0);
  };
  ResonanceResult out;
  out.delta = delta;
  out.lambda = resonance_scale(delta);
  double a = 0.0;
  double radius = 0.0;
  bool converged = false;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const double next = M(a);
    radius = std::max(radius, std::abs(next));
    out.iterations = it;
    if (!std::isfinite(next)) break;
    const bool done = std::abs(next - a) < options.tolerance;
    a = next;
    if (done) {
      converged = true;
      break;
    }
  }
  // |M f - M g| <= |f - g| (|v(d,l)| + R v(l,l)) / v(l,0) on the ball |f|,|g| <= R.
  out.contraction_factor = (std::abs(v.dl) + radius * std::abs(v.ll)) / v.l0;
  if (!converged || out.contraction_factor >= 1.0) {
    fail(ErrorKind::NoContraction,
         "resonance map is not a contraction at delta = " + std::to_string(delta) +
             " (factor " + std::to_string(out.contraction_factor) + ")");
  }
  out.a = a;
  out.residual = std::abs(defect(v, c, a));
  return out;
}

ResonanceSweep resonance_sweep(double c, const std::vector<double>& deltas,
                               const ResonanceOptions& options) {
  ResonanceSweep sweep;
  for (double d : deltas) {
    try {
      auto r = solve_resonance(c, d, options);
      sweep.r0 = std::max(sweep.r0, std::abs(r.a) / d);
      sweep.delta0 = std::max(sweep.delta0, d);
      sweep.accepted.push_back(r);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoContraction) throw;
      sweep.rejected.push_back(d);
    }
  }
  return sweep;
}

}  // namespace anderson
