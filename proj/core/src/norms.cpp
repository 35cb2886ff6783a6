// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/norms.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "anderson/error.hpp"
#include "anderson/profiles.hpp"

namespace anderson {
namespace {

double norm(const Point& x, int dim) {
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a) r2 += x[a] * x[a];
  return std::sqrt(r2);
}

// d_i of the unnormalized bump, rescaled: lambda^{-d} (d_i psi)(x / lambda) / mass.
Field derivative_test_function(const LatticeSpec& lat, double lambda, int axis, double mass) {
  const double scale = std::pow(lambda, -lat.dim) / mass;
  return Field::from_displacement(lat, [&](const Point& x) {
    const double r = norm(x, lat.dim) / lambda;
    if (r == 0.0 || r >= 1.0) return 0.0;
    return scale * profiles::bump(r).d1 * (x[axis] / lambda) / r;
  });
}

}  // namespace

double weighted_l2_norm(const Field& f, const Weight& w) {
  const auto& lat = f.lattice();
  const auto wf = weight_eval(w, lat);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * f[i] / wf[i];
  return std::sqrt(sum * lat.cell_volume());
}

Field holder_test_function(const LatticeSpec& lat, double lambda) {
  auto psi = Field::from_displacement(
      lat, [&](const Point& x) { return profiles::bump(norm(x, lat.dim) / lambda).value; });
  psi *= 1.0 / psi.integral();
  return psi;
}

HolderEstimate holder_norm_estimate(const Field& f, double alpha, const Weight& w,
                                    const HolderOptions& options) {
  require(alpha < 0.0, ErrorKind::InvalidArgument, "holder_norm_estimate needs alpha < 0");
  const auto& lat = f.lattice();
  const double h = lat.spacing();
  HolderEstimate est;
  est.alpha = alpha;
  est.weight = w;
  for (double lambda = 1.0; lambda >= 2.0 * h * (1.0 - 1e-12); lambda *= 0.5) {
    est.scales.push_back(lambda);
  }
  require(est.scales.size() >= 3, ErrorKind::TooFewScales,
          "holder_norm_estimate needs at least three dyadic scales in [2h, 1]");
  est.stride = options.stride > 0 ? options.stride : (lat.sites() <= 256u * 256u ? 1 : 4);

  const auto wf = weight_eval(w, lat);
  const int n = lat.points;
  auto sampled = [&](std::size_t i) {
    const auto s = lat.unravel(i);
    for (int a = 0; a < lat.dim; ++a) {
      if (s[a] % est.stride != 0 || s[a] >= n) return false;
    }
    return true;
  };
  auto sup = [&](const Field& pairing) {
    double m = 0.0;
    for (std::size_t i = 0; i < pairing.size(); ++i) {
      if (est.stride == 1 || sampled(i)) m = std::max(m, std::abs(pairing[i]) / wf[i]);
    }
    return m;
  };

  // Unit-scale mass of the bump, shared by the derivative tests at every scale.
  const double mass = Field::from_displacement(lat, [&](const Point& x) {
                        return profiles::bump(norm(x, lat.dim)).value;
                      }).integral();
  for (double lambda : est.scales) {
    double m = sup(periodic_correlate(f, holder_test_function(lat, lambda)));
    for (int a = 0; a < lat.dim; ++a) {
      m = std::max(m, sup(periodic_correlate(f, derivative_test_function(lat, lambda, a, mass))));
    }
    const double v = std::pow(lambda, -alpha) * m;
    est.per_scale.push_back(v);
    est.value = std::max(est.value, v);
  }
  return est;
}

void write_holder_profile(std::ostream& os, const HolderEstimate& est) {
  os << "lambda,sup_value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < est.scales.size(); ++i) {
    os << est.scales[i] << ',' << est.per_scale[i] << '\n';
  }
}

}  // namespace anderson
