// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/radial.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <math.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "anderson/error.hpp"
#include "anderson/profiles.hpp"

namespace anderson::radial {
namespace {

using std::numbers::pi;
using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;

constexpr double kUStep = 0.05;
constexpr double kUMax = 400.0;  // transforms are below 1e-11 beyond this
constexpr int kPieces = 64;

// 2 pi int f(r) J0(k r) r dr (d=2) or 4 pi int f(r) sinc(k r) r^2 dr (d=3),
// adaptive; used for masses and the direct cross-check.
double radial_transform(int dim, const std::function<double(double)>& f, double a, double b,
                        double k) {
  auto integrand = [&](double r) {
    if (dim == 2) return f(r) * boost::math::cyl_bessel_j(0, k * r) * r;
    const double x = k * r;
    const double sinc = x < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return f(r) * sinc * r * r;
  };
  // Pieces of roughly one oscillation keep the adaptive rule cheap.
  const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) * k / pi)));
  double sum = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double lo = a + (b - a) * p / pieces;
    const double hi = a + (b - a) * (p + 1) / pieces;
    sum += Quad::integrate(integrand, lo, hi, 8, 1e-14);
  }
  return (dim == 2 ? 2.0 * pi : 4.0 * pi) * sum;
}

// Fixed composite Gauss-Legendre rule on [a, b], fine enough for k <= kUMax.
struct Nodes {
  std::vector<double> r;
  std::vector<double> w;  // quadrature weight times radial measure times f(r)
};

Nodes make_nodes(int dim, const std::function<double(double)>& f, double a, double b) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  Nodes n;
  const double width = (b - a) / kPieces;
  const auto& xs = Rule::abscissa();
  const auto& ws = Rule::weights();
  for (int p = 0; p < kPieces; ++p) {
    const double mid = a + width * (p + 0.5);
    auto add = [&](double x, double wt) {
      const double r = mid + 0.5 * width * x;
      n.r.push_back(r);
      n.w.push_back(0.5 * width * wt * f(r) * (dim == 2 ? 2.0 * pi * r : 4.0 * pi * r * r));
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
      add(xs[i], ws[i]);
      if (xs[i] != 0.0) add(-xs[i], ws[i]);
    }
  }
  return n;
}

double apply_nodes(int dim, const Nodes& n, double k) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n.r.size(); ++i) {
    const double x = k * n.r[i];
    const double kernel =
        dim == 2 ? ::j0(x) : (x < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x);
    sum += n.w[i] * kernel;
  }
  return sum;
}

// Even smooth function of u tabulated on the uniform grid [0, kUMax].
class UniformTable {
 public:
  explicit UniformTable(const std::function<double(double)>& f) {
    const auto n = static_cast<std::size_t>(std::ceil(kUMax / kUStep)) + 1;
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = f(kUStep * static_cast<double>(i));
    last_u_ = kUStep * static_cast<double>(n - 1);
    // Evenness fixes the slope at u = 0.
    spline_ = boost::math::interpolators::cardinal_cubic_b_spline<double>(
        values.begin(), values.end(), 0.0, kUStep, 0.0);
  }

  double operator()(double u, double tail) const { return u >= last_u_ ? tail : spline_(u); }

 private:
  double last_u_ = 0.0;
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline_;
};

double bump_value(double r) { return profiles::bump(r).value; }

double bump_mass(int dim) { return radial_transform(dim, bump_value, 0.0, 1.0, 0.0); }

const UniformTable& bump_table(int dim) {
  auto build = [](int d) {
    const auto nodes = make_nodes(d, bump_value, 0.0, 1.0);
    const double mass = bump_mass(d);
    return UniformTable([&](double u) { return apply_nodes(d, nodes, u) / mass; });
  };
  static const UniformTable t2 = build(2);
  static const UniformTable t3 = build(3);
  return dim == 2 ? t2 : t3;
}

const UniformTable& remainder_table(int dim) {
  auto build = [](int d) {
    auto f = d == 2 ? std::function<double(double)>(profiles::green_2d_remainder)
                    : std::function<double(double)>(profiles::green_3d_remainder);
    const auto nodes = make_nodes(d, f, 1.0, 2.0);
    return UniformTable([&](double k) { return 1.0 + apply_nodes(d, nodes, k); });
  };
  static const UniformTable t2 = build(2);
  static const UniformTable t3 = build(3);
  return dim == 2 ? t2 : t3;
}

}  // namespace

double bump_transform(int dim, double u) {
  require(dim == 2 || dim == 3, ErrorKind::UnsupportedDimension, "bump_transform");
  return bump_table(dim)(std::abs(u), 0.0);
}

double green_multiplier(int dim, double k) {
  require(dim == 2 || dim == 3, ErrorKind::UnsupportedDimension, "green_multiplier");
  return remainder_table(dim)(std::abs(k), 1.0);
}

double hankel_bump_2d(double u) {
  return radial_transform(2, bump_value, 0.0, 1.0, u) / bump_mass(2);
}

}  // namespace anderson::radial
