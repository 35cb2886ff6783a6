// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "anderson/error.hpp"
#include "fft_plan.hpp"

namespace anderson {

double LatticeSpec::cell_volume() const { return std::pow(spacing(), dim); }

std::size_t LatticeSpec::sites() const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points);
  return n;
}

SiteIndex LatticeSpec::unravel(std::size_t index) const {
  SiteIndex s{0, 0, 0};
  const auto n = static_cast<std::size_t>(points);
  for (int a = dim - 1; a >= 0; --a) {
    s[a] = static_cast<int>(index % n);
    index /= n;
  }
  return s;
}

std::size_t LatticeSpec::ravel(const SiteIndex& site) const {
  std::size_t index = 0;
  for (int a = 0; a < dim; ++a) {
    int k = site[a] % points;
    if (k < 0) k += points;
    index = index * static_cast<std::size_t>(points) + static_cast<std::size_t>(k);
  }
  return index;
}

Point LatticeSpec::position(std::size_t index) const {
  const auto s = unravel(index);
  const double h = spacing();
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) x[a] = (s[a] + 0.5) * h - 0.5 * extent;
  return x;
}

Point LatticeSpec::displacement(std::size_t index) const {
  const auto s = unravel(index);
  const double h = spacing();
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    const int m = s[a] < points / 2 ? s[a] : s[a] - points;
    x[a] = m * h;
  }
  return x;
}

double LatticeSpec::wavenumber(int j) const {
  const int m = j < points / 2 ? j : j - points;
  return 2.0 * std::numbers::pi / extent * m;
}

LatticeSpec make_lattice(int dim, double extent, int points) {
  require(dim == 2 || dim == 3, ErrorKind::UnsupportedDimension,
          "dim must be 2 or 3, got " + std::to_string(dim));
  require(points >= 8 && (points & (points - 1)) == 0, ErrorKind::NonPowerOfTwo,
          "points per side must be a power of two >= 8, got " + std::to_string(points));
  require(extent > 0.0 && std::isfinite(extent), ErrorKind::InvalidArgument,
          "extent must be positive");
  return LatticeSpec{dim, extent, points};
}

void require_same_lattice(const LatticeSpec& a, const LatticeSpec& b, const char* where) {
  if (!(a == b)) {
    std::ostringstream os;
    os << where << ": lattice (" << a.dim << "," << a.extent << "," << a.points << ") vs ("
       << b.dim << "," << b.extent << "," << b.points << ")";
    fail(ErrorKind::LatticeMismatch, os.str());
  }
}

// ---------------------------------------------------------------------------
// Field

Field::Field(const LatticeSpec& lattice, double value)
    : lattice_(lattice), values_(lattice.sites(), value) {}

Field::Field(const LatticeSpec& lattice, std::vector<double> values)
    : lattice_(lattice), values_(std::move(values)) {
  require(values_.size() == lattice_.sites(), ErrorKind::InvalidArgument,
          "value count does not match lattice");
}

Field Field::from_position(const LatticeSpec& lattice,
                           const std::function<double(const Point&)>& f) {
  Field out(lattice);
  for (std::size_t i = 0; i < out.size(); ++i) out.values_[i] = f(lattice.position(i));
  return out;
}

Field Field::from_displacement(const LatticeSpec& lattice,
                               const std::function<double(const Point&)>& f) {
  Field out(lattice);
  for (std::size_t i = 0; i < out.size(); ++i) out.values_[i] = f(lattice.displacement(i));
  return out;
}

Field& Field::operator+=(const Field& other) {
  require_same_lattice(lattice_, other.lattice_, "Field::operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_lattice(lattice_, other.lattice_, "Field::operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

Field& Field::operator+=(double c) {
  for (auto& v : values_) v += c;
  return *this;
}

double Field::integral() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * lattice_.cell_volume();
}

double Field::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double Field::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }
Field operator-(Field a) { return a *= -1.0; }

Field multiply(const Field& a, const Field& b) {
  require_same_lattice(a.lattice(), b.lattice(), "multiply");
  Field out(a.lattice());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

Field map(const Field& a, const std::function<double(double)>& f) {
  Field out(a.lattice());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(a[i]);
  return out;
}

double inner_product(const Field& f, const Field& g) {
  require_same_lattice(f.lattice(), g.lattice(), "inner_product");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
  return s * f.lattice().cell_volume();
}

double l2_norm(const Field& f) { return std::sqrt(inner_product(f, f)); }

// ---------------------------------------------------------------------------
// Spectral

SpectralField::SpectralField(const LatticeSpec& lattice, std::vector<std::complex<double>> half)
    : lattice_(lattice), half_(std::move(half)) {
  require(half_.size() == detail::half_size(lattice_), ErrorKind::InvalidArgument,
          "spectral storage size does not match lattice");
}

std::complex<double> SpectralField::coefficient(const SiteIndex& j) const {
  const int n = lattice_.points;
  const int last = lattice_.dim - 1;
  SiteIndex idx = j;
  bool conjugate = false;
  if (idx[last] > n / 2) {
    conjugate = true;
    for (int a = 0; a < lattice_.dim; ++a) idx[a] = (n - idx[a]) % n;
  }
  std::size_t flat = 0;
  for (int a = 0; a < lattice_.dim; ++a) {
    const int extent = a == last ? n / 2 + 1 : n;
    flat = flat * static_cast<std::size_t>(extent) + static_cast<std::size_t>(idx[a]);
  }
  return conjugate ? std::conj(half_[flat]) : half_[flat];
}

double SpectralField::full_power() const {
  const int n = lattice_.points;
  const int m = n / 2 + 1;
  double s = 0.0;
  for (std::size_t i = 0; i < half_.size(); ++i) {
    const int j = static_cast<int>(i % static_cast<std::size_t>(m));
    const double mult = (j == 0 || j == n / 2) ? 1.0 : 2.0;
    s += mult * std::norm(half_[i]);
  }
  return s;
}

void SpectralField::for_each_mode(
    const std::function<void(std::size_t, const Point&)>& f) const {
  const int n = lattice_.points;
  const int m = n / 2 + 1;
  const int d = lattice_.dim;
  Point k{0.0, 0.0, 0.0};
  std::size_t flat = 0;
  if (d == 2) {
    for (int a = 0; a < n; ++a) {
      k[0] = lattice_.wavenumber(a);
      for (int b = 0; b < m; ++b, ++flat) {
        k[1] = 2.0 * std::numbers::pi / lattice_.extent * b;
        f(flat, k);
      }
    }
  } else {
    for (int a = 0; a < n; ++a) {
      k[0] = lattice_.wavenumber(a);
      for (int b = 0; b < n; ++b) {
        k[1] = lattice_.wavenumber(b);
        for (int c = 0; c < m; ++c, ++flat) {
          k[2] = 2.0 * std::numbers::pi / lattice_.extent * c;
          f(flat, k);
        }
      }
    }
  }
}

SpectralField fft_forward(const Field& f) {
  std::vector<std::complex<double>> out(detail::half_size(f.lattice()));
  detail::execute_r2c(f.lattice(), f.values(), out);
  return SpectralField(f.lattice(), std::move(out));
}

Field fft_inverse(const SpectralField& s) {
  std::vector<std::complex<double>> scratch(s.half().begin(), s.half().end());
  Field out(s.lattice());
  detail::execute_c2r(s.lattice(), scratch, out.values());
  out *= 1.0 / static_cast<double>(s.lattice().sites());
  return out;
}

Field periodic_convolve(const Field& f, const Field& kernel) {
  require_same_lattice(f.lattice(), kernel.lattice(), "periodic_convolve");
  auto a = fft_forward(f);
  const auto b = fft_forward(kernel);
  auto ha = a.half();
  const auto hb = b.half();
  for (std::size_t i = 0; i < ha.size(); ++i) ha[i] *= hb[i];
  auto out = fft_inverse(a);
  out *= f.lattice().cell_volume();
  return out;
}

Field periodic_correlate(const Field& f, const Field& kernel) {
  require_same_lattice(f.lattice(), kernel.lattice(), "periodic_correlate");
  auto a = fft_forward(f);
  const auto b = fft_forward(kernel);
  auto ha = a.half();
  const auto hb = b.half();
  for (std::size_t i = 0; i < ha.size(); ++i) ha[i] *= std::conj(hb[i]);
  auto out = fft_inverse(a);
  out *= f.lattice().cell_volume();
  return out;
}

double minus_laplacian_symbol(LaplacianKind kind, const LatticeSpec& lattice, const Point& k) {
  double s = 0.0;
  if (kind == LaplacianKind::Spectral) {
    for (int a = 0; a < lattice.dim; ++a) s += k[a] * k[a];
  } else {
    const double h = lattice.spacing();
    for (int a = 0; a < lattice.dim; ++a) s += (2.0 - 2.0 * std::cos(k[a] * h)) / (h * h);
  }
  return s;
}

Field spectral_derivative(const Field& f, DerivativeOp op) {
  const auto& lat = f.lattice();
  auto s = fft_forward(f);
  auto half = s.half();
  if (op.kind == DerivativeOp::Kind::Laplacian) {
    s.for_each_mode([&](std::size_t i, const Point& k) {
      half[i] *= -minus_laplacian_symbol(LaplacianKind::Spectral, lat, k);
    });
  } else {
    require(op.axis >= 0 && op.axis < lat.dim, ErrorKind::InvalidArgument, "gradient axis");
    const double nyquist = std::numbers::pi / lat.spacing();
    s.for_each_mode([&](std::size_t i, const Point& k) {
      const double ka = k[op.axis];
      // The Nyquist mode has no real derivative; it is dropped.
      if (std::abs(std::abs(ka) - nyquist) < 1e-9 * nyquist) {
        half[i] = 0.0;
      } else {
        half[i] *= std::complex<double>(0.0, ka);
      }
    });
  }
  return fft_inverse(s);
}

std::vector<Field> spectral_gradient(const Field& f) {
  std::vector<Field> out;
  out.reserve(static_cast<std::size_t>(f.lattice().dim));
  for (int a = 0; a < f.lattice().dim; ++a) out.push_back(spectral_derivative(f, DerivativeOp::grad(a)));
  return out;
}

Field laplacian(const Field& f, LaplacianKind kind) {
  if (kind == LaplacianKind::Spectral) return spectral_derivative(f, DerivativeOp::laplacian());
  const auto& lat = f.lattice();
  auto s = fft_forward(f);
  auto half = s.half();
  s.for_each_mode([&](std::size_t i, const Point& k) {
    half[i] *= -minus_laplacian_symbol(kind, lat, k);
  });
  return fft_inverse(s);
}

// ---------------------------------------------------------------------------
// Weights

Weight Weight::polynomial(double a) {
  require(a > 0.0, ErrorKind::InvalidArgument, "polynomial weight needs a > 0");
  return Weight{Kind::Polynomial, a};
}

Weight Weight::exponential(double l) { return Weight{Kind::Exponential, l}; }

double Weight::at_radius(double r) const {
  return kind == Kind::Polynomial ? std::pow(1.0 + r, parameter)
                                  : std::exp(parameter * (1.0 + r));
}

double Weight::operator()(const Point& x, int dim) const {
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a) r2 += x[a] * x[a];
  return at_radius(std::sqrt(r2));
}

Field weight_eval(const Weight& w, const LatticeSpec& lattice) {
  return Field::from_position(lattice, [&](const Point& x) { return w(x, lattice.dim); });
}

}  // namespace anderson
