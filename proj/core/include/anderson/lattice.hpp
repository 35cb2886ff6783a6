// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Periodic lattice discretization of R^d (d = 2, 3): grid description,
// real grid functions, their discrete Fourier transforms, and the weight
// functions used by the weighted norms.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace anderson {

using Point = std::array<double, 3>;
using SiteIndex = std::array<int, 3>;

/// Torus [-L/2, L/2)^dim sampled by N points per side.
///
/// Two coordinate conventions coexist. Functions of position (noise,
/// solutions, weights) live at cell centers x_k = (k + 1/2) h - L/2.
/// Convolution kernels are stored in displacement layout: index m holds
/// the kernel at displacement m*h wrapped into [-L/2, L/2), so that index 0
/// is the zero displacement and circular convolution is index-exact.
struct LatticeSpec {
  int dim = 2;
  double extent = 1.0;  // L
  int points = 8;       // N

  [[nodiscard]] double spacing() const { return extent / points; }
  [[nodiscard]] double cell_volume() const;
  [[nodiscard]] std::size_t sites() const;

  [[nodiscard]] SiteIndex unravel(std::size_t index) const;
  [[nodiscard]] std::size_t ravel(const SiteIndex& site) const;  // wraps cyclically

  /// Cell-centered coordinate of a site.
  [[nodiscard]] Point position(std::size_t index) const;
  /// Displacement m*h of a kernel index, wrapped into [-L/2, L/2).
  [[nodiscard]] Point displacement(std::size_t index) const;
  /// Angular wavenumber of discrete frequency j on one axis, in 2*pi/L*{-N/2..N/2-1}.
  [[nodiscard]] double wavenumber(int j) const;

  bool operator==(const LatticeSpec&) const = default;
};

/// Validates dim in {2,3}, N a power of two >= 8 and L > 0.
LatticeSpec make_lattice(int dim, double extent, int points);

/// Real grid function, row-major over dimensions (axis 0 slowest).
class Field {
 public:
  Field() = default;
  explicit Field(const LatticeSpec& lattice, double value = 0.0);
  Field(const LatticeSpec& lattice, std::vector<double> values);

  static Field from_position(const LatticeSpec& lattice,
                             const std::function<double(const Point&)>& f);
  static Field from_displacement(const LatticeSpec& lattice,
                                 const std::function<double(const Point&)>& f);

  [[nodiscard]] const LatticeSpec& lattice() const { return lattice_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::span<double> values() { return values_; }
  [[nodiscard]] const std::vector<double>& data() const { return values_; }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);
  Field& operator+=(double c);

  /// Discrete integral h^d sum f.
  [[nodiscard]] double integral() const;
  [[nodiscard]] double mean() const;
  [[nodiscard]] double sup_norm() const;
  [[nodiscard]] double min() const;
  [[nodiscard]] double max() const;
  [[nodiscard]] bool all_finite() const;

 private:
  LatticeSpec lattice_{};
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
Field operator-(Field a);
/// Pointwise product.
Field multiply(const Field& a, const Field& b);
/// Pointwise map.
Field map(const Field& a, const std::function<double(double)>& f);

/// h^d sum f g.
double inner_product(const Field& f, const Field& g);
/// sqrt(h^d sum f^2).
double l2_norm(const Field& f);

void require_same_lattice(const LatticeSpec& a, const LatticeSpec& b, const char* where);

/// Discrete Fourier transform of a real Field. Storage is the real-to-complex
/// half spectrum; `coefficient` exposes full complex ordering via conjugate
/// symmetry. Coefficients are the unnormalized sums sum_x f(x) e^{-2 pi i j.x/N}.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const LatticeSpec& lattice, std::vector<std::complex<double>> half);

  [[nodiscard]] const LatticeSpec& lattice() const { return lattice_; }
  [[nodiscard]] std::span<const std::complex<double>> half() const { return half_; }
  [[nodiscard]] std::span<std::complex<double>> half() { return half_; }
  /// Number of entries along the last (halved) axis.
  [[nodiscard]] int last_extent() const { return lattice_.points / 2 + 1; }

  /// Coefficient at full frequency index j (each component in 0..N-1).
  [[nodiscard]] std::complex<double> coefficient(const SiteIndex& j) const;
  /// sum over the full spectrum of |c_j|^2.
  [[nodiscard]] double full_power() const;

  /// Calls f(half_index, k) for every stored mode, k the angular wavevector.
  void for_each_mode(const std::function<void(std::size_t, const Point&)>& f) const;

 private:
  LatticeSpec lattice_{};
  std::vector<std::complex<double>> half_;
};

SpectralField fft_forward(const Field& f);
Field fft_inverse(const SpectralField& s);

/// inverse-FFT(FFT f * FFT kernel) * h^d; exact circular convolution.
Field periodic_convolve(const Field& f, const Field& kernel);
/// Cross-correlation h^d sum_y f(y) kernel(y - x).
Field periodic_correlate(const Field& f, const Field& kernel);

enum class LaplacianKind { Spectral, FiniteDifference };

/// Symbol of -Delta for a wavevector index: |k|^2 (spectral) or
/// sum_i (2 - 2 cos(k_i h))/h^2 (second-order stencil).
double minus_laplacian_symbol(LaplacianKind kind, const LatticeSpec& lattice, const Point& k);

struct DerivativeOp {
  enum class Kind { Gradient, Laplacian } kind = Kind::Laplacian;
  int axis = 0;
  static DerivativeOp grad(int axis) { return {Kind::Gradient, axis}; }
  static DerivativeOp laplacian() { return {Kind::Laplacian, 0}; }
};

/// Fourier-multiplier derivative: i k_axis (Nyquist mode dropped) or -|k|^2.
Field spectral_derivative(const Field& f, DerivativeOp op);
std::vector<Field> spectral_gradient(const Field& f);
Field laplacian(const Field& f, LaplacianKind kind = LaplacianKind::Spectral);

/// Weight functions p_a(x) = (1+|x|)^a and e_l(x) = exp(l (1+|x|)).
struct Weight {
  enum class Kind { Polynomial, Exponential } kind = Kind::Polynomial;
  double parameter = 0.0;

  static Weight polynomial(double a);
  static Weight exponential(double l);
  static Weight unit() { return exponential(0.0); }

  [[nodiscard]] double at_radius(double r) const;
  [[nodiscard]] double operator()(const Point& x, int dim) const;
};

/// Pointwise evaluation at cell centers (torus representative).
Field weight_eval(const Weight& w, const LatticeSpec& lattice);

}  // namespace anderson
