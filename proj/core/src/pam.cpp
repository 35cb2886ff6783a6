// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/pam.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

#include "anderson/error.hpp"

namespace anderson {
namespace {

std::vector<double> symbol_table(const LatticeSpec& lat, LaplacianKind kind) {
  const SpectralField probe = fft_forward(Field(lat));
  std::vector<double> out(probe.half().size());
  probe.for_each_mode(
      [&](std::size_t i, const Point& k) { out[i] = minus_laplacian_symbol(kind, lat, k); });
  return out;
}

Field apply_heat(const Field& f, const std::vector<double>& symbol, double tau) {
  auto s = fft_forward(f);
  auto half = s.half();
  for (std::size_t i = 0; i < half.size(); ++i) half[i] *= std::exp(-tau * symbol[i]);
  return fft_inverse(s);
}

// Gradient along `axis` from a precomputed spectrum, Nyquist mode dropped.
Field gradient_from(const SpectralField& s, int axis) {
  const auto& lat = s.lattice();
  const double nyquist = std::numbers::pi / lat.spacing();
  SpectralField d = s;
  auto half = d.half();
  d.for_each_mode([&](std::size_t i, const Point& k) {
    const double ka = k[axis];
    if (std::abs(std::abs(ka) - nyquist) < 1e-9 * nyquist) {
      half[i] = 0.0;
    } else {
      half[i] *= std::complex<double>(0.0, ka);
    }
  });
  return fft_inverse(d);
}

// Drift part N(w) = -2 grad V . grad w + g w.
Field drift_term(const DriftData2D& d, const Field& w) {
  const auto s = fft_forward(w);
  Field out = multiply(d.g, w);
  for (int a = 0; a < w.lattice().dim; ++a) {
    const auto gw = gradient_from(s, a);
    const auto& gv = d.gradV[static_cast<std::size_t>(a)];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= 2.0 * gv[i] * gw[i];
  }
  return out;
}

Diagnostic diagnose(double t, const Field& w) { return {t, l2_norm(w), w.min(), w.max()}; }

}  // namespace

std::pair<std::size_t, double> step_grid(double t, double dt) {
  require(t >= 0.0 && dt > 0.0, ErrorKind::InvalidArgument, "step_grid needs t >= 0, dt > 0");
  if (t == 0.0) return {0, dt};
  const auto n = static_cast<std::size_t>(std::llround(t / dt));
  if (n > 0 && std::abs(static_cast<double>(n) * dt - t) <= 1e-9 * t) return {n, dt};
  const auto m = static_cast<std::size_t>(std::ceil(t / dt));
  return {m, t / static_cast<double>(m)};
}

DriftData2D prepare_drift(const EnhancedNoise2D& q, const GreenKernel2D& kernel) {
  require(q.X.lattice().dim == 2, ErrorKind::UnsupportedDimension, "prepare_drift is 2D");
  require_same_lattice(q.X.lattice(), q.U.lattice(), "prepare_drift");
  require_same_lattice(q.X.lattice(), kernel.G.lattice(), "prepare_drift");
  auto V = periodic_convolve(q.X, kernel.G);
  auto gradV = spectral_gradient(V);
  auto g = q.U + periodic_convolve(q.X, kernel.F);
  return {std::move(V), std::move(gradV), std::move(g)};
}

Field effective_potential(const DriftData2D& drift) {
  Field W = -laplacian(drift.V);
  for (const auto& gv : drift.gradV) W += multiply(gv, gv);
  W -= drift.g;
  return W;
}

double dt_max_2d(const DriftData2D& drift, double margin) {
  const auto& lat = drift.V.lattice();
  double grad_sup = 0.0;
  for (std::size_t i = 0; i < drift.V.size(); ++i) {
    double s = 0.0;
    for (const auto& gv : drift.gradV) s += gv[i] * gv[i];
    grad_sup = std::max(grad_sup, std::sqrt(s));
  }
  const double k_max = std::numbers::pi / lat.spacing();
  const double rate = drift.g.sup_norm() + grad_sup * k_max;
  return rate == 0.0 ? std::numeric_limits<double>::infinity() : margin / rate;
}

SemigroupRun::SemigroupRun(const EnhancedNoise2D& q, const GreenKernel2D& kernel, const Field& f,
                           const SemigroupOptions& options)
    : SemigroupRun(prepare_drift(q, kernel), f, options) {}

SemigroupRun::SemigroupRun(DriftData2D drift, const Field& f, const SemigroupOptions& options)
    : drift_(std::move(drift)), options_(options) {
  require_same_lattice(drift_.V.lattice(), f.lattice(), "SemigroupRun");
  require(options_.dt > 0.0, ErrorKind::InvalidArgument, "dt must be positive");
  dt_max_ = dt_max_2d(drift_, options_.stability_margin);
  require(options_.dt <= dt_max_ * (1.0 + 1e-12), ErrorKind::DtPolicyViolation,
          "dt = " + std::to_string(options_.dt) + " exceeds dt_max = " + std::to_string(dt_max_));
  heat_symbol_ = symbol_table(f.lattice(), options_.laplacian);
  // The L2 energy of w grows at most at rate ||Delta V + g||_inf.
  growth_rate_ = (laplacian(drift_.V) + drift_.g).sup_norm();
  w_ = multiply(map(drift_.V, [](double v) { return std::exp(v); }), f);
  w0_norm_ = l2_norm(w_);
  if (options_.record_diagnostics) diagnostics_.push_back(diagnose(0.0, w_));
}

void SemigroupRun::step(double dt) {
  if (options_.scheme == Scheme::ExpEuler) {
    auto rhs = drift_term(drift_, w_);
    rhs *= dt;
    rhs += w_;
    w_ = apply_heat(rhs, heat_symbol_, dt);
  } else {
    auto w = apply_heat(w_, heat_symbol_, 0.5 * dt);
    const auto k1 = drift_term(drift_, w);
    const auto k2 = drift_term(drift_, w + (0.5 * dt) * k1);
    const auto k3 = drift_term(drift_, w + (0.5 * dt) * k2);
    const auto k4 = drift_term(drift_, w + dt * k3);
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    w_ = apply_heat(w, heat_symbol_, 0.5 * dt);
  }
  t_ += dt;
  if (options_.record_diagnostics) diagnostics_.push_back(diagnose(t_, w_));
}

void SemigroupRun::advance(std::size_t steps) {
  for (std::size_t i = 0; i < steps; ++i) step(options_.dt);
  check_growth();
}

void SemigroupRun::advance_to(double t) {
  require(t >= t_, ErrorKind::InvalidArgument, "advance_to cannot go back in time");
  const auto [n, dt] = step_grid(t - t_, options_.dt);
  for (std::size_t i = 0; i < n; ++i) step(dt);
  check_growth();
}

void SemigroupRun::check_growth() const {
  require(w_.all_finite(), ErrorKind::StabilityViolation, "non-finite state");
  const double bound = 10.0 * std::exp((growth_rate_ + 1.0) * t_) * w0_norm_;
  require(l2_norm(w_) <= bound, ErrorKind::StabilityViolation,
          "solution growth exceeds the energy bound");
}

Field SemigroupRun::result() const {
  return multiply(map(drift_.V, [](double v) { return std::exp(-v); }), w_);
}

bool SemigroupRun::wraparound_suspect() const {
  const auto u = result();
  const auto& lat = u.lattice();
  const double edge = 0.9 * 0.5 * lat.extent;
  double outer = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto x = lat.position(i);
    double m = 0.0;
    for (int a = 0; a < lat.dim; ++a) m = std::max(m, std::abs(x[a]));
    total += u[i] * u[i];
    if (m > edge) outer += u[i] * u[i];
  }
  return total > 0.0 && outer > 0.1 * total;
}

Field evolve_semigroup_2d(const EnhancedNoise2D& q, const GreenKernel2D& kernel, const Field& f,
                          double t, const SemigroupOptions& options) {
  SemigroupRun run(q, kernel, f, options);
  run.advance_to(t);
  return run.result();
}

Field evolve_potential(const Field& W, const Field& f, double t,
                       const SemigroupOptions& options) {
  require_same_lattice(W.lattice(), f.lattice(), "evolve_potential");
  require(W.all_finite(), ErrorKind::InvalidArgument, "potential must be finite");
  const double w_sup = W.sup_norm();
  if (w_sup > 0.0) {
    require(options.dt <= options.stability_margin / w_sup * (1.0 + 1e-12),
            ErrorKind::DtPolicyViolation, "dt exceeds margin / ||W||_inf");
  }
  const auto symbol = symbol_table(f.lattice(), options.laplacian);
  const auto [n, dt] = step_grid(t, options.dt);
  Field u = f;
  const auto half_factor = map(W, [dt = dt](double w) { return std::exp(-dt * w); });
  for (std::size_t s = 0; s < n; ++s) {
    if (options.scheme == Scheme::ExpEuler) {
      Field rhs = u;
      for (std::size_t i = 0; i < u.size(); ++i) rhs[i] -= dt * W[i] * u[i];
      u = apply_heat(rhs, symbol, dt);
    } else {
      u = apply_heat(multiply(half_factor, apply_heat(u, symbol, 0.5 * dt)), symbol, 0.5 * dt);
    }
  }
  require(u.all_finite(), ErrorKind::StabilityViolation, "non-finite state");
  require(l2_norm(u) <= 10.0 * std::exp((w_sup + 1.0) * t) * l2_norm(f),
          ErrorKind::StabilityViolation, "solution growth exceeds the energy bound");
  return u;
}

Field evolve_direct_3d(const Field& xi_eps, double c_eps, const Field& f, double t,
                       const SemigroupOptions& options) {
  require(xi_eps.lattice().dim == 3, ErrorKind::UnsupportedDimension, "evolve_direct_3d is 3D");
  Field W = xi_eps;
  W += c_eps;
  return evolve_potential(W, f, t, options);
}

Field heat_propagate(const Field& f, double t, LaplacianKind kind) {
  require(t >= 0.0, ErrorKind::InvalidArgument, "heat_propagate needs t >= 0");
  if (t == 0.0) return f;
  return apply_heat(f, symbol_table(f.lattice(), kind), t);
}

void write_diagnostics(std::ostream& os, const std::vector<Diagnostic>& rows) {
  os << "t,l2,min,max\n" << std::setprecision(17);
  for (const auto& r : rows) os << r.t << ',' << r.l2 << ',' << r.min << ',' << r.max << '\n';
}

}  // namespace anderson
