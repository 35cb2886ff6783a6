// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Parabolic Anderson model solvers. In 2D the equation is solved after the
// change of unknown w = e^V u, which turns the singular product into the
// drift equation
//   d_t w = Delta w - 2 grad V . grad w + g w,   V = G*X, g = U + F*X,
// and the semigroup is P_t f = e^{-V} w(t) with w(0) = e^V f. The generator
// is -H with H = -Delta + X + |grad V|^2 - U.
#pragma once

#include <iosfwd>
#include <vector>

#include "anderson/enhanced2d.hpp"
#include "anderson/lattice.hpp"

namespace anderson {

struct DriftData2D {
  Field V;
  std::vector<Field> gradV;
  Field g;
};

DriftData2D prepare_drift(const EnhancedNoise2D& q, const GreenKernel2D& kernel);

/// Potential of the operator generated by the discrete drift equation:
/// W = |grad V|^2 - Delta V - g (equals X + |grad V|^2 - U up to the
/// discrete Green identity).
Field effective_potential(const DriftData2D& drift);

enum class Scheme { ExpEuler, Strang };

struct SemigroupOptions {
  double dt = 1e-3;
  Scheme scheme = Scheme::ExpEuler;
  LaplacianKind laplacian = LaplacianKind::Spectral;
  double stability_margin = 0.5;
  bool record_diagnostics = false;
};

/// Largest admissible step: margin / (||g||_inf + ||grad V||_inf k_max), k_max = pi/h.
double dt_max_2d(const DriftData2D& drift, double margin);

struct Diagnostic {
  double t = 0.0;
  double l2 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// One time integration of the drift equation; owns its state.
class SemigroupRun {
 public:
  /// Starts from w(0) = e^V f. Throws DtPolicyViolation when dt > dt_max.
  SemigroupRun(const EnhancedNoise2D& q, const GreenKernel2D& kernel, const Field& f,
               const SemigroupOptions& options);
  SemigroupRun(DriftData2D drift, const Field& f, const SemigroupOptions& options);

  /// Advances by n steps of size dt.
  void advance(std::size_t steps);
  /// Advances to time t (t - now must be a multiple of dt, else the step is
  /// shortened uniformly so that the grid ends at t).
  void advance_to(double t);

  [[nodiscard]] double time() const { return t_; }
  [[nodiscard]] const Field& state() const { return w_; }
  [[nodiscard]] const DriftData2D& drift() const { return drift_; }
  [[nodiscard]] double dt_max() const { return dt_max_; }
  /// P_t f = e^{-V} w(t).
  [[nodiscard]] Field result() const;
  [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  /// More than 10% of the L2 mass of the result in the outer 10% shell.
  [[nodiscard]] bool wraparound_suspect() const;

 private:
  void step(double dt);
  void check_growth() const;

  DriftData2D drift_;
  SemigroupOptions options_;
  std::vector<double> heat_symbol_;  // |k|^2-type symbol per stored half mode
  Field w_;
  double w0_norm_ = 0.0;
  double growth_rate_ = 0.0;
  double dt_max_ = 0.0;
  double t_ = 0.0;
  std::vector<Diagnostic> diagnostics_;
};

/// P_t f for the enhanced noise q.
Field evolve_semigroup_2d(const EnhancedNoise2D& q, const GreenKernel2D& kernel, const Field& f,
                          double t, const SemigroupOptions& options = {});

/// e^{-tH} f for H = -Delta + xi_eps + C_eps (any dimension; used in 3D).
/// Steps: ExpEuler u <- e^{dt Delta}[u - dt W u]; Strang uses an exact
/// potential factor between two half heat steps. dt <= margin / ||W||_inf.
Field evolve_direct_3d(const Field& xi_eps, double c_eps, const Field& f, double t,
                       const SemigroupOptions& options = {});

/// Same stepping for an arbitrary potential W.
Field evolve_potential(const Field& W, const Field& f, double t,
                       const SemigroupOptions& options = {});

/// Exact heat semigroup e^{t Delta} as a Fourier multiplier.
Field heat_propagate(const Field& f, double t, LaplacianKind kind = LaplacianKind::Spectral);

/// CSV with columns t,l2,min,max.
void write_diagnostics(std::ostream& os, const std::vector<Diagnostic>& rows);

/// Step count and uniform step for a horizon t with nominal step dt.
std::pair<std::size_t, double> step_grid(double t, double dt);

}  // namespace anderson
