// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Two-dimensional enhanced noise q = (X, U): the truncated Green kernel G
// with -Delta G = delta_0 + F, the renormalization constant
// C_eps = E|grad Y_eps(0)|^2, Z_eps = |grad Y_eps|^2 - C_eps, the
// Cameron-Martin shift T_h, and the resonance fixed point.
#pragma once

#include <optional>
#include <vector>

#include "anderson/lattice.hpp"
#include "anderson/noise.hpp"

namespace anderson {

/// G(x) = -log|x| chi(|x|) / (2 pi) and F = -Delta G - delta_0, both in
/// displacement layout. The zero-displacement cell of G holds the exact
/// cell average of -log|x|/(2 pi).
struct GreenKernel2D {
  Field G;
  Field F;
};

/// Requires a 2D lattice with L > 4 so that supp G = B(0,2) fits.
GreenKernel2D build_green_kernel(const LatticeSpec& lattice);

struct RenormConstant2D {
  double epsilon = 0.0;
  double value = 0.0;
};

/// C_eps = || grad(G * rho_eps) ||^2_{L^2} by discrete Plancherel, using the
/// same spectral gradient as build_enhanced_2d.
RenormConstant2D compute_renorm_2d(const Mollifier& m, const GreenKernel2D& kernel);

/// The same constant from the continuum radial quadrature (no lattice).
double renorm_2d_continuum(double epsilon);

struct EnhancedNoise2D {
  Field X;
  Field U;
  std::optional<double> epsilon;  // empty for limit or manufactured data
};

/// X = xi * rho_eps, Y = G * X, U = |grad Y|^2 - C_eps.
EnhancedNoise2D build_enhanced_2d(const WhiteNoiseSample& xi, const Mollifier& m,
                                  const GreenKernel2D& kernel, const RenormConstant2D& c);
EnhancedNoise2D build_enhanced_2d(const Field& xi, const Mollifier& m,
                                  const GreenKernel2D& kernel, const RenormConstant2D& c);

/// T_h(X, U) = (X + h, U + 2 grad(G*X).grad(G*h) + |grad(G*h)|^2).
EnhancedNoise2D shift_T_h(const EnhancedNoise2D& q, const Field& h, const GreenKernel2D& kernel);

/// Lattice shift theta_x applied to both components.
EnhancedNoise2D shift_enhanced(const EnhancedNoise2D& q, const SiteIndex& shift);

// ---------------------------------------------------------------------------
// Resonance construction

/// v(d1, d2) = int grad G_{d1} . grad G_{d2} dx with G_d = G * rho_d and
/// G_0 = G, evaluated in Fourier space:
///   (1/2pi) int_0^inf (1 + F^(k))^2 rho^(d1 k) rho^(d2 k) dk / k.
double gradient_overlap(double delta1, double delta2);

/// lambda_delta = delta^{1/delta}.
double resonance_scale(double delta);

struct ResonanceResult {
  double delta = 0.0;
  double lambda = 0.0;
  double a = 0.0;
  double residual = 0.0;            // |E[Y_delta(0)] - c| at the returned a
  double contraction_factor = 0.0;  // Lipschitz bound of M on the visited ball
  int iterations = 0;
};

struct ResonanceOptions {
  double tolerance = 1e-12;
  int max_iterations = 500;
};

/// Fixed point a = M(a) of
///   M(a) = [c - v(d,d) + 2 a v(d,l) - a^2 v(l,l) + 2 v(d,0)] / (2 v(l,0)).
/// Throws NoContraction when the measured Lipschitz factor is >= 1.
ResonanceResult solve_resonance(double c, double delta, const ResonanceOptions& options = {});

/// Left-hand side of the defining equation minus c at a given a.
double resonance_defect(double c, double delta, double a);

struct ResonanceSweep {
  std::vector<ResonanceResult> accepted;
  std::vector<double> rejected;  // deltas without contraction
  double r0 = 0.0;               // max |a_delta| / delta over accepted
  double delta0 = 0.0;           // largest accepted delta
};

ResonanceSweep resonance_sweep(double c, const std::vector<double>& deltas,
                               const ResonanceOptions& options = {});

}  // namespace anderson
