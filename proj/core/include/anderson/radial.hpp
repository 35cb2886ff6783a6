// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Continuum Fourier transforms of the radial profiles, used where a lattice
// cannot resolve the relevant scales (the resonance construction works at
// scales like delta^{1/delta}). Transforms are tabulated once on a uniform grid
// and interpolated with cubic B-splines.
#pragma once

namespace anderson::radial {

/// Fourier transform of the unit-mass bump rho at |k| = u in dimension 2 or 3.
double bump_transform(int dim, double u);

/// |k|^2 \hat G(k) = 1 + \hat F(k), where -Delta G = delta_0 + F.
double green_multiplier(int dim, double k);

/// Direct adaptive quadrature of the 2D Hankel transform
/// 2 pi int_a^b f(r) J0(k r) r dr; exposed for cross-checks.
double hankel_bump_2d(double u);

}  // namespace anderson::radial
