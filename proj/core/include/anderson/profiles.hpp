// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Radial building blocks shared by kernels, mollifiers and test functions.
#pragma once

namespace anderson::profiles {

/// Value and first two derivatives of a radial profile at one radius.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Smooth step s(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}), 0 for t<=0, 1 for t>=1.
Jet smooth_step(double t);

/// Cutoff chi: 1 on [0,1], 1 - s(r-1) on (1,2), 0 from 2 on.
Jet cutoff(double r);

/// Cutoff equal to 1 on [0,1/2] and supported in [0,1]: 1 - s(2r-1).
Jet half_cutoff(double r);

/// Unnormalized bump exp(-1/(1-r^2)) on r<1, 0 otherwise.
Jet bump(double r);

/// G(r) = -log(r) chi(r) / (2 pi), the 2D Green kernel away from 0.
double green_2d(double r);
/// F = -Delta G on the annulus 1 < r < 2 (0 elsewhere).
double green_2d_remainder(double r);

/// K(r) = chi(r) / (4 pi r), the 3D Green kernel away from 0.
double green_3d(double r);
/// F3 = -Delta K on the annulus 1 < r < 2 (0 elsewhere).
double green_3d_remainder(double r);

/// Cell average of -log|x|/(2 pi) over the square [-h/2, h/2]^2.
double green_2d_cell_average(double h);
/// Cell average of 1/(4 pi |x|) over the cube [-h/2, h/2]^3.
double green_3d_cell_average(double h);

}  // namespace anderson::profiles
