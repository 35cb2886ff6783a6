// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Weyl-sequence probes: f_n(x) = chi((x - z_n)/n), L2-normalized, centred
// where the potential is flattest at level r over the ball B(z_n, n).
#pragma once

#include "anderson/lattice.hpp"

namespace anderson {

struct WeylProbeResult {
  double r = 0.0;
  double n = 0.0;
  SiteIndex z{};
  double sup_dev = 0.0;         // sup over B(z, n) of |W - r|
  double laplacian_norm = 0.0;  // ||Delta f_n||
  double residual = 0.0;        // ||(H - r) f_n||
  double bound = 0.0;           // laplacian_norm + sup_dev
};

/// For every site z, sup over lattice sites y with |x_y - x_z| <= n of g(y).
/// Cost is N^d times the number of ball rows: each row of the ball is a
/// window of the last axis, served by sliding-window maxima.
Field ball_max_filter(const Field& g, double n);

/// The L2-normalized bump chi((x - x_z)/n); chi = 1 on B(0,1/2), 0 off B(0,1).
Field weyl_function(const LatticeSpec& lattice, const SiteIndex& z, double n);

/// Throws BallTooLarge unless 2n < L/2. Ties in the argmin go to the
/// smallest site index.
WeylProbeResult weyl_probe(const Field& W, double r, double n,
                           LaplacianKind kind = LaplacianKind::Spectral);

}  // namespace anderson
