// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Weighted L2 norms and a multiscale estimator of negative-regularity
// weighted Holder norms.
#pragma once

#include <iosfwd>
#include <vector>

#include "anderson/lattice.hpp"

namespace anderson {

/// sqrt(h^d sum f^2 / w).
double weighted_l2_norm(const Field& f, const Weight& w);

struct HolderOptions {
  /// Subsampling stride of the sup over x; 0 picks 1 up to 256^2 sites and 4 above.
  int stride = 0;
};

struct HolderEstimate {
  double alpha = 0.0;
  Weight weight;
  int stride = 1;
  std::vector<double> scales;     // dyadic lambda, decreasing, all >= 2h
  std::vector<double> per_scale;  // lambda^{-alpha} sup_x |<f, phi^lambda_x>| / w(x)
  double value = 0.0;             // max of per_scale
};

/// sup over dyadic lambda in [2h, 1], test functions in {psi} U {d_i psi}
/// and sampled x of lambda^{-alpha} |<f, phi^lambda_x>| / w(x).
/// Throws TooFewScales when fewer than three scales fit.
HolderEstimate holder_norm_estimate(const Field& f, double alpha, const Weight& w,
                                    const HolderOptions& options = {});

/// Test function psi^lambda in displacement layout (unit discrete mass).
Field holder_test_function(const LatticeSpec& lattice, double lambda);

/// CSV with columns lambda,sup_value.
void write_holder_profile(std::ostream& os, const HolderEstimate& est);

}  // namespace anderson
