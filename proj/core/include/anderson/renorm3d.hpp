// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Renormalization constants of the finite-eps 3D operator,
// C_eps = c_eps + c1_eps.
#pragma once

#include <cstdint>
#include <vector>

#include "anderson/lattice.hpp"
#include "anderson/noise.hpp"

namespace anderson {

/// K(x) = chi(|x|) / (4 pi |x|) in displacement layout, singular cell by its
/// exact cell average.
struct Kernel3D {
  Field K;
};

/// Requires a 3D lattice with L >= 4 so that B(0,2) fits in one period.
Kernel3D build_kernel_3d(const LatticeSpec& lattice);

struct RenormConstants3D {
  double epsilon = 0.0;
  double c_eps = 0.0;
  double c1_eps = 0.0;
  double c1_stderr = 0.0;
  [[nodiscard]] double total() const { return c_eps + c1_eps; }
};

/// c_eps = h^3 sum K (rho_eps * rho_eps), which is E[xi_eps(0) (K * xi_eps)(0)]
/// exactly for lattice noise.
double compute_c_eps_3d(const Mollifier& m, const Kernel3D& kernel);

/// Same constant in the continuum: (1 / 2 pi^2) int (1 + F3^(k)) rho^(eps k)^2 dk.
double c_eps_3d_continuum(double epsilon);

enum class C1Estimator {
  /// Spatial mean of xi K*(xi K*(xi K*xi - c)), as literally written.
  InnerOnly,
  /// Also subtracts c xi (K*K*xi), removing the pairing that diverges like 1/eps.
  WithCounterterm,
};

struct C1Options {
  std::size_t samples = 64;
  std::uint64_t seed = 0;
  C1Estimator estimator = C1Estimator::WithCounterterm;
  /// Stop early once the standard error is below this (0 disables).
  double stderr_target = 0.0;
  /// Hard cap on samples when a target is set; BudgetExhausted beyond it.
  std::size_t max_samples = 4096;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct C1Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::vector<double> per_sample;
};

/// Per-sample value of the c1 integrand (spatial mean) for one noise field.
double c1_sample_value(const Field& xi, const Mollifier& m, const Kernel3D& kernel, double c_eps,
                       C1Estimator estimator);

/// Monte-Carlo estimate over independent noise streams 0..samples-1.
C1Estimate estimate_c1_eps_3d(const Mollifier& m, const Kernel3D& kernel, double c_eps,
                              const C1Options& options);

/// Exact expectation of the WithCounterterm estimator by Wick's theorem on
/// the lattice (deterministic, no sampling).
double c1_eps_3d_wick(const Mollifier& m, const Kernel3D& kernel, double c_eps);

}  // namespace anderson
