// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Discrete Hamiltonians H = -Delta + W, spectral measures of H and their
// transforms, and pooled spectrum statistics.
#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "anderson/lattice.hpp"

namespace anderson {

/// Largest number of unknowns for which a dense matrix is assembled.
inline constexpr std::size_t kDenseLimit = 4096;

enum class MatrixForm { Dense, OperatorOnly };

struct DiscreteHamiltonian {
  LatticeSpec lattice;
  Field W;
  LaplacianKind laplacian = LaplacianKind::FiniteDifference;
  MatrixForm form = MatrixForm::Dense;
  std::vector<double> matrix;  // n x n, row-major (symmetric), dense form only

  [[nodiscard]] std::size_t size() const { return lattice.sites(); }
  [[nodiscard]] double at(std::size_t i, std::size_t j) const { return matrix[i * size() + j]; }
};

/// fd2: periodic (2d+1)-point stencil / h^2; spectral: dense Fourier
/// multiplier |k|^2. Throws DenseTooLarge for a dense request above kDenseLimit.
DiscreteHamiltonian assemble_hamiltonian(const Field& W, LaplacianKind kind,
                                         MatrixForm form = MatrixForm::Dense);

/// H f without a matrix.
Field apply_hamiltonian(const DiscreteHamiltonian& H, const Field& f);

struct Eigensystem {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column k is the Euclidean-normalized eigenvector of values[k]
};

Eigensystem eigensolve(const DiscreteHamiltonian& H);
std::vector<double> eigenvalues(const DiscreteHamiltonian& H);

/// mu_f = sum_k <f, e_k>^2 delta_{lambda_k} with e_k orthonormal in L^2.
struct SpectralMeasure {
  std::vector<double> lambda;  // ascending
  std::vector<double> weight;  // >= 0
  [[nodiscard]] double mass() const;
};

SpectralMeasure spectral_measure(const Eigensystem& eig, const Field& f);
/// Dense path: full eigendecomposition.
SpectralMeasure eigensolve_spectral_measure(const DiscreteHamiltonian& H, const Field& f);

struct LanczosOptions {
  std::size_t steps = 80;
};

/// Gauss quadrature measure from `steps` Lanczos iterations started at f
/// (full reorthogonalization). Its moments of order < 2 * steps equal those
/// of mu_f up to rounding. Works for operator-only Hamiltonians.
SpectralMeasure lanczos_spectral_measure(const DiscreteHamiltonian& H, const Field& f,
                                         const LanczosOptions& options = {});

/// sum_k w_k e^{-s lambda_k}, with e^{-s lambda_min} factored out and
/// compensated summation.
double laplace_of_measure(const SpectralMeasure& mu, double s);

/// sum_k w_k / (lambda_k - z).
std::complex<double> stieltjes_transform(const SpectralMeasure& mu, std::complex<double> z);

/// Levy distance between the distribution functions of mu/|mu| and nu/|nu|.
double levy_distance(const SpectralMeasure& mu, const SpectralMeasure& nu);

struct HistogramBin {
  double left = 0.0;
  double right = 0.0;
  std::size_t count = 0;
};

struct IdsOptions {
  double interval_lo = -5.0;
  double interval_hi = 20.0;
  double coverage_radius = 0.5;
  double bin_width = 0.5;
};

struct IdsSummary {
  std::vector<HistogramBin> histogram;   // pooled eigenvalues on their full range
  std::vector<double> ground_states;     // per sample
  std::vector<double> top_states;        // per sample
  double median_ground_state = 0.0;
  double coverage = 0.0;                 // fraction of the interval within radius of an eigenvalue
  double max_gap = 0.0;                  // largest gap between pooled eigenvalues in the interval
};

/// Pooled statistics over >= 4 eigenvalue samples.
IdsSummary ids_and_ground_state(const std::vector<std::vector<double>>& samples,
                                const IdsOptions& options = {});

/// CSV (lambda, weight) and (bin_left, bin_right, count).
void write_measure_csv(std::ostream& os, const SpectralMeasure& mu);
void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& bins);

}  // namespace anderson
