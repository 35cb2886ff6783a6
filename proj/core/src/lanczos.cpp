// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <lapacke.h>

#include <cmath>

#include "anderson/error.hpp"
#include "anderson/spectral.hpp"

namespace anderson {

SpectralMeasure lanczos_spectral_measure(const DiscreteHamiltonian& H, const Field& f,
                                         const LanczosOptions& options) {
  require(options.steps >= 1, ErrorKind::InvalidArgument, "lanczos needs at least one step");
  const double f_norm = l2_norm(f);
  if (f_norm == 0.0) return {};
  const std::size_t m_max = std::min(options.steps, H.size());

  // Krylov basis in the L2 inner product, fully reorthogonalized.
  std::vector<Field> basis;
  std::vector<double> alpha;
  std::vector<double> beta;
  Field q = f;
  q *= 1.0 / f_norm;
  for (std::size_t j = 0; j < m_max; ++j) {
    basis.push_back(q);
    Field r = apply_hamiltonian(H, q);
    alpha.push_back(inner_product(q, r));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double c = inner_product(b, r);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
      }
    }
    const double b = l2_norm(r);
    // An invariant subspace ends the recursion; the quadrature is then exact.
    if (j + 1 == m_max || b <= 1e-13 * std::max(1.0, std::abs(alpha.back()))) break;
    beta.push_back(b);
    r *= 1.0 / b;
    q = std::move(r);
  }

  const auto m = static_cast<lapack_int>(alpha.size());
  std::vector<double> d = alpha;
  std::vector<double> e(beta.begin(), beta.end());
  e.resize(std::max<std::size_t>(1, alpha.size()));
  std::vector<double> z(alpha.size() * alpha.size());
  const lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', m, d.data(), e.data(), z.data(), m);
  require(info == 0, ErrorKind::ConvergenceFailure,
          "tridiagonal eigensolve failed with info = " + std::to_string(info));
  SpectralMeasure mu{d, std::vector<double>(alpha.size())};
  const double mass = f_norm * f_norm;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    const double first = z[k * alpha.size()];
    mu.weight[k] = mass * first * first;
  }
  return mu;
}

}  // namespace anderson
