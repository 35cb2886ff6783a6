// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "anderson/lattice.hpp"

namespace anderson {

/// Lattice white noise: i.i.d. N(0, 1/h^d) per cell, a pure function of
/// (seed, stream, site).
struct WhiteNoiseSample {
  Field field;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// rho_eps(x) = eps^{-d} rho(x/eps) with rho = c exp(-1/(1-|x|^2)), stored in
/// displacement layout and normalized to discrete integral 1.
struct Mollifier {
  double epsilon = 1.0;
  Field profile;
};

/// Minimum ratio eps/h accepted by make_mollifier.
inline constexpr double kDefaultResolvability = 4.0;

WhiteNoiseSample sample_white_noise(const LatticeSpec& lattice, std::uint64_t seed,
                                    std::uint64_t stream);

/// Throws UnresolvedMollifier when eps < min_cells * h.
Mollifier make_mollifier(const LatticeSpec& lattice, double epsilon,
                         double min_cells = kDefaultResolvability);

Field mollify(const Field& xi, const Mollifier& m);
inline Field mollify(const WhiteNoiseSample& xi, const Mollifier& m) { return mollify(xi.field, m); }

/// (theta_x f)(y) = f(y - x) for a lattice vector x given in sites. Exact.
Field shift_field(const Field& f, const SiteIndex& shift);
/// Same, with x in physical units; rejects x that is not a multiple of h.
Field shift_field(const Field& f, const Point& x);

}  // namespace anderson
