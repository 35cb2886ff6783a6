// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/noise.hpp"

#include <cmath>
#include <sstream>

#include "anderson/error.hpp"
#include "anderson/profiles.hpp"
#include "anderson/rng.hpp"

namespace anderson {

WhiteNoiseSample sample_white_noise(const LatticeSpec& lattice, std::uint64_t seed,
                                    std::uint64_t stream) {
  Field f(lattice);
  const double scale = 1.0 / std::sqrt(lattice.cell_volume());
  auto v = f.values();
  const std::size_t n = v.size();
  for (std::size_t pair = 0; 2 * pair < n; ++pair) {
    const auto [g0, g1] = gaussian_pair(seed, stream, pair);
    v[2 * pair] = scale * g0;
    if (2 * pair + 1 < n) v[2 * pair + 1] = scale * g1;
  }
  return {std::move(f), seed, stream};
}

Mollifier make_mollifier(const LatticeSpec& lattice, double epsilon, double min_cells) {
  require(epsilon > 0.0 && epsilon <= lattice.extent / 4.0, ErrorKind::InvalidArgument,
          "mollifier scale must lie in (0, L/4]");
  if (epsilon < min_cells * lattice.spacing()) {
    std::ostringstream os;
    os << "eps = " << epsilon << " < " << min_cells << " h = " << min_cells * lattice.spacing();
    fail(ErrorKind::UnresolvedMollifier, os.str());
  }
  const int d = lattice.dim;
  auto profile = Field::from_displacement(lattice, [&](const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
    return profiles::bump(std::sqrt(r2) / epsilon).value;
  });
  profile *= 1.0 / profile.integral();
  return {epsilon, std::move(profile)};
}

Field mollify(const Field& xi, const Mollifier& m) {
  require_same_lattice(xi.lattice(), m.profile.lattice(), "mollify");
  return periodic_convolve(xi, m.profile);
}

Field shift_field(const Field& f, const SiteIndex& shift) {
  const auto& lat = f.lattice();
  Field out(lat);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto s = lat.unravel(i);
    for (int a = 0; a < lat.dim; ++a) s[a] -= shift[a];
    out[i] = f[lat.ravel(s)];
  }
  return out;
}

Field shift_field(const Field& f, const Point& x) {
  const auto& lat = f.lattice();
  SiteIndex s{0, 0, 0};
  for (int a = 0; a < lat.dim; ++a) {
    const double cells = x[a] / lat.spacing();
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, std::abs(cells))) {
      std::ostringstream os;
      os << "component " << a << " = " << x[a] << " is not a multiple of h = " << lat.spacing();
      fail(ErrorKind::NonLatticeShift, os.str());
    }
    s[a] = static_cast<int>(rounded);
  }
  return shift_field(f, s);
}

}  // namespace anderson
