// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/weyl.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "anderson/error.hpp"
#include "anderson/profiles.hpp"

namespace anderson {
namespace {

// Cyclic sliding maximum of `row` over windows [i - w, i + w].
void sliding_max(const double* row, int n, int w, double* out) {
  if (2 * w + 1 >= n) {
    double m = row[0];
    for (int i = 1; i < n; ++i) m = std::max(m, row[i]);
    for (int i = 0; i < n; ++i) out[i] = m;
    return;
  }
  std::deque<int> dq;  // indices into the unrolled sequence, values decreasing
  auto value = [&](int j) { return row[((j % n) + n) % n]; };
  for (int j = -w; j < n + w; ++j) {
    while (!dq.empty() && value(dq.back()) <= value(j)) dq.pop_back();
    dq.push_back(j);
    const int centre = j - w;
    if (centre >= 0) {
      while (dq.front() < centre - w) dq.pop_front();
      out[centre] = value(dq.front());
    }
  }
}

}  // namespace

Field ball_max_filter(const Field& g, double n) {
  const auto& lat = g.lattice();
  const double h = lat.spacing();
  const int N = lat.points;
  const int reach = static_cast<int>(std::floor(n / h + 1e-9));
  const int d = lat.dim;

  // Ball rows: offsets on the leading axes with the half-width on the last axis.
  struct Row {
    SiteIndex offset;
    int half_width;
  };
  std::vector<Row> rows;
  const int lead = d - 1;
  SiteIndex o{};
  const int span = 2 * reach + 1;
  const int count = lead == 1 ? span : span * span;
  for (int c = 0; c < count; ++c) {
    o[0] = c % span - reach;
    if (lead == 2) o[1] = c / span - reach;
    double r2 = 0.0;
    for (int a = 0; a < lead; ++a) r2 += (o[a] * h) * (o[a] * h);
    if (r2 > n * n * (1 + 1e-12)) continue;
    const int w = static_cast<int>(std::floor(std::sqrt(std::max(0.0, n * n - r2)) / h + 1e-9));
    rows.push_back({o, w});
  }

  // Sliding maxima along the last axis, one per distinct half-width.
  std::map<int, Field> by_width;
  for (const auto& row : rows) {
    if (by_width.count(row.half_width)) continue;
    Field m(lat);
    for (std::size_t start = 0; start < g.size(); start += static_cast<std::size_t>(N)) {
      sliding_max(g.values().data() + start, N, row.half_width, m.values().data() + start);
    }
    by_width.emplace(row.half_width, std::move(m));
  }

  Field out(lat, -std::numeric_limits<double>::infinity());
  for (const auto& row : rows) {
    const auto& m = by_width.at(row.half_width);
    for (std::size_t i = 0; i < g.size(); ++i) {
      auto s = lat.unravel(i);
      for (int a = 0; a < lead; ++a) s[a] += row.offset[a];
      out[i] = std::max(out[i], m[lat.ravel(s)]);
    }
  }
  return out;
}

Field weyl_function(const LatticeSpec& lattice, const SiteIndex& z, double n) {
  Field f(lattice);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto s = lattice.unravel(i);
    SiteIndex diff{};
    for (int a = 0; a < lattice.dim; ++a) diff[a] = s[a] - z[a];
    const auto x = lattice.displacement(lattice.ravel(diff));
    double r2 = 0.0;
    for (int a = 0; a < lattice.dim; ++a) r2 += x[a] * x[a];
    f[i] = profiles::half_cutoff(std::sqrt(r2) / n).value;
  }
  f *= 1.0 / l2_norm(f);
  return f;
}

WeylProbeResult weyl_probe(const Field& W, double r, double n, LaplacianKind kind) {
  const auto& lat = W.lattice();
  require(n > 0.0, ErrorKind::InvalidArgument, "weyl_probe needs n > 0");
  require(2.0 * n < 0.5 * lat.extent, ErrorKind::BallTooLarge,
          "weyl_probe needs 2n < L/2");
  const auto dev = map(W, [r](double w) { return std::abs(w - r); });
  const auto sup = ball_max_filter(dev, n);
  std::size_t best = 0;
  for (std::size_t i = 1; i < sup.size(); ++i) {
    if (sup[i] < sup[best]) best = i;
  }
  WeylProbeResult out;
  out.r = r;
  out.n = n;
  out.z = lat.unravel(best);
  out.sup_dev = sup[best];
  const auto f = weyl_function(lat, out.z, n);
  const auto lap = laplacian(f, kind);
  out.laplacian_norm = l2_norm(lap);
  Field residual(lat);
  for (std::size_t i = 0; i < f.size(); ++i) residual[i] = (W[i] - r) * f[i] - lap[i];
  out.residual = l2_norm(residual);
  out.bound = out.laplacian_norm + out.sup_dev;
  return out;
}

}  // namespace anderson
