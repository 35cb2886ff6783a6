// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "anderson/error.hpp"
#include "anderson/stats.hpp"

namespace anderson {
namespace {

// Kahan-Babuska compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// First column of the circulant matrix of -Delta.
Field laplacian_column(const LatticeSpec& lat, LaplacianKind kind) {
  Field delta(lat);
  delta[0] = 1.0;
  return -laplacian(delta, kind);
}

}  // namespace

DiscreteHamiltonian assemble_hamiltonian(const Field& W, LaplacianKind kind, MatrixForm form) {
  require(W.all_finite(), ErrorKind::InvalidArgument, "potential must be finite");
  const auto& lat = W.lattice();
  DiscreteHamiltonian H{lat, W, kind, form, {}};
  if (form == MatrixForm::OperatorOnly) return H;
  const std::size_t n = lat.sites();
  require(n <= kDenseLimit, ErrorKind::DenseTooLarge,
          "dense Hamiltonian limited to " + std::to_string(kDenseLimit) + " unknowns, got " +
              std::to_string(n));
  H.matrix.assign(n * n, 0.0);
  if (kind == LaplacianKind::FiniteDifference) {
    const double inv_h2 = 1.0 / (lat.spacing() * lat.spacing());
    for (std::size_t i = 0; i < n; ++i) {
      const auto s = lat.unravel(i);
      H.matrix[i * n + i] += 2.0 * lat.dim * inv_h2;
      for (int a = 0; a < lat.dim; ++a) {
        for (int step : {-1, 1}) {
          auto t = s;
          t[a] += step;
          H.matrix[i * n + lat.ravel(t)] -= inv_h2;
        }
      }
    }
  } else {
    const auto column = laplacian_column(lat, kind);
    for (std::size_t i = 0; i < n; ++i) {
      const auto si = lat.unravel(i);
      for (std::size_t j = 0; j < n; ++j) {
        const auto sj = lat.unravel(j);
        SiteIndex d{};
        for (int a = 0; a < lat.dim; ++a) d[a] = si[a] - sj[a];
        H.matrix[i * n + j] = column[lat.ravel(d)];
      }
    }
    // Symmetrize away rounding in the inverse transform.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double m = 0.5 * (H.matrix[i * n + j] + H.matrix[j * n + i]);
        H.matrix[i * n + j] = H.matrix[j * n + i] = m;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) H.matrix[i * n + i] += W[i];
  return H;
}

Field apply_hamiltonian(const DiscreteHamiltonian& H, const Field& f) {
  require_same_lattice(H.lattice, f.lattice(), "apply_hamiltonian");
  return multiply(H.W, f) - laplacian(f, H.laplacian);
}

Eigensystem eigensolve(const DiscreteHamiltonian& H) {
  require(H.form == MatrixForm::Dense, ErrorKind::InvalidArgument, "eigensolve needs a dense matrix");
  const auto n = static_cast<lapack_int>(H.size());
  Eigensystem out;
  out.vectors = H.matrix;  // symmetric, so row- and column-major agree
  out.values.resize(H.size());
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, out.vectors.data(), n, out.values.data());
  require(info == 0, ErrorKind::ConvergenceFailure,
          "dsyevd failed with info = " + std::to_string(info));
  return out;
}

std::vector<double> eigenvalues(const DiscreteHamiltonian& H) {
  require(H.form == MatrixForm::Dense, ErrorKind::InvalidArgument, "eigenvalues needs a dense matrix");
  const auto n = static_cast<lapack_int>(H.size());
  auto a = H.matrix;
  std::vector<double> values(H.size());
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'U', n, a.data(), n, values.data());
  require(info == 0, ErrorKind::ConvergenceFailure,
          "dsyevd failed with info = " + std::to_string(info));
  return values;
}

double SpectralMeasure::mass() const { return stats::pairwise_sum(weight); }

SpectralMeasure spectral_measure(const Eigensystem& eig, const Field& f) {
  const std::size_t n = eig.values.size();
  require(f.size() == n, ErrorKind::LatticeMismatch, "spectral_measure size mismatch");
  const double cell = f.lattice().cell_volume();
  SpectralMeasure mu{eig.values, std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const double* v = eig.vectors.data() + k * n;
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += v[i] * f[i];
    // e_k = v_k / sqrt(h^d) is L2-normalized, so <f, e_k> = sqrt(h^d) v_k . f.
    mu.weight[k] = cell * dot * dot;
  }
  return mu;
}

SpectralMeasure eigensolve_spectral_measure(const DiscreteHamiltonian& H, const Field& f) {
  return spectral_measure(eigensolve(H), f);
}

double laplace_of_measure(const SpectralMeasure& mu, double s) {
  require(s >= 0.0, ErrorKind::InvalidArgument, "laplace_of_measure needs s >= 0");
  if (mu.lambda.empty()) return 0.0;
  const double lmin = *std::min_element(mu.lambda.begin(), mu.lambda.end());
  CompensatedSum sum;
  for (std::size_t k = 0; k < mu.lambda.size(); ++k) {
    sum.add(mu.weight[k] * std::exp(-s * (mu.lambda[k] - lmin)));
  }
  return std::exp(-s * lmin) * sum.value();
}

std::complex<double> stieltjes_transform(const SpectralMeasure& mu, std::complex<double> z) {
  CompensatedSum re;
  CompensatedSum im;
  for (std::size_t k = 0; k < mu.lambda.size(); ++k) {
    const auto term = mu.weight[k] / (mu.lambda[k] - z);
    re.add(term.real());
    im.add(term.imag());
  }
  return {re.value(), im.value()};
}

namespace {

// Right-continuous distribution function of a normalized atomic measure.
class Cdf {
 public:
  explicit Cdf(const SpectralMeasure& mu) {
    std::vector<std::size_t> order(mu.lambda.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return mu.lambda[a] < mu.lambda[b]; });
    const double total = mu.mass();
    require(total > 0.0, ErrorKind::InvalidArgument, "levy_distance needs nonzero measures");
    double acc = 0.0;
    for (auto i : order) {
      acc += mu.weight[i] / total;
      x_.push_back(mu.lambda[i]);
      F_.push_back(acc);
    }
  }
  [[nodiscard]] double operator()(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    return it == x_.begin() ? 0.0 : F_[static_cast<std::size_t>(it - x_.begin()) - 1];
  }
  [[nodiscard]] const std::vector<double>& atoms() const { return x_; }

 private:
  std::vector<double> x_;
  std::vector<double> F_;
};

// F(x - d) - d <= G(x) <= F(x + d) + d for all x; both sides are
// piecewise constant between the listed event points.
bool levy_ok(const Cdf& F, const Cdf& G, double d) {
  const double tol = 1e-15;
  for (double x : G.atoms()) {
    if (G(x) > F(x + d) + d + tol || F(x - d) - d > G(x) + tol) return false;
  }
  for (double a : F.atoms()) {
    const double lo = a - d;
    const double hi = a + d;
    if (G(lo) > F(lo + d) + d + tol) return false;
    if (F(hi - d) - d > G(hi) + tol) return false;
  }
  return true;
}

}  // namespace

double levy_distance(const SpectralMeasure& mu, const SpectralMeasure& nu) {
  const Cdf F(mu);
  const Cdf G(nu);
  double lo = 0.0;
  double hi = 1.0;  // the distance never exceeds 1
  if (levy_ok(F, G, 0.0)) return 0.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (levy_ok(F, G, mid) ? hi : lo) = mid;
  }
  return hi;
}

IdsSummary ids_and_ground_state(const std::vector<std::vector<double>>& samples,
                                const IdsOptions& options) {
  require(samples.size() >= 4, ErrorKind::InvalidArgument, "ids_and_ground_state needs >= 4 samples");
  require(options.interval_hi > options.interval_lo && options.bin_width > 0.0,
          ErrorKind::InvalidArgument, "invalid IDS interval or bin width");
  IdsSummary out;
  std::vector<double> pooled;
  for (const auto& s : samples) {
    require(!s.empty(), ErrorKind::InvalidArgument, "empty eigenvalue sample");
    const auto [mn, mx] = std::minmax_element(s.begin(), s.end());
    out.ground_states.push_back(*mn);
    out.top_states.push_back(*mx);
    pooled.insert(pooled.end(), s.begin(), s.end());
  }
  std::sort(pooled.begin(), pooled.end());
  out.median_ground_state = stats::median(out.ground_states);

  const double w = options.bin_width;
  const double first = std::floor(pooled.front() / w) * w;
  const auto bins = static_cast<std::size_t>(std::floor((pooled.back() - first) / w)) + 1;
  out.histogram.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out.histogram[b].left = first + w * static_cast<double>(b);
    out.histogram[b].right = first + w * static_cast<double>(b + 1);
  }
  for (double x : pooled) {
    const auto b = std::min(bins - 1, static_cast<std::size_t>(std::floor((x - first) / w)));
    ++out.histogram[b].count;
  }

  // Coverage: measure of the union of [x - r, x + r] inside the interval.
  const double a = options.interval_lo;
  const double b = options.interval_hi;
  const double r = options.coverage_radius;
  double covered = 0.0;
  double cursor = a;
  for (double x : pooled) {
    const double lo = std::max(cursor, x - r);
    const double hi = std::min(b, x + r);
    if (hi > lo) covered += hi - lo;
    cursor = std::max(cursor, std::min(b, x + r));
  }
  out.coverage = covered / (b - a);

  double prev = a;
  for (double x : pooled) {
    if (x < a) continue;
    if (x > b) break;
    out.max_gap = std::max(out.max_gap, x - prev);
    prev = x;
  }
  out.max_gap = std::max(out.max_gap, b - prev);
  return out;
}

void write_measure_csv(std::ostream& os, const SpectralMeasure& mu) {
  os << "lambda,weight\n" << std::setprecision(17);
  for (std::size_t k = 0; k < mu.lambda.size(); ++k) os << mu.lambda[k] << ',' << mu.weight[k] << '\n';
}

void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& bins) {
  os << "bin_left,bin_right,count\n" << std::setprecision(17);
  for (const auto& b : bins) os << b.left << ',' << b.right << ',' << b.count << '\n';
}

}  // namespace anderson
