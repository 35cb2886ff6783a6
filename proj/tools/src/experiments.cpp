// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/lab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

#include "anderson/enhanced2d.hpp"
#include "anderson/error.hpp"
#include "anderson/noise.hpp"
#include "anderson/norms.hpp"
#include "anderson/pam.hpp"
#include "anderson/parallel.hpp"
#include "anderson/renorm3d.hpp"
#include "anderson/rng.hpp"
#include "anderson/spectral.hpp"
#include "anderson/stats.hpp"
#include "anderson/weyl.hpp"

namespace anderson::lab {

Budget::Budget(double seconds) : start_(std::chrono::steady_clock::now()), seconds_(seconds) {}

double Budget::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void Budget::check(const char* stage) const {
  if (elapsed() > seconds_) {
    fail(ErrorKind::BudgetExhausted, std::string("wall-clock budget exhausted during ") + stage);
  }
}

namespace {

using std::numbers::pi;

int pow2_at_least(double x) {
  int n = 8;
  while (n < x) n *= 2;
  return n;
}

unsigned thread_count(const RunConfig& cfg) {
  return cfg.threads == 0 ? default_threads() : cfg.threads;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void add_check(ExperimentResult& r, std::string name, bool passed, std::string detail) {
  r.checks.push_back({std::move(name), passed, std::move(detail)});
}

// max |a - b| relative to max(1, sup |b|).
double rel_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m / std::max(1.0, b.sup_norm());
}

bool bitwise_equal(const Field& a, const Field& b) {
  return a.size() == b.size() &&
         std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)) == 0;
}

// exp(-|x - c|^2 / (2 w^2)), L2-normalized.
Field gaussian(const LatticeSpec& lat, Point c, double w) {
  auto f = Field::from_position(lat, [&](const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < lat.dim; ++a) r2 += (x[a] - c[a]) * (x[a] - c[a]);
    return std::exp(-r2 / (2.0 * w * w));
  });
  f *= 1.0 / l2_norm(f);
  return f;
}

double spread(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

LaplacianKind parse_laplacian(const std::string& s) {
  if (s == "spectral") return LaplacianKind::Spectral;
  if (s == "fd2") return LaplacianKind::FiniteDifference;
  fail(ErrorKind::SchemaViolation, "laplacian must be 'spectral' or 'fd2', got '" + s + "'");
}

Scheme parse_scheme(const std::string& s) {
  if (s == "exp_euler") return Scheme::ExpEuler;
  if (s == "strang") return Scheme::Strang;
  fail(ErrorKind::SchemaViolation, "scheme must be 'exp_euler' or 'strang', got '" + s + "'");
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// ---------------------------------------------------------------------------

ExperimentResult renorm2d_rate(const RunConfig& cfg, const Budget& budget) {
  const auto& p = cfg.params;
  const auto eps = sorted_desc(p["epsilons"].get<std::vector<double>>());
  const double L = p["extent"].get<double>();
  const double cells = p["cells_per_epsilon"].get<double>();
  const int max_points = p["max_points"].get<int>();
  require(eps.size() >= 2, ErrorKind::SchemaViolation, "renorm2d_rate needs two epsilons");

  ExperimentResult r{"renorm2d_rate"};
  r.table.columns = {"epsilon", "log_inv_epsilon", "points", "C_eps", "C_continuum"};
  std::vector<double> x, y, yc;
  for (double e : eps) {
    budget.check("renorm2d_rate");
    const int n = std::min(pow2_at_least(L * cells / e), max_points);
    const auto lat = make_lattice(2, L, n);
    const auto kernel = build_green_kernel(lat);
    const double c = compute_renorm_2d(make_mollifier(lat, e), kernel).value;
    const double cc = renorm_2d_continuum(e);
    x.push_back(std::log(1.0 / e));
    y.push_back(c);
    yc.push_back(cc);
    r.table.rows.push_back({e, x.back(), static_cast<double>(n), c, cc});
  }
  const double target = 1.0 / (2.0 * pi);
  const double slope = stats::least_squares(x, y).slope;
  const double slope_c = stats::least_squares(x, yc).slope;
  const double tol = p["slope_tolerance"].get<double>();
  add_check(r, "slope", std::abs(slope - target) <= tol * target,
            "slope " + num(slope) + " vs 1/(2 pi) = " + num(target));
  bool monotone = true;
  for (std::size_t i = 1; i < y.size(); ++i) monotone = monotone && y[i] > y[i - 1];
  add_check(r, "monotone", monotone, "C_eps increases as eps decreases");
  r.summary = {{"slope", slope}, {"continuum_slope", slope_c}, {"target", target}};
  r.plot = Plot{"epsilon", "C_eps", true, "2D renormalization constant"};
  return r;
}

ExperimentResult renorm3d_rate(const RunConfig& cfg, const Budget& budget) {
  const auto& p = cfg.params;
  const auto eps = sorted_desc(p["epsilons"].get<std::vector<double>>());
  const auto eps1 = sorted_desc(p["c1_epsilons"].get<std::vector<double>>());
  const double L = p["extent"].get<double>();
  const double cells = p["cells_per_epsilon"].get<double>();
  require(eps.size() >= 2 && eps1.size() >= 2, ErrorKind::SchemaViolation,
          "renorm3d_rate needs two epsilons in each sweep");
  ExperimentResult r{"renorm3d_rate"};

  Json continuum = Json::array();
  std::vector<double> ce;
  for (double e : eps) {
    budget.check("renorm3d_rate continuum");
    const double c = c_eps_3d_continuum(e);
    ce.push_back(c * e);
    continuum.push_back({{"epsilon", e}, {"c_eps", c}, {"c_eps_times_eps", c * e}});
  }

  r.table.columns = {"epsilon", "points", "c_lattice", "c_continuum", "c1_wick", "c1_over_log"};
  std::vector<double> ratio;
  for (double e : eps1) {
    budget.check("renorm3d_rate c1");
    const int n = pow2_at_least(L * cells / e);
    const auto lat = make_lattice(3, L, n);
    const auto kernel = build_kernel_3d(lat);
    const auto m = make_mollifier(lat, e);
    const double c = compute_c_eps_3d(m, kernel);
    const double c1 = c1_eps_3d_wick(m, kernel, c);
    ratio.push_back(c1 / std::log(1.0 / e));
    r.table.rows.push_back(
        {e, static_cast<double>(n), c, c_eps_3d_continuum(e), c1, ratio.back()});
  }
  const auto& rows = r.table.rows;
  const double s_c = spread(ce[ce.size() - 2], ce.back());
  const double s_cl = spread(rows[rows.size() - 2][2] * rows[rows.size() - 2][0],
                             rows.back()[2] * rows.back()[0]);
  const double ctol = p["c_tolerance"].get<double>();
  add_check(r, "c_eps_rate", s_c <= ctol && s_cl <= ctol,
            "c_eps * eps spread over the last two points " + num(s_c) + " (continuum), " +
                num(s_cl) + " (lattice)");
  const double s_c1 = spread(ratio[ratio.size() - 2], ratio.back());
  add_check(r, "c1_eps_rate", s_c1 <= p["c1_tolerance"].get<double>(),
            "c1_eps / log(1/eps) spread over the last two points " + num(s_c1));

  // Monte-Carlo cross-checks on a small lattice.
  budget.check("renorm3d_rate monte carlo");
  const double emc = p["mc_epsilon"].get<double>();
  const int nmc = pow2_at_least(L * cells / emc);
  const auto lat = make_lattice(3, L, nmc);
  const auto kernel = build_kernel_3d(lat);
  const auto m = make_mollifier(lat, emc);
  const double c = compute_c_eps_3d(m, kernel);
  const double wick = c1_eps_3d_wick(m, kernel, c);
  C1Options opt;
  opt.samples = p["mc_samples"].get<std::size_t>();
  opt.seed = cfg.seed;
  opt.threads = thread_count(cfg);
  const auto mc = estimate_c1_eps_3d(m, kernel, c, opt);
  add_check(r, "c1_monte_carlo", std::abs(mc.value - wick) <= 3.0 * mc.stderr_,
            "MC " + num(mc.value) + " +- " + num(mc.stderr_) + " vs Wick " + num(wick));

  const auto centre = parallel_map(
      opt.samples,
      [&](std::size_t i) {
        const auto x = mollify(sample_white_noise(lat, cfg.seed, i), m);
        return multiply(x, periodic_convolve(x, kernel.K)).mean() - c;
      },
      opt.threads);
  const double cm = stats::mean(centre);
  const double cs = stats::standard_error(centre);
  add_check(r, "centering", std::abs(cm) <= 3.0 * cs,
            "E[xi_eps K*xi_eps] - c = " + num(cm) + " +- " + num(cs));

  budget.check("renorm3d_rate finite size");
  const auto lat2 = make_lattice(3, 2.0 * L, 2 * nmc);
  const double c2 = compute_c_eps_3d(make_mollifier(lat2, emc), build_kernel_3d(lat2));
  add_check(r, "finite_size", spread(c, c2) < 0.01,
            "c_eps at L and 2L differ by " + num(spread(c, c2)));

  r.summary = {{"continuum", continuum},
               {"c1_monte_carlo",
                {{"epsilon", emc},
                 {"points", nmc},
                 {"samples", opt.samples},
                 {"seed", cfg.seed},
                 {"c_eps", c},
                 {"c1_eps", mc.value},
                 {"c1_stderr", mc.stderr_},
                 {"c1_wick", wick}}}};
  r.plot = Plot{"epsilon", "c1_wick", true, "3D second renormalization constant"};
  return r;
}

ExperimentResult enhanced_cauchy(const RunConfig& cfg, const Budget& budget) {
  const auto& p = cfg.params;
  const auto eps = sorted_desc(p["epsilons"].get<std::vector<double>>());
  require(eps.size() >= 3, ErrorKind::SchemaViolation, "enhanced_cauchy needs three epsilons");
  const auto lat = make_lattice(2, p["extent"].get<double>(), p["points"].get<int>());
  const double kappa = p["kappa"].get<double>();
  const auto seeds = p["seeds"].get<std::size_t>();
  const auto kernel = build_green_kernel(lat);
  std::vector<Mollifier> ms;
  std::vector<RenormConstant2D> cs;
  for (double e : eps) {
    ms.push_back(make_mollifier(lat, e));
    cs.push_back(compute_renorm_2d(ms.back(), kernel));
  }
  const auto w = Weight::polynomial(kappa);
  const auto norms = parallel_map(
      seeds,
      [&](std::size_t s) {
        budget.check("enhanced_cauchy");
        const auto xi = sample_white_noise(lat, cfg.seed, s);
        std::vector<Field> z;
        for (std::size_t i = 0; i < eps.size(); ++i) {
          z.push_back(build_enhanced_2d(xi, ms[i], kernel, cs[i]).U);
        }
        std::vector<double> d;
        for (std::size_t i = 0; i + 1 < z.size(); ++i) {
          d.push_back(holder_norm_estimate(z[i] - z[i + 1], -kappa, w).value);
        }
        return d;
      },
      thread_count(cfg));
  ExperimentResult r{"enhanced_cauchy"};
  r.table.columns = {"epsilon", "median_norm", "min_norm", "max_norm"};
  std::vector<double> med;
  for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
    std::vector<double> col;
    for (const auto& d : norms) col.push_back(d[i]);
    med.push_back(stats::median(col));
    r.table.rows.push_back({eps[i], med.back(), *std::min_element(col.begin(), col.end()),
                            *std::max_element(col.begin(), col.end())});
  }
  bool decreasing = true;
  std::string detail = "medians";
  for (std::size_t i = 0; i < med.size(); ++i) {
    detail += " " + num(med[i]);
    if (i > 0) decreasing = decreasing && med[i] < med[i - 1];
  }
  add_check(r, "cauchy_trend", decreasing, detail);
  r.summary = {{"kappa", kappa}, {"seeds", seeds}, {"medians", med}};
  r.plot = Plot{"epsilon", "median_norm", true, "C^{-kappa} estimate of Z_eps - Z_eps/2"};
  return r;
}

ExperimentResult shift_identities(const RunConfig& cfg, const Budget& budget) {
  const auto& p = cfg.params;
  const double L = p["extent"].get<double>();
  const auto lat = make_lattice(2, L, p["points"].get<int>());
  const auto kernel = build_green_kernel(lat);
  const auto m = make_mollifier(lat, p["epsilon"].get<double>());
  const auto c = compute_renorm_2d(m, kernel);
  const auto xi = sample_white_noise(lat, cfg.seed, 0).field;
  const auto q = build_enhanced_2d(xi, m, kernel, c);
  const double tol = p["tolerance"].get<double>();
  const auto shifts = p["shifts"].get<std::vector<std::vector<int>>>();
  ExperimentResult r{"shift_identities"};
  r.table.columns = {"identity", "max_rel_error"};

  double eq_err = 0.0;
  bool bitwise = true;
  for (const auto& s : shifts) {
    require(s.size() == 2, ErrorKind::SchemaViolation, "shifts are pairs of integers");
    const SiteIndex x{s[0], s[1], 0};
    const auto lhs = build_enhanced_2d(shift_field(xi, x), m, kernel, c);
    const auto rhs = shift_enhanced(q, x);
    eq_err = std::max({eq_err, rel_diff(lhs.X, rhs.X), rel_diff(lhs.U, rhs.U)});
    bitwise = bitwise && bitwise_equal(lhs.X, rhs.X) && bitwise_equal(lhs.U, rhs.U);
  }
  add_check(r, "shift_equivariance", eq_err <= tol,
            "max rel error " + num(eq_err) + (bitwise ? " (bitwise equal)" : " (not bitwise)"));

  budget.check("shift_identities");
  const auto t0 = shift_T_h(q, Field(lat), kernel);
  const double id_err = std::max(rel_diff(t0.X, q.X), rel_diff(t0.U, q.U));
  add_check(r, "T0_identity", id_err <= p["identity_tolerance"].get<double>(),
            "max rel error " + num(id_err));

  const auto h = Field::from_position(lat, [&](const Point& x) {
    return 3.0 * std::sin(2.0 * pi * x[0] / L) * std::cos(4.0 * pi * x[1] / L) +
           std::exp(-(x[0] * x[0] + x[1] * x[1]));
  });
  const auto back = shift_T_h(shift_T_h(q, h, kernel), -h, kernel);
  const double inv_err = std::max(rel_diff(back.X, q.X), rel_diff(back.U, q.U));
  add_check(r, "T_inverse", inv_err <= tol, "max rel error " + num(inv_err));

  const auto lhs = shift_T_h(q, mollify(h, m), kernel);
  const auto rhs = build_enhanced_2d(xi + h, m, kernel, c);
  const double cons_err = std::max(rel_diff(lhs.X, rhs.X), rel_diff(lhs.U, rhs.U));
  add_check(r, "cameron_martin_consistency", cons_err <= tol, "max rel error " + num(cons_err));

  // Conjugation of the Hamiltonian by lattice translations.
  budget.check("shift_identities conjugation");
  const auto slat = make_lattice(2, L, p["spectral_points"].get<int>());
  const auto skernel = build_green_kernel(slat);
  const auto sm = make_mollifier(slat, p["spectral_epsilon"].get<double>());
  auto W = mollify(sample_white_noise(slat, cfg.seed, 1), sm);
  W += compute_renorm_2d(sm, skernel).value;
  const auto f = gaussian(slat, {0.5, -0.25, 0.0}, 1.0);
  double ev_err = 0.0;
  double atom_err = 0.0;
  for (auto kind : {LaplacianKind::FiniteDifference, LaplacianKind::Spectral}) {
    const auto base = eigensolve(assemble_hamiltonian(W, kind));
    const auto mu = spectral_measure(base, f);
    for (const auto& s : shifts) {
      const SiteIndex x{s[0], s[1], 0};
      const auto moved = eigensolve(assemble_hamiltonian(shift_field(W, x), kind));
      for (std::size_t k = 0; k < base.values.size(); ++k) {
        ev_err = std::max(ev_err, std::abs(base.values[k] - moved.values[k]));
      }
      // Atoms grouped over numerically degenerate eigenvalues.
      const auto nu = spectral_measure(moved, shift_field(f, x));
      std::size_t k = 0;
      while (k < mu.lambda.size()) {
        std::size_t j = k;
        double a = 0.0, b = 0.0;
        while (j < mu.lambda.size() && mu.lambda[j] - mu.lambda[k] < 1e-8) {
          a += mu.weight[j];
          b += nu.weight[j];
          ++j;
        }
        atom_err = std::max(atom_err, std::abs(a - b));
        k = j;
      }
    }
  }
  const double stol = p["spectral_tolerance"].get<double>();
  add_check(r, "conjugation_spectrum", ev_err <= stol, "max eigenvalue gap " + num(ev_err));
  add_check(r, "conjugation_measure", atom_err <= stol, "max atom weight gap " + num(atom_err));

  r.table.rows = {{0, eq_err}, {1, id_err}, {2, inv_err}, {3, cons_err}, {4, ev_err}, {5, atom_err}};
  r.summary = {{"identities",
                {"shift_equivariance", "T0_identity", "T_inverse", "cameron_martin_consistency",
                 "conjugation_spectrum", "conjugation_measure"}},
               {"bitwise_equivariance", bitwise}};
  return r;
}

ExperimentResult two_route_oracle(const RunConfig& cfg, const Budget& budget) {
  const auto& p = cfg.params;
  const auto points = p["points"].get<std::vector<int>>();
  const auto tols = p["tolerances"].get<std::vector<double>>();
  require(points.size() == tols.size(), ErrorKind::SchemaViolation,
          "points and tolerances must have equal length");
  auto times = p["times"].get<std::vector<double>>();
  std::sort(times.begin(), times.end());
  const double L = p["extent"].get<double>();
  const double eps = p["epsilon"].get<double>();
  SemigroupOptions opt;
  opt.dt = p["dt"].get<double>();
  opt.scheme = parse_scheme(p["scheme"].get<std::string>());
  opt.laplacian = parse_laplacian(p["laplacian"].get<std::string>());

  ExperimentResult r{"two_route_oracle"};
  r.table.columns = {"points", "t", "laplace_of_measure", "semigroup", "abs_gap"};
  Json cases = Json::array();
  for (std::size_t c = 0; c < points.size(); ++c) {
    budget.check("two_route_oracle");
    const auto lat = make_lattice(2, L, points[c]);
    const auto kernel = build_green_kernel(lat);
    const auto m = make_mollifier(lat, eps);
    const auto C = compute_renorm_2d(m, kernel);
    const auto xi = sample_white_noise(lat, cfg.seed, 0);
    const auto q = build_enhanced_2d(xi, m, kernel, C);
    auto drift = prepare_drift(q, kernel);
    const auto W = effective_potential(drift);
    auto canonical = q.X;
    canonical += C.value;
    const double canon_dev = (W - canonical).sup_norm();
    const auto f = gaussian(lat, {0.0, 0.0, 0.0}, 1.0);
    const auto mu = eigensolve_spectral_measure(assemble_hamiltonian(W, opt.laplacian), f);
    budget.check("two_route_oracle solver");
    SemigroupRun run(std::move(drift), f, opt);
    double gap = 0.0;
    for (double t : times) {
      run.advance_to(t);
      const double lhs = laplace_of_measure(mu, t);
      const double rhs = inner_product(f, run.result());
      gap = std::max(gap, std::abs(lhs - rhs));
      r.table.rows.push_back({static_cast<double>(points[c]), t, lhs, rhs, std::abs(lhs - rhs)});
    }
    const double mass = mu.mass();
    add_check(r, "two_route_" + std::to_string(points[c]), gap <= tols[c] * mass,
              "max |Laplace(mu_f)(t) - <f, P_t f>| = " + num(gap) + " (tolerance " +
                  num(tols[c]) + " ||f||^2)");
    cases.push_back({{"points", points[c]},
                     {"max_abs_gap", gap},
                     {"tolerance", tols[c]},
                     {"dt_max", run.dt_max()},
                     {"canonical_potential_deviation", canon_dev}});
  }
  r.summary = {{"epsilon", eps}, {"cases", cases}};
  return r;
}

ExperimentResult semigroup_props(const RunConfig& cfg, const Budget& budget) {
  const auto& p = cfg.params;
  const double L = p["extent"].get<double>();
  const auto lat = make_lattice(2, L, p["points"].get<int>());
  const auto kernel = build_green_kernel(lat);
  const double A = p["amplitude"].get<double>();
  const double k = 2.0 * pi / L;
  EnhancedNoise2D q{
      Field::from_position(lat, [&](const Point& x) { return A * std::cos(k * x[0]) * std::cos(2 * k * x[1]); }),
      Field::from_position(lat, [&](const Point& x) { return A * std::sin(k * (x[0] + x[1])); }),
      std::nullopt};
  const auto drift = prepare_drift(q, kernel);
  const auto f = gaussian(lat, {-1.0, 0.5, 0.0}, 1.0);
  const auto g = gaussian(lat, {1.0, -0.5, 0.0}, 1.2);
  const double t = p["t"].get<double>();
  const double s = p["s"].get<double>();
  ExperimentResult r{"semigroup_props"};
  r.table.columns = {"dt", "symmetry_gap"};

  auto evolve = [&](const Field& u, double time, double dt) {
    SemigroupOptions opt;
    opt.dt = dt;
    SemigroupRun run(drift, u, opt);
    run.advance_to(time);
    return run.result();
  };

  auto dts = sorted_desc(p["dts"].get<std::vector<double>>());
  std::vector<double> gaps;
  for (double dt : dts) {
    budget.check("semigroup_props symmetry");
    const double gap = std::abs(inner_product(f, evolve(g, t, dt)) - inner_product(evolve(f, t, dt), g)) /
                       (l2_norm(f) * l2_norm(g));
    gaps.push_back(gap);
    r.table.rows.push_back({dt, gap});
  }
  add_check(r, "symmetry", gaps.back() <= p["symmetry_tolerance"].get<double>(),
            "gap " + num(gaps.back()) + " at dt = " + num(dts.back()));
  bool shrinks = gaps.size() >= 2;
  std::string detail = "ratios";
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    const double ratio = gaps[i - 1] / gaps[i];
    const double expected = dts[i - 1] / dts[i];
    detail += " " + num(ratio);
    shrinks = shrinks && ratio >= 0.75 * expected && ratio <= 1.25 * expected;
  }
  add_check(r, "symmetry_first_order", shrinks, detail);

  budget.check("semigroup_props composition");
  const double cdt = p["composition_dt"].get<double>();
  const auto direct = evolve(f, t, cdt);
  const auto composed = evolve(evolve(f, s, cdt), t - s, cdt);
  const double comp = l2_norm(direct - composed) / l2_norm(f);
  add_check(r, "composition", comp <= p["composition_tolerance"].get<double>(),
            "||P_{t-s} P_s f - P_t f|| / ||f|| = " + num(comp));

  const auto lin = evolve(2.0 * f + 3.0 * g, t, cdt);
  const double lin_err = l2_norm(lin - (2.0 * direct + 3.0 * evolve(g, t, cdt))) / l2_norm(lin);
  add_check(r, "linearity", lin_err <= 1e-12, "relative error " + num(lin_err));

  const double dtm = dt_max_2d(drift, 0.5);
  const auto pos = evolve(f, t, std::min(dtm, t));
  add_check(r, "positivity", pos.min() >= -1e-8 * pos.max(),
            "min " + num(pos.min()) + " max " + num(pos.max()) + " at dt_max " + num(dtm));

  r.summary = {{"gaps", gaps}, {"composition_error", comp}, {"linearity_error", lin_err}};
  r.plot = Plot{"dt", "symmetry_gap", true, "semigroup symmetry defect"};
  return r;
}

ExperimentResult weyl_sweep(const RunConfig& cfg, const Budget& budget) {
  const auto& p = cfg.params;
  ExperimentResult r{"weyl_sweep"};
  r.table.columns = {"case", "n", "residual", "bound", "sup_dev"};

  const auto flat_lat = make_lattice(2, p["flat_extent"].get<double>(), p["flat_points"].get<int>());
  const double level = p["flat_level"].get<double>();
  const Field flat(flat_lat, level);
  auto radii = p["flat_radii"].get<std::vector<double>>();
  std::sort(radii.begin(), radii.end());
  std::vector<WeylProbeResult> fr;
  bool bound_ok = true;
  for (double n : radii) {
    budget.check("weyl_sweep flat");
    fr.push_back(weyl_probe(flat, level, n));
    bound_ok = bound_ok && fr.back().residual <= fr.back().bound + 1e-10;
    r.table.rows.push_back({0, n, fr.back().residual, fr.back().bound, fr.back().sup_dev});
  }
  const double qtol = p["quarter_tolerance"].get<double>();
  bool quarter = fr.size() >= 2;
  double cfit = 0.0;
  std::string detail = "ratios";
  for (std::size_t i = 0; i < fr.size(); ++i) {
    cfit = std::max(cfit, fr[i].n * fr[i].n * fr[i].residual);
    if (i == 0) continue;
    const double expected = std::pow(fr[i].n / fr[i - 1].n, 2.0);
    const double ratio = fr[i - 1].residual / fr[i].residual;
    detail += " " + num(ratio);
    quarter = quarter && std::abs(ratio / expected - 1.0) <= qtol;
  }
  add_check(r, "flat_quartering", quarter, detail + "; C = " + num(cfit));

  const auto lat = make_lattice(2, p["random_extent"].get<double>(), p["random_points"].get<int>());
  const auto kernel = build_green_kernel(lat);
  const auto m = make_mollifier(lat, p["epsilon"].get<double>());
  const double C = compute_renorm_2d(m, kernel).value;
  auto rradii = p["random_radii"].get<std::vector<double>>();
  std::sort(rradii.begin(), rradii.end());
  const auto per_seed = parallel_map(
      p["seeds"].get<std::size_t>(),
      [&](std::size_t s) {
        budget.check("weyl_sweep random");
        auto W = mollify(sample_white_noise(lat, cfg.seed, s), m);
        W += C;
        std::vector<WeylProbeResult> out;
        for (double n : rradii) out.push_back(weyl_probe(W, C, n));
        return out;
      },
      thread_count(cfg));
  std::vector<double> med;
  for (std::size_t i = 0; i < rradii.size(); ++i) {
    std::vector<double> col;
    for (const auto& row : per_seed) {
      col.push_back(row[i].residual);
      bound_ok = bound_ok && row[i].residual <= row[i].bound + 1e-10;
    }
    med.push_back(stats::median(col));
    r.table.rows.push_back({1, rradii[i], med.back(), 0.0, 0.0});
  }
  bool decreasing = med.size() >= 2;
  std::string rdetail = "medians";
  for (std::size_t i = 0; i < med.size(); ++i) {
    rdetail += " " + num(med[i]);
    if (i > 0) decreasing = decreasing && med[i] < med[i - 1];
  }
  add_check(r, "random_decreasing", decreasing, rdetail);
  add_check(r, "triangle_bound", bound_ok, "residual <= ||Delta f_n|| + sup_dev for every probe");
  r.summary = {{"flat_constant", cfit}, {"random_level", C}, {"random_medians", med}};
  return r;
}

ExperimentResult ids_coverage(const RunConfig& cfg, const Budget& budget) {
  const auto& p = cfg.params;
  auto extents = p["extents"].get<std::vector<double>>();
  std::sort(extents.begin(), extents.end());
  const double h = p["spacing"].get<double>();
  const double eps = p["epsilon"].get<double>();
  const auto kind = parse_laplacian(p["laplacian"].get<std::string>());
  const auto interval = p["interval"].get<std::vector<double>>();
  require(interval.size() == 2, ErrorKind::SchemaViolation, "interval needs two numbers");
  IdsOptions opt;
  opt.interval_lo = interval[0];
  opt.interval_hi = interval[1];
  opt.coverage_radius = p["coverage_radius"].get<double>();

  ExperimentResult r{"ids_coverage"};
  r.table.columns = {"extent", "points", "coverage", "median_ground_state", "max_gap"};
  std::vector<double> cov, ground;
  Json hist = Json::object();
  for (double L : extents) {
    budget.check("ids_coverage");
    const auto lat = make_lattice(2, L, static_cast<int>(std::lround(L / h)));
    const auto kernel = build_green_kernel(lat);
    const auto m = make_mollifier(lat, eps);
    const double C = compute_renorm_2d(m, kernel).value;
    const auto samples = parallel_map(
        p["seeds"].get<std::size_t>(),
        [&](std::size_t s) {
          budget.check("ids_coverage eigensolve");
          auto W = mollify(sample_white_noise(lat, cfg.seed, s), m);
          W += C;
          return eigenvalues(assemble_hamiltonian(W, kind));
        },
        thread_count(cfg));
    const auto ids = ids_and_ground_state(samples, opt);
    cov.push_back(ids.coverage);
    ground.push_back(ids.median_ground_state);
    r.table.rows.push_back({L, static_cast<double>(lat.points), ids.coverage,
                            ids.median_ground_state, ids.max_gap});
    Json bins = Json::array();
    for (const auto& b : ids.histogram) bins.push_back({b.left, b.right, b.count});
    hist[std::to_string(static_cast<int>(L))] = bins;
  }
  const double target = p["coverage_target"].get<double>();
  add_check(r, "coverage_target", cov.back() >= target,
            "coverage " + num(cov.back()) + " at L = " + num(extents.back()) + " (target " +
                num(target) + ")");
  bool increasing = true, non_increasing = true;
  for (std::size_t i = 1; i < cov.size(); ++i) {
    increasing = increasing && cov[i] > cov[i - 1];
    non_increasing = non_increasing && ground[i] <= ground[i - 1];
  }
  add_check(r, "coverage_increasing", increasing, "coverage grows with L");
  std::string g = "medians";
  for (double v : ground) g += " " + num(v);
  add_check(r, "ground_state_monotone", non_increasing, g);
  r.summary = {{"coverage", cov}, {"median_ground_state", ground}, {"histograms", hist}};
  r.plot = Plot{"extent", "coverage", false, "spectrum coverage of the target interval"};
  return r;
}

ExperimentResult resonance(const RunConfig& cfg, const Budget& budget) {
  const auto& p = cfg.params;
  const double c = p["c"].get<double>();
  budget.check("resonance_sweep");
  const auto sweep = resonance_sweep(c, sorted_desc(p["deltas"].get<std::vector<double>>()));
  ExperimentResult r{"resonance_sweep"};
  r.table.columns = {"delta", "lambda", "a", "a_over_delta", "residual", "contraction_factor",
                     "iterations"};
  double max_res = 0.0, max_fac = 0.0;
  bool shrinking = true;
  for (std::size_t i = 0; i < sweep.accepted.size(); ++i) {
    const auto& a = sweep.accepted[i];
    r.table.rows.push_back({a.delta, a.lambda, a.a, a.a / a.delta, a.residual,
                            a.contraction_factor, static_cast<double>(a.iterations)});
    max_res = std::max(max_res, a.residual);
    max_fac = std::max(max_fac, a.contraction_factor);
    if (i > 0) shrinking = shrinking && std::abs(a.a) < std::abs(sweep.accepted[i - 1].a);
  }
  add_check(r, "accepted", sweep.accepted.size() >= 3,
            std::to_string(sweep.accepted.size()) + " deltas contract; delta0 = " +
                num(sweep.delta0));
  add_check(r, "residual", max_res <= p["residual_tolerance"].get<double>(),
            "max residual " + num(max_res));
  add_check(r, "contraction", max_fac < 1.0, "max contraction factor " + num(max_fac));
  bool bounded = true;
  for (const auto& a : sweep.accepted) bounded = bounded && std::abs(a.a) <= sweep.r0 * a.delta * (1 + 1e-12);
  add_check(r, "a_bound", bounded && shrinking, "|a| <= R0 delta with R0 = " + num(sweep.r0) +
                                                     (shrinking ? ", a -> 0" : ", a not shrinking"));

  budget.check("resonance_sweep overlaps");
  const auto grid = p["overlap_grid"].get<std::vector<double>>();
  double c1 = std::numeric_limits<double>::infinity(), c2 = 0.0;
  for (double d1 : grid) {
    for (double d2 : grid) {
      const double v = gradient_overlap(d1, d2);
      const double q = v / std::log(1.0 / std::max(d1, d2));
      c1 = std::min(c1, q);
      c2 = std::max(c2, q);
    }
  }
  add_check(r, "overlap_bounds", c1 > 0.0 && c2 < std::numeric_limits<double>::infinity() && c1 <= c2,
            "c1 = " + num(c1) + ", c2 = " + num(c2));
  r.summary = {{"c", c},       {"R0", sweep.r0},        {"delta0", sweep.delta0},
               {"rejected", sweep.rejected}, {"overlap_c1", c1}, {"overlap_c2", c2}};
  r.plot = Plot{"delta", "a", true, "resonance coefficient a_delta"};
  return r;
}

ExperimentResult sample(const RunConfig& cfg, const Budget&) {
  const auto& p = cfg.params;
  const auto lat = make_lattice(p["dim"].get<int>(), p["extent"].get<double>(), p["points"].get<int>());
  const auto stream = p["stream"].get<std::uint64_t>();
  const auto xi = sample_white_noise(lat, cfg.seed, stream);
  ExperimentResult r{"sample"};
  const auto n = static_cast<double>(xi.field.size());
  double sq = 0.0;
  for (double v : xi.field.values()) sq += v * v;
  const double var = sq / n * lat.cell_volume();  // normalized to 1
  add_check(r, "finite", xi.field.all_finite(), "all values finite");
  add_check(r, "variance", std::abs(var - 1.0) <= 5.0 * std::sqrt(2.0 / n),
            "h^d mean(xi^2) = " + num(var));
  r.fields.emplace_back("xi", xi.field);
  const double eps = p["epsilon"].get<double>();
  if (eps > 0.0) r.fields.emplace_back("xi_eps", mollify(xi, make_mollifier(lat, eps)));
  r.table.columns = {"sites", "normalized_variance", "spacing"};
  r.table.rows = {{n, var, lat.spacing()}};
  r.summary = {{"seed", cfg.seed}, {"stream", stream}, {"rng", std::string(kRngIdentity)}};
  return r;
}

ExperimentResult enhance(const RunConfig& cfg, const Budget&) {
  const auto& p = cfg.params;
  const auto lat = make_lattice(2, p["extent"].get<double>(), p["points"].get<int>());
  const auto kernel = build_green_kernel(lat);
  const auto m = make_mollifier(lat, p["epsilon"].get<double>());
  const auto C = compute_renorm_2d(m, kernel);
  const auto stream = p["stream"].get<std::uint64_t>();
  const auto xi = sample_white_noise(lat, cfg.seed, stream);
  const auto q = build_enhanced_2d(xi, m, kernel, C);
  ExperimentResult r{"enhance"};
  add_check(r, "finite", q.X.all_finite() && q.U.all_finite(), "all values finite");
  const SiteIndex x{1, 2, 0};
  const auto moved = build_enhanced_2d(shift_field(xi.field, x), m, kernel, C);
  const auto ref = shift_enhanced(q, x);
  const double err = std::max(rel_diff(moved.X, ref.X), rel_diff(moved.U, ref.U));
  add_check(r, "shift_equivariance", err <= 1e-10, "max rel error " + num(err));
  const auto& g = kernel.G.values();
  r.summary = {{"epsilon", C.epsilon},
               {"C_eps", C.value},
               {"seed", cfg.seed},
               {"stream", stream},
               {"rng", std::string(kRngIdentity)},
               {"kernel_hash", sha256_hex(g.data(), g.size() * sizeof(double)).substr(0, 16)}};
  r.table.columns = {"epsilon", "C_eps", "U_mean", "X_sup"};
  r.table.rows = {{C.epsilon, C.value, q.U.mean(), q.X.sup_norm()}};
  r.fields.emplace_back("X", q.X);
  r.fields.emplace_back("U", q.U);
  return r;
}

ExperimentResult solve(const RunConfig& cfg, const Budget&) {
  const auto& p = cfg.params;
  const int dim = p["dim"].get<int>();
  const auto lat = make_lattice(dim, p["extent"].get<double>(), p["points"].get<int>());
  const auto m = make_mollifier(lat, p["epsilon"].get<double>());
  const auto xi = sample_white_noise(lat, cfg.seed, p["stream"].get<std::uint64_t>());
  SemigroupOptions opt;
  opt.dt = p["dt"].get<double>();
  opt.scheme = parse_scheme(p["scheme"].get<std::string>());
  opt.laplacian = parse_laplacian(p["laplacian"].get<std::string>());
  opt.record_diagnostics = true;
  const double t = p["t"].get<double>();
  const auto f = gaussian(lat, {0.0, 0.0, 0.0}, 1.0);
  ExperimentResult r{"solve"};
  r.table.columns = {"t", "l2", "min", "max"};
  if (dim == 2) {
    const auto kernel = build_green_kernel(lat);
    const auto C = compute_renorm_2d(m, kernel);
    SemigroupRun run(build_enhanced_2d(xi, m, kernel, C), kernel, f, opt);
    run.advance_to(t);
    for (const auto& d : run.diagnostics()) r.table.rows.push_back({d.t, d.l2, d.min, d.max});
    auto u = run.result();
    add_check(r, "finite", u.all_finite(), "solution finite");
    r.summary = {{"C_eps", C.value}, {"dt_max", run.dt_max()},
                 {"wraparound_suspect", run.wraparound_suspect()}};
    r.fields.emplace_back("u", std::move(u));
  } else {
    const auto kernel = build_kernel_3d(lat);
    const double c = compute_c_eps_3d(m, kernel);
    const double c1 = c1_eps_3d_wick(m, kernel, c);
    auto u = evolve_direct_3d(mollify(xi, m), c + c1, f, t, opt);
    r.table.rows.push_back({t, l2_norm(u), u.min(), u.max()});
    add_check(r, "finite", u.all_finite(), "solution finite");
    r.summary = {{"c_eps", c}, {"c1_eps", c1}, {"C_eps", c + c1}};
    r.fields.emplace_back("u", std::move(u));
  }
  return r;
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& cfg, const Budget& budget) {
  const auto& k = cfg.experiment;
  ExperimentResult r;
  if (k == "renorm2d_rate") r = renorm2d_rate(cfg, budget);
  else if (k == "renorm3d_rate") r = renorm3d_rate(cfg, budget);
  else if (k == "enhanced_cauchy") r = enhanced_cauchy(cfg, budget);
  else if (k == "semigroup_props") r = semigroup_props(cfg, budget);
  else if (k == "two_route_oracle") r = two_route_oracle(cfg, budget);
  else if (k == "weyl_sweep") r = weyl_sweep(cfg, budget);
  else if (k == "ids_coverage") r = ids_coverage(cfg, budget);
  else if (k == "resonance_sweep") r = resonance(cfg, budget);
  else if (k == "shift_identities") r = shift_identities(cfg, budget);
  else if (k == "sample") r = sample(cfg, budget);
  else if (k == "enhance") r = enhance(cfg, budget);
  else if (k == "solve") r = solve(cfg, budget);
  else fail(ErrorKind::SchemaViolation, "unknown experiment kind '" + k + "'");
  r.summary["experiment"] = k;
  r.summary["seed"] = cfg.seed;
  return r;
}

RunOutcome run_and_record(const RunConfig& config, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());
  auto manifest = begin_manifest(config);
  manifest.write(out_dir);
  const Budget budget(config.budget_seconds);
  RunOutcome out{{}, manifest};
  try {
    out.result = run_experiment(config, budget);
  } catch (const std::exception& e) {
    out.manifest.status = "error";
    out.manifest.error = e.what();
    out.manifest.finished_at = utc_timestamp();
    out.manifest.elapsed_seconds = budget.elapsed();
    out.manifest.write(out_dir);
    throw;
  }
  out.manifest.outputs = emit_outputs(out.result, config.formats, out_dir, manifest.hash);
  for (const auto& c : out.result.checks) {
    out.manifest.checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  out.manifest.status = out.result.passed() ? "passed" : "failed";
  out.manifest.finished_at = utc_timestamp();
  out.manifest.elapsed_seconds = budget.elapsed();
  out.manifest.write(out_dir);
  return out;
}

}  // namespace anderson::lab
