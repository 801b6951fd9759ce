#pragma once

// Finite-sample probes of the nonexistence mechanisms: concentrating sources
// delta_n / Gamma_mu, truncations min(r^{-a}, n) of sources with infinite
// Gamma_mu-mass, and annulus problems for mu < mu_0.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hardyfrac/exponents.hpp"
#include "hardyfrac/parallel.hpp"
#include "hardyfrac/quadrature.hpp"
#include "hardyfrac/radial_function.hpp"
#include "hardyfrac/solver.hpp"
#include "hardyfrac/special.hpp"
#include "hardyfrac/weighted_op.hpp"

namespace hardyfrac {

enum class Verdict { convergent, divergent, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::convergent: return "convergent";
    case Verdict::divergent: return "divergent";
    default: return "inconclusive";
  }
}

struct ProbeReport {
  std::vector<double> levels;           // truncation values n, 1/r_n, or 1/eps
  std::vector<double> norms;            // per-level probe quantity (see each probe)
  std::vector<double> masses;           // per-level int f_n dgamma_mu (numerical)
  std::vector<double> analytic_masses;  // closed form where available
  std::vector<double> ratios;           // delta probe: int w_n (-Delta)^s_Gamma xi / xi(0)
  std::vector<double> minima;           // per-level min of the solution
  std::vector<double> maxima;           // per-level max |solution|
  Verdict verdict = Verdict::inconclusive;
  Verdict analytic_verdict = Verdict::inconclusive;
  double growth_fit = 0.0;  // least-squares slope of ln norms against ln levels, last 4 levels
};

inline constexpr double kDivergentSlope = 0.1;
inline constexpr std::size_t kVerdictLevels = 4;
inline constexpr double kDeltaRatioTol = 0.05;

namespace detail {

inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::log(x[i]);
    const double b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  const double d = m * sxx - sx * sx;
  return d > 0.0 ? (m * sxy - sx * sy) / d : 0.0;
}

// Divergent: strictly increasing over the last 4 levels with every consecutive
// log-log slope >= 0.1. Convergent: the last consecutive slope is below 0.1
// (decay included) and increments strictly shrink (or vanish) over the last 4
// levels. Otherwise inconclusive.
inline Verdict growth_verdict(const std::vector<double>& levels, const std::vector<double>& norms, double& fit) {
  fit = 0.0;
  const std::size_t n = norms.size();
  if (n < kVerdictLevels) return Verdict::inconclusive;
  for (std::size_t i = n - kVerdictLevels; i < n; ++i)
    if (!(norms[i] > 0.0) || !std::isfinite(norms[i])) return Verdict::inconclusive;
  const std::vector<double> x(levels.end() - kVerdictLevels, levels.end());
  const std::vector<double> y(norms.end() - kVerdictLevels, norms.end());
  fit = loglog_slope(x, y);
  bool grows = true;
  double last_slope = 0.0;
  for (std::size_t i = 1; i < kVerdictLevels; ++i) {
    const double sl = std::log(y[i] / y[i - 1]) / std::log(x[i] / x[i - 1]);
    grows = grows && y[i] > y[i - 1] && sl >= kDivergentSlope;
    last_slope = sl;
  }
  if (grows) return Verdict::divergent;
  bool shrinking = true;
  for (std::size_t i = 2; i < kVerdictLevels; ++i) {
    const double d = std::abs(y[i] - y[i - 1]);
    shrinking = shrinking && (d == 0.0 || d < std::abs(y[i - 1] - y[i - 2]));
  }
  if (last_slope < kDivergentSlope && shrinking) return Verdict::convergent;
  return Verdict::inconclusive;
}

}  // namespace detail

/// omega int_0^1 min(r^{-a}, n) r^{tau_+ + N - 1} dr; infinite limit iff a >= N + tau_+.
inline double truncated_power_mass(double a, double n, const ProblemParams& p) {
  detail::require(a > 0.0 && n > 0.0, "truncated_power_mass: a and n must be positive");
  const double b = tau_pair(p).tau_plus + p.dim();
  const double rn = std::min(1.0, std::pow(n, -1.0 / a));
  double m = n * std::pow(rn, b) / b;
  if (rn < 1.0) m += std::abs(b - a) < 1e-14 ? -std::log(rn) : (1.0 - std::pow(rn, b - a)) / (b - a);
  return omega_sphere(p.N()) * m;
}

/// Sources delta_n / Gamma_mu with delta_n the unit-mass plateau bump on
/// B_{r_n}; reports int w_n (-Delta)^s_{Gamma_mu} xi dx / xi(0), which
/// should tend to 1 (the bare pairing, tending to 0, when xi(0) = 0).
/// norms are ||w_n||_{L^1(Lambda_mu dx)}.
inline ProbeReport delta_sequence_probe(const ProblemParams& p, const std::vector<double>& r_seq,
                                        const std::vector<double>& grid, const QuadSpec& q = {},
                                        const TestFunction& xi = TestFunction::plateau(0.5)) {
  detail::check_grid(grid);
  for (std::size_t i = 0; i < r_seq.size(); ++i) {
    detail::require(r_seq[i] > grid.front() && r_seq[i] < 1.0, "delta_sequence_probe: radii must lie inside the grid");
    if (i > 0) detail::require(r_seq[i] < r_seq[i - 1], "delta_sequence_probe: radii must decrease");
  }
  detail::require(xi.support_radius() < 1.0, "delta_sequence_probe: xi must live in the unit ball");
  const CollocationSystem sys(p, grid, q);
  const auto& t = sys.op().exponents();
  const double N = p.dim();
  const double omega = omega_sphere(p.N());
  // int_0^1 (1 - x^2)^3 x^{N-1} dx = B(N/2, 4) / 2
  const double beta = 0.5 * std::exp(std::lgamma(N / 2.0) + std::lgamma(4.0) - std::lgamma(N / 2.0 + 4.0));

  std::vector<double> cuts{1.0};
  for (const auto& b : xi.parts()) {
    cuts.push_back(b.hi());
    if (b.lo() > 0.0) cuts.push_back(b.lo());
  }
  const auto nodes = detail::radial_nodes(N, 1e-12, 1.0, cuts, 0.5);
  const RadialFunction xr = xi.to_radial();
  const double x0 = xi.at_origin();
  std::vector<double> wfl(nodes.r.size());
  parallel_for(nodes.r.size(), [&](std::size_t i) { wfl[i] = sys.op().weighted_pv(xr, nodes.r[i], t.tau_plus, q); });

  ProbeReport rep;
  for (double rn : r_seq) {
    const double c = 1.0 / (omega * std::pow(rn, N) * beta);
    FunctionShape sh;
    sh.singular_points = {rn};
    sh.inner_cut = 1.0;
    sh.outer_cut = 1.0;
    const double tp = t.tau_plus;
    const RadialFunction f(
        [c, rn, tp](double r) {
          const double x = r / rn;
          if (x >= 1.0) return RadialSample{};
          const double g = 1.0 - x * x;
          return RadialSample{c * g * g * g * std::pow(r, -tp), 0.0, 0.0};
        },
        std::move(sh), {}, {});
    const SolveReport s = sys.solve(f);
    double lhs = 0.0;
    for (std::size_t i = 0; i < nodes.r.size(); ++i) lhs += nodes.w[i] * s.u(nodes.r[i]) * wfl[i];
    rep.levels.push_back(1.0 / rn);
    rep.norms.push_back(s.l1_lambda_norm);
    rep.masses.push_back(s.l1_gamma_norm_f);
    rep.analytic_masses.push_back(1.0);
    rep.ratios.push_back(x0 != 0.0 ? omega * lhs / x0 : omega * lhs);
    rep.minima.push_back(s.positivity_min);
    rep.maxima.push_back(s.max_abs);
  }
  detail::growth_verdict(rep.levels, rep.norms, rep.growth_fit);
  if (!rep.ratios.empty())
    rep.verdict = std::abs(rep.ratios.back() - (x0 != 0.0 ? 1.0 : 0.0)) <= kDeltaRatioTol ? Verdict::convergent
                                                                                          : Verdict::inconclusive;
  rep.analytic_verdict = Verdict::convergent;
  return rep;
}

/// Truncations min(r^{-a}, n) over the given levels n (k = 0). norms are
/// ||u_n||_{L^1(Lambda_mu dx)}; the analytic verdict is divergent iff
/// a >= N + tau_+ (infinite Gamma_mu-mass).
inline ProbeReport divergence_probe(const ProblemParams& p, double a, const std::vector<double>& levels,
                                    const std::vector<double>& grid, const QuadSpec& q = {}) {
  detail::require(a > 0.0, "divergence_probe: exponent must be positive");
  for (std::size_t i = 1; i < levels.size(); ++i)
    detail::require(levels[i] > levels[i - 1], "divergence_probe: levels must increase");
  const auto reports = monotone_approx_solve(RadialFunction::power(1.0, -a), levels, p, grid, q);
  ProbeReport rep;
  rep.levels = levels;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    rep.norms.push_back(reports[i].l1_lambda_norm);
    rep.masses.push_back(reports[i].l1_gamma_norm_f);
    rep.analytic_masses.push_back(truncated_power_mass(a, levels[i], p));
    rep.minima.push_back(reports[i].positivity_min);
    rep.maxima.push_back(reports[i].max_abs);
  }
  rep.verdict = detail::growth_verdict(rep.levels, rep.norms, rep.growth_fit);
  rep.analytic_verdict = a >= p.dim() + tau_pair(p).tau_plus - 1e-12 ? Verdict::divergent : Verdict::convergent;
  return rep;
}

/// Annulus problems on {eps < r < 1} with source f and zero exterior data, for
/// each eps in the decreasing sequence. norms are u(2 eps) / Gamma_{mu_0}(2 eps).
/// A level whose solution changes sign, or whose solve breaks down, counts as
/// divergent growth (no nonnegative solution at that level).
inline ProbeReport subcritical_mu_probe(const ProblemParams& p, const std::vector<double>& eps_seq, std::size_t nodes,
                                        const QuadSpec& q = {},
                                        const RadialFunction& f = RadialFunction::constant(1.0)) {
  for (std::size_t i = 0; i < eps_seq.size(); ++i) {
    detail::require(eps_seq[i] > 0.0 && eps_seq[i] < 0.5, "subcritical_mu_probe: eps must lie in (0, 1/2)");
    if (i > 0) detail::require(eps_seq[i] < eps_seq[i - 1], "subcritical_mu_probe: eps must decrease");
  }
  const double mid = p.tau_mid();
  ProbeReport rep;
  bool broke = false;
  for (double eps : eps_seq) {
    rep.levels.push_back(1.0 / eps);
    try {
      const CollocationSystem sys(p, annulus_grid(nodes, eps), q, eps);
      const SolveReport s = sys.solve(f);
      rep.norms.push_back(s.u(2.0 * eps) / std::pow(2.0 * eps, mid));
      rep.masses.push_back(s.l1_gamma_norm_f);
      rep.minima.push_back(s.positivity_min);
      rep.maxima.push_back(s.max_abs);
      if (s.positivity_min < -1e-6 * s.max_abs) broke = true;
    } catch (const SolverError&) {
      rep.norms.push_back(std::numeric_limits<double>::infinity());
      rep.masses.push_back(0.0);
      rep.minima.push_back(0.0);
      rep.maxima.push_back(0.0);
      broke = true;
    }
  }
  const Verdict v = detail::growth_verdict(rep.levels, rep.norms, rep.growth_fit);
  rep.verdict = broke ? Verdict::divergent : v;
  rep.analytic_verdict = p.mu() < mu0(p) ? Verdict::divergent : Verdict::convergent;
  return rep;
}

}  // namespace hardyfrac
