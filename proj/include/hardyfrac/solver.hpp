#pragma once

// Radial collocation solver for
//   L^s_mu u = f in B_1 \ {0},  u = 0 outside B_1,  u / Phi_mu -> k at 0,
// and its annulus variant on {eps < |x| < 1}.
//
// Representation: u = k Phi_mu chi + E(r) W(r) w(r), where chi is a C^2 cutoff
// (1 on r <= 1/4, 0 on r >= 3/4), E = (1 - r^2)^s_+ carries the boundary
// behavior, W = Gamma_mu carries the behavior at the origin and w is a cubic
// spline in ln r with one unknown per grid node. Collocating L^s_mu at the
// nodes gives a dense square system, solved by LU with partial pivoting.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hardyfrac/exponents.hpp"
#include "hardyfrac/parallel.hpp"
#include "hardyfrac/params.hpp"
#include "hardyfrac/pv_rule.hpp"
#include "hardyfrac/quadrature.hpp"
#include "hardyfrac/radial_function.hpp"
#include "hardyfrac/radial_kernel.hpp"
#include "hardyfrac/special.hpp"
#include "hardyfrac/spline.hpp"

namespace hardyfrac {

/// n radii r_min (1/r_min)^{i/(n-1/2)}: log-uniform, last node half a step below 1.
inline std::vector<double> log_grid(std::size_t n, double r_min = 1e-4) {
  detail::require(n >= 4, "log_grid: need at least 4 nodes");
  detail::require(r_min > 0.0 && r_min < 1.0, "log_grid: r_min must lie in (0, 1)");
  std::vector<double> g(n);
  const double L = -std::log(r_min);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = r_min * std::exp(L * static_cast<double>(i) / (static_cast<double>(n) - 0.5));
  return g;
}

/// n radii log-uniform in (eps, 1), half a step in from both ends.
inline std::vector<double> annulus_grid(std::size_t n, double eps) {
  detail::require(n >= 4, "annulus_grid: need at least 4 nodes");
  detail::require(eps > 0.0 && eps < 1.0, "annulus_grid: eps must lie in (0, 1)");
  std::vector<double> g(n);
  const double L = -std::log(eps);
  for (std::size_t i = 0; i < n; ++i) g[i] = eps * std::exp(L * (static_cast<double>(i) + 0.5) / static_cast<double>(n));
  return g;
}

namespace detail {

inline RadialSample mul(const RadialSample& a, const RadialSample& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

// (1 - x^2)^s with x = c / r^e, e in {-1, 1}: e = -1 gives (1 - r^2)^s, e = 1 gives (1 - c^2/r^2)^s
inline RadialSample boundary_factor(double r, double s, double c, int e) {
  const double x = e < 0 ? r / c : c / r;
  const double g = 1.0 - x * x;
  if (!(g > 0.0)) return {};
  // d/dr x^2 = 2 x x', x' = -e x / r, x'' = e (e + 1) x / r^2
  const double x1 = -e * x / r;
  const double x2 = e * (e + 1.0) * x / (r * r);
  const double q1 = -2.0 * x * x1;
  const double q2 = -2.0 * (x1 * x1 + x * x2);
  const double v = std::pow(g, s);
  return {v, s * v / g * q1, s * (s - 1.0) * v / (g * g) * q1 * q1 + s * v / g * q2};
}

// chi = 1 - P((r - 1/4) / (1/2)), P(x) = 10x^3 - 15x^4 + 6x^5
inline RadialSample cutoff(double r) {
  if (r <= 0.25) return {1.0, 0.0, 0.0};
  if (r >= 0.75) return {};
  const double x = (r - 0.25) / 0.5;
  const double P = x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
  const double P1 = 30.0 * x * x * (1.0 - x) * (1.0 - x);
  const double P2 = 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
  return {1.0 - P, -P1 / 0.5, -P2 / 0.25};
}

// E(r) W(r): (1 - r^2)^s r^{tau_+} on the ball, (1 - r^2)^s (1 - a^2/r^2)^s on the annulus r > a
struct Envelope {
  double s = 0.5;
  double inner = 0.0;
  double tau = 0.0;

  [[nodiscard]] RadialSample operator()(double r) const {
    if (r >= 1.0 || r <= inner) return {};
    const RadialSample e = boundary_factor(r, s, 1.0, -1);
    if (inner == 0.0) return mul(e, PowerTerm{1.0, tau, 0}.sample(r));
    return mul(e, boundary_factor(r, s, inner, 1));
  }
};

inline constexpr double kChiInner = 0.25;
inline constexpr double kChiOuter = 0.75;
inline constexpr double kResidualBudget = 1e-2;
inline constexpr double kMinRcond = 1e-15;
inline constexpr int kFitNodes = 6;

// Points where f crosses the level c, located on the grid and refined by bisection.
inline std::vector<double> level_crossings(const RadialFunction& f, double c, const std::vector<double>& grid) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double a = grid[i];
    double b = grid[i + 1];
    double fa = f(a) - c;
    const double fb = f(b) - c;
    if (fa == 0.0 || (fa < 0.0) == (fb < 0.0)) continue;
    for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * b; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = f(m) - c;
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

// g(f(r)) with the same inner/outer description dropped; kinks of g at the given points.
template <class G>
RadialFunction map_values(const RadialFunction& f, G g, const std::vector<double>& kinks) {
  FunctionShape sh;
  sh.breakpoints = f.shape().breakpoints;
  sh.singular_points = f.shape().singular_points;
  sh.singular_points.insert(sh.singular_points.end(), kinks.begin(), kinks.end());
  sh.inner_cut = 1.0;
  sh.outer_cut = 1.0;
  auto h = [f, g](double r) { return RadialSample{r < 1.0 ? g(f(r)) : 0.0, 0.0, 0.0}; };
  return {h, std::move(sh), {}, {}};
}

}  // namespace detail

/// Radial source f on B_1, singular coefficient k and the weight exponent rho
/// with f in L^inf(B_1, |x|^rho dx). Only values of f on (0, 1) are used; the
/// stored source vanishes for r >= 1.
struct DirichletProblem {
  DirichletProblem(const ProblemParams& params, const RadialFunction& source, double k_ = 0.0, double rho_ = 0.0)
      : p(params), f(restrict_to_ball(source)), k(k_), rho(rho_) {
    if (p.mu() < mu0(p) - 1e-12) throw PreconditionError("DirichletProblem: mu must be >= mu_0");
    const double tp = tau_pair(p).tau_plus;
    if (!(rho < 2.0 * p.s() - tp))
      throw PreconditionError("DirichletProblem: rho must be < 2s - tau_+ (" + std::to_string(2.0 * p.s() - tp) + ")");
    detail::require(std::isfinite(k), "DirichletProblem: k must be finite");
  }

  ProblemParams p;
  RadialFunction f;
  double k;
  double rho;

private:
  static RadialFunction restrict_to_ball(const RadialFunction& g) {
    FunctionShape sh;
    for (double b : g.shape().breakpoints)
      if (b > 0.0 && b < 1.0) sh.breakpoints.push_back(b);
    for (double b : g.shape().singular_points)
      if (b > 0.0 && b < 1.0) sh.singular_points.push_back(b);
    sh.singular_points.push_back(1.0);
    sh.inner_cut = std::min(g.shape().inner_cut, 1.0);
    sh.outer_cut = 1.0;
    auto h = [e = g.evaluator()](double r) { return r < 1.0 ? e(r) : RadialSample{}; };
    return {h, std::move(sh), g.shape().inner_cut <= 1.0 ? g.inner_terms() : std::vector<PowerTerm>{}, {}};
  }
};

struct SolveReport {
  RadialFunction u = RadialFunction::zero();
  std::vector<double> grid;
  Eigen::VectorXd coefficients;  // nodal values of the spline w
  double k = 0.0;
  double residual_max = 0.0;     // max |L u - f| at off-node radii m over max|rhs| + m^{-2s} |u(m)|
  double singular_limit = 0.0;   // extrapolated lim u / Phi_mu at 0 (0 on annuli)
  double gamma_ratio_max = 0.0;  // max over nodes of |u| / Gamma_mu
  double l1_lambda_norm = 0.0;   // int_Omega |u| Lambda_mu dx
  double l1_gamma_norm_f = 0.0;  // int_Omega |f| dgamma_mu
  double f_linf_rho = 0.0;       // max over nodes of |f| r^rho
  double positivity_min = 0.0;   // min of u over nodes and midpoints
  double max_abs = 0.0;          // max of |u| over nodes and midpoints
  double condition = 0.0;        // 1-norm condition estimate of the collocation matrix
};

/// Collocation matrix for one (p, grid, domain), factorized once and reused
/// for any number of right-hand sides. inner_radius = 0 is the punctured
/// ball; inner_radius > 0 is the annulus {inner_radius < r < 1} with u = 0
/// inside (no exponents needed, so any mu is allowed there).
class CollocationSystem {
public:
  CollocationSystem(const ProblemParams& p, std::vector<double> grid, const QuadSpec& q = {}, double inner_radius = 0.0)
      : p_(p), op_(p), q_(q), grid_(std::move(grid)), inner_(inner_radius) {
    q_.validate();
    const auto n = grid_.size();
    detail::require(n >= 16, "CollocationSystem: grid needs at least 16 nodes");
    detail::require(inner_ >= 0.0 && inner_ < 1.0, "CollocationSystem: inner radius must lie in [0, 1)");
    detail::require(grid_.front() > inner_ && grid_.back() < 1.0, "CollocationSystem: grid must lie inside the domain");
    if (ball()) {
      if (p.mu() < mu0(p) - 1e-12) throw PreconditionError("CollocationSystem: mu must be >= mu_0 on the ball");
      tau_ = op_.exponents();
    }
    env_ = {p_.s(), inner_, tau_.tau_plus};
    basis_ = std::make_shared<const LogSplineBasis>(grid_);

    shape_.breakpoints = grid_;
    shape_.singular_points = {1.0};
    shape_.outer_cut = 1.0;
    if (ball()) {
      // W E = r^{tau_+} (1 - r^2)^s expanded below the first node
      const double r0 = grid_.front();
      double b = 1.0;
      for (int j = 0; j < 60; ++j) {
        inner_basis_.push_back({b, tau_.tau_plus + 2.0 * j, 0});
        b *= (j - p_.s()) / (j + 1.0);
        if (std::abs(b) * std::pow(r0, 2.0 * (j + 1)) < 1e-18) break;
      }
      shape_.inner_cut = r0;
    } else {
      shape_.singular_points.push_back(inner_);
      shape_.inner_cut = inner_;
    }

    Eigen::MatrixXd A(n, n);
    std::vector<Eigen::RowVectorXd> rows(n);
    parallel_for(n, [&](std::size_t i) { rows[i] = row(grid_[i]); });
    for (std::size_t i = 0; i < n; ++i) A.row(static_cast<Eigen::Index>(i)) = rows[i];
    lu_ = A.partialPivLu();
    const double rc = lu_.rcond();
    condition_ = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    if (!(rc > detail::kMinRcond))
      throw SolverError("collocation matrix is numerically singular (condition " + std::to_string(condition_) + ")");
  }

  [[nodiscard]] bool ball() const noexcept { return inner_ == 0.0; }
  [[nodiscard]] const ProblemParams& params() const noexcept { return p_; }
  [[nodiscard]] const RadialOperator& op() const noexcept { return op_; }
  [[nodiscard]] const std::vector<double>& grid() const noexcept { return grid_; }
  [[nodiscard]] double condition() const noexcept { return condition_; }
  [[nodiscard]] double inner_radius() const noexcept { return inner_; }

  /// E(r) W(r) with derivatives; zero outside the domain.
  [[nodiscard]] RadialSample envelope(double r) const { return env_(r); }

  /// Phi_mu chi as a radial function (ball only).
  [[nodiscard]] RadialFunction singular_part() const {
    const PowerTerm phi = tau_.degenerate ? PowerTerm{-1.0, tau_.tau_minus, 1} : PowerTerm{1.0, tau_.tau_minus, 0};
    FunctionShape sh;
    sh.breakpoints = {detail::kChiInner, detail::kChiOuter};
    sh.inner_cut = detail::kChiInner;
    sh.outer_cut = detail::kChiOuter;
    return {[phi](double r) { return detail::mul(phi.sample(r), detail::cutoff(r)); }, std::move(sh), {phi}, {}};
  }

  /// L^s_mu (Phi_mu chi) at the nodes; computed on first use.
  [[nodiscard]] const Eigen::VectorXd& singular_rhs() const {
    require_ball("singular_rhs");
    std::call_once(sing_once_, [&] { sing_rhs_ = apply_at_nodes(singular_part()); });
    return sing_rhs_;
  }

  /// L^s_mu g at the nodes.
  [[nodiscard]] Eigen::VectorXd apply_at_nodes(const RadialFunction& g) const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(grid_.size()));
    parallel_for(grid_.size(), [&](std::size_t i) { out[static_cast<Eigen::Index>(i)] = op_.hardy(g, grid_[i], q_); });
    return out;
  }

  /// Spline values w for the right-hand side b.
  [[nodiscard]] Eigen::VectorXd solve_values(const Eigen::VectorXd& b) const { return lu_.solve(b); }

  /// u = k Phi_mu chi + E W w.
  [[nodiscard]] RadialFunction assemble(const Eigen::VectorXd& w, double k) const {
    detail::require(w.size() == static_cast<Eigen::Index>(grid_.size()), "assemble: coefficient count mismatch");
    if (k != 0.0) require_ball("assemble with k != 0");
    auto spline = std::make_shared<const LogCubicSpline>(basis_, w);
    std::optional<RadialFunction> sing;
    if (k != 0.0) sing = k * singular_part();
    FunctionShape sh = shape_;
    std::vector<PowerTerm> inner;
    for (auto t : inner_basis_) {
      t.coef *= w[0];
      inner.push_back(t);
    }
    if (sing) {
      sh.breakpoints.push_back(detail::kChiInner);
      sh.breakpoints.push_back(detail::kChiOuter);
      sh.inner_cut = std::min(sh.inner_cut, detail::kChiInner);
      inner.insert(inner.end(), sing->inner_terms().begin(), sing->inner_terms().end());
    }
    auto f = [env = env_, spline, sing](double r) {
      RadialSample v = detail::mul(env(r), (*spline)(r));
      if (sing) {
        const RadialSample s = sing->sample(r);
        v.v += s.v;
        v.d1 += s.d1;
        v.d2 += s.d2;
      }
      return v;
    };
    return {f, std::move(sh), std::move(inner), {}};
  }

  /// Solves L^s_mu u = f with singular coefficient k and fills the report.
  [[nodiscard]] SolveReport solve(const RadialFunction& f, double k = 0.0, double rho = 0.0) const {
    const auto n = static_cast<Eigen::Index>(grid_.size());
    Eigen::VectorXd fv(n);
    for (Eigen::Index i = 0; i < n; ++i) fv[i] = f(grid_[static_cast<std::size_t>(i)]);
    Eigen::VectorXd b = fv;
    double scale = fv.cwiseAbs().maxCoeff();
    if (k != 0.0) {
      b -= k * singular_rhs();
      scale += std::abs(k) * singular_rhs().cwiseAbs().maxCoeff();
    }
    return report(solve_values(b), k, f, rho, scale);
  }

  /// Report for the spline values w. Residuals are measured against f at
  /// every fourth midpoint m (away from kinks of f) and divided by
  /// scale + m^{-2s} |u(m)|.
  [[nodiscard]] SolveReport report(const Eigen::VectorXd& w, double k, const RadialFunction& f, double rho,
                                   double scale) const {
    SolveReport rep;
    rep.grid = grid_;
    rep.coefficients = w;
    rep.k = k;
    rep.condition = condition_;
    rep.u = assemble(w, k);
    const RadialFunction& u = rep.u;
    const auto n = grid_.size();

    // residual at every fourth midpoint, skipping intervals where f has a marked kink
    // (the cutoff edges count when k != 0) and, on the annulus, the boundary layer
    // next to the inner edge
    std::vector<double> kinks = f.shape().singular_points;
    if (f.shape().breakpoints.size() <= 8)
      kinks.insert(kinks.end(), f.shape().breakpoints.begin(), f.shape().breakpoints.end());
    if (k != 0.0) kinks.insert(kinks.end(), {detail::kChiInner, detail::kChiOuter});
    std::vector<double> mids;
    for (std::size_t i = inner_radius() > 0.0 ? 5 : 1; i + 1 < n; i += 4) {
      const bool smooth = std::none_of(kinks.begin(), kinks.end(),
                                       [&](double b) { return b >= grid_[i - 1] && b <= grid_[i + 2]; });
      if (smooth) mids.push_back(std::sqrt(grid_[i] * grid_[i + 1]));
    }
    std::vector<double> res(mids.size());
    parallel_for(mids.size(), [&](std::size_t j) {
      const double m = mids[j];
      const double size = scale + std::pow(m, -2.0 * p_.s()) * std::abs(u(m));
      const double d = std::abs(op_.hardy(u, m, q_) - f(m));
      res[j] = size > 0.0 ? d / size : d;
    });
    rep.residual_max = 0.0;
    for (double v : res) rep.residual_max = std::max(rep.residual_max, v);
    if (rep.residual_max > detail::kResidualBudget)
      throw SolverError("collocation residual " + std::to_string(rep.residual_max) + " exceeds the budget");

    double umin = std::numeric_limits<double>::infinity();
    double umax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (double r : {grid_[i], i + 1 < n ? std::sqrt(grid_[i] * grid_[i + 1]) : grid_[i]}) {
        const double v = u(r);
        umin = std::min(umin, v);
        umax = std::max(umax, std::abs(v));
      }
      const double W = ball() ? std::pow(grid_[i], tau_.tau_plus) : 1.0;
      rep.gamma_ratio_max = std::max(rep.gamma_ratio_max, std::abs(u(grid_[i])) / W);
      rep.f_linf_rho = std::max(rep.f_linf_rho, std::abs(f(grid_[i])) * std::pow(grid_[i], rho));
    }
    rep.positivity_min = umin;
    rep.max_abs = umax;
    if (ball()) rep.singular_limit = fit_singular_limit(u);

    const double N = p_.dim();
    const double omega = omega_sphere(p_.N());
    const double r_lo = ball() ? 1e-12 : inner_;
    std::vector<double> cuts{1.0};
    if (!ball()) cuts.push_back(inner_);
    if (k != 0.0) cuts.insert(cuts.end(), {detail::kChiInner, detail::kChiOuter});
    auto lam = [&](double r) { return ball() ? lambda_mu(r, tau_.tau_plus, p_.s()) : 1.0; };
    rep.l1_lambda_norm =
        omega * detail::radial_integral([&](double r) { return std::abs(u(r)) * lam(r); }, N, r_lo, 1.0, cuts, 0.5).value;
    std::vector<double> fcuts{1.0};
    for (double b : f.shape().singular_points)
      if (b > r_lo && b < 1.0) fcuts.push_back(b);
    if (f.shape().breakpoints.size() <= 8)
      for (double b : f.shape().breakpoints)
        if (b > r_lo && b < 1.0) fcuts.push_back(b);
    auto W = [&](double r) { return ball() ? std::pow(r, tau_.tau_plus) : 1.0; };
    rep.l1_gamma_norm_f =
        omega * detail::radial_integral([&](double r) { return std::abs(f(r)) * W(r); }, N, r_lo, 1.0, fcuts, 0.5).value;
    return rep;
  }

private:
  void require_ball(const char* what) const {
    if (!ball()) throw PreconditionError(std::string(what) + ": only defined on the punctured ball");
  }

  // least squares u / Phi_mu = a + b r^{eps0} (or a + b / (-ln r) at mu_0) on the smallest nodes
  [[nodiscard]] double fit_singular_limit(const RadialFunction& u) const {
    const int m = std::min<int>(detail::kFitNodes, static_cast<int>(grid_.size()));
    const double eps0 = std::min(tau_.gap(), 1.0);
    Eigen::MatrixXd X(m, 2);
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
      const double r = grid_[static_cast<std::size_t>(i)];
      X(i, 0) = 1.0;
      X(i, 1) = tau_.degenerate ? 1.0 / -std::log(r) : std::pow(r, eps0);
      y[i] = u(r) / phi_mu(r, tau_);
    }
    return X.colPivHouseholderQr().solve(y)[0];
  }

  // one collocation row: L^s_mu of the basis functions E W phi_j at r
  [[nodiscard]] Eigen::RowVectorXd row(double r) const {
    const auto n = static_cast<Eigen::Index>(grid_.size());
    const PvRule R = build_pv_rule(op_.kernel(), op_.cns_value(), r, 0.0, shape_, q_);
    Eigen::RowVectorXd rc = Eigen::RowVectorXd::Zero(n);
    Eigen::RowVectorXd rm = Eigen::RowVectorXd::Zero(n);
    auto add = [&](const LogSplineBasis::Stencil& st, const std::array<double, 4>& c, double a) {
      const Eigen::Index k = st.k;
      rc[k] += a * c[0];
      rm[k] += a * c[2];
      if (k + 1 < n) {
        rc[k + 1] += a * c[1];
        rm[k + 1] += a * c[3];
      }
    };
    const RadialSample g = envelope(r);
    const auto st = basis_->stencil(r);
    std::array<double, 4> local{};
    for (int j = 0; j < 4; ++j) {
      local[j] = R.scale * ((R.c0 * g.v + R.c1 * g.d1 + R.c2 * g.d2) * st.v[j] +
                            (R.c1 * g.v + 2.0 * R.c2 * g.d1) * st.d1[j] + R.c2 * g.v * st.d2[j]) +
                 p_.mu() * std::pow(r, -2.0 * p_.s()) * g.v * st.v[j];
    }
    add(st, local, 1.0);
    for (std::size_t m = 0; m < R.rho.size(); ++m) {
      const double rho = R.rho[m];
      if (rho >= 1.0 || rho <= inner_) continue;
      const double ge = envelope(rho).v;
      const auto sm = basis_->stencil(rho);
      add(sm, sm.v, R.scale * R.w[m] * ge);
    }
    if (!inner_basis_.empty()) rc[0] -= R.scale * pv_tail_terms(R, op_.kernel(), inner_basis_, {});
    return rc + rm * basis_->second_derivative_map();
  }

  ProblemParams p_;
  RadialOperator op_;
  QuadSpec q_;
  std::vector<double> grid_;
  double inner_;
  ExponentPair tau_{};
  detail::Envelope env_;
  std::shared_ptr<const LogSplineBasis> basis_;
  FunctionShape shape_;
  std::vector<PowerTerm> inner_basis_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double condition_ = 0.0;
  mutable std::once_flag sing_once_;
  mutable Eigen::VectorXd sing_rhs_;
};

namespace detail {
inline void check_grid(const std::vector<double>& grid) {
  require(grid.size() >= 64, "solve: grid needs at least 64 nodes");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(grid[i] > 0.0 && grid[i] < 1.0, "solve: grid must lie in (0, 1)");
    if (i > 0) require(grid[i] > grid[i - 1], "solve: grid must increase");
  }
}
}  // namespace detail

/// Solves the Dirichlet problem with singular coefficient prob.k.
inline SolveReport solve(const DirichletProblem& prob, const std::vector<double>& grid, const QuadSpec& q = {}) {
  detail::check_grid(grid);
  const CollocationSystem sys(prob.p, grid, q);
  return sys.solve(prob.f, prob.k, prob.rho);
}

/// Phi_mu^Omega = Phi_mu - w_1 + w_2 with w_1 = Phi_mu (1 - chi) and
/// w_2 the k = 0 solution for f_1 = L^s_mu w_1.
inline SolveReport build_phi_omega(const CollocationSystem& sys) {
  const RadialFunction phi = sys.op().phi();
  const RadialFunction w1 = phi - sys.singular_part();
  const Eigen::VectorXd f1 = sys.apply_at_nodes(w1);
  // Phi_mu - w_1 = Phi_mu chi, so u = Phi_mu chi + w_2; the data of Phi_mu^Omega is f = 0
  return sys.report(sys.solve_values(f1), 1.0, RadialFunction::zero(), 0.0, f1.cwiseAbs().maxCoeff());
}

inline SolveReport build_phi_omega(const ProblemParams& p, const std::vector<double>& grid, const QuadSpec& q = {}) {
  detail::check_grid(grid);
  return build_phi_omega(CollocationSystem(p, grid, q));
}

/// u_k = k Phi_mu^Omega + u_{f+} - u_{f-} from three solves on one system.
inline SolveReport assemble_uk(const DirichletProblem& prob, const std::vector<double>& grid, const QuadSpec& q = {}) {
  detail::check_grid(grid);
  const CollocationSystem sys(prob.p, grid, q);
  const auto crossings = detail::level_crossings(prob.f, 0.0, grid);
  const RadialFunction fp = detail::map_values(prob.f, [](double v) { return std::max(v, 0.0); }, crossings);
  const RadialFunction fm = detail::map_values(prob.f, [](double v) { return std::max(-v, 0.0); }, crossings);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.size()));
  double scale = 0.0;
  auto part = [&](const RadialFunction& g, double sign) {
    Eigen::VectorXd b(w.size());
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = g(grid[static_cast<std::size_t>(i)]);
    scale += b.cwiseAbs().maxCoeff();
    w += sign * sys.solve_values(b);
  };
  part(fp, 1.0);
  part(fm, -1.0);
  if (prob.k != 0.0) {
    const Eigen::VectorXd f1 = sys.apply_at_nodes(sys.op().phi() - sys.singular_part());
    w += prob.k * sys.solve_values(f1);
    scale += std::abs(prob.k) * f1.cwiseAbs().maxCoeff();
  }
  return sys.report(w, prob.k, prob.f, prob.rho, scale);
}

/// min(f, n) with the crossing points marked as kinks.
inline RadialFunction truncate_source(const RadialFunction& f, double n, const std::vector<double>& grid) {
  return detail::map_values(f, [n](double v) { return std::min(v, n); }, detail::level_crossings(f, n, grid));
}

/// Solves with the truncated sources min(f, n) for each level n (k = 0).
inline std::vector<SolveReport> monotone_approx_solve(const RadialFunction& f, const std::vector<double>& levels,
                                                      const ProblemParams& p, const std::vector<double>& grid,
                                                      const QuadSpec& q = {}) {
  detail::check_grid(grid);
  for (double r : grid) detail::require(f(r) >= 0.0, "monotone_approx_solve: source must be nonnegative");
  for (double n : levels) detail::require(n > 0.0 && std::isfinite(n), "monotone_approx_solve: levels must be positive");
  const CollocationSystem sys(p, grid, q);
  std::vector<SolveReport> out;
  for (double n : levels) out.push_back(sys.solve(truncate_source(f, n, grid)));
  return out;
}

}  // namespace hardyfrac
