#pragma once

// Pointwise (-Delta)^s and L^s_mu on radial functions, the homogeneous
// solutions Phi_mu, Gamma_mu, the envelope Lambda_mu, and the Gagliardo
// seminorm sequence of Gamma_mu on shrinking punctured balls.

#include <algorithm>
#include <cmath>
#include <vector>

#include "hardyfrac/exponents.hpp"
#include "hardyfrac/kernel.hpp"
#include "hardyfrac/params.hpp"
#include "hardyfrac/pv_rule.hpp"
#include "hardyfrac/quadrature.hpp"
#include "hardyfrac/radial_function.hpp"
#include "hardyfrac/special.hpp"

namespace hardyfrac {

/// Kernel, normalization and exponents for one ProblemParams, built once and
/// shared by the pointwise evaluators. Read-only after construction.
class RadialOperator {
public:
  explicit RadialOperator(const ProblemParams& p)
      : p_(p), kernel_(p), cns_(cns(p)), tau_(p.mu() >= mu0(p) - 1e-12 ? tau_pair(p) : ExponentPair{0, 0, false}),
        has_tau_(p.mu() >= mu0(p) - 1e-12) {}

  [[nodiscard]] const ProblemParams& params() const noexcept { return p_; }
  [[nodiscard]] const RadialKernel& kernel() const noexcept { return kernel_; }
  [[nodiscard]] double cns_value() const noexcept { return cns_; }

  [[nodiscard]] const ExponentPair& exponents() const {
    if (!has_tau_) throw PreconditionError("exponents undefined for mu < mu_0");
    return tau_;
  }

  /// C r^{gamma-2s} PV int (u(r) - u(r e^y)) e^{gamma y} m(y) dy.
  [[nodiscard]] double weighted_pv(const RadialFunction& u, double r, double gamma, const QuadSpec& q = {}) const {
    const PvRule R = build_pv_rule(kernel_, cns_, r, gamma, u.shape(), q);
    return apply_pv_rule(R, kernel_, u);
  }

  [[nodiscard]] double frac_lap(const RadialFunction& u, double r, const QuadSpec& q = {}) const {
    return weighted_pv(u, r, 0.0, q);
  }

  [[nodiscard]] double hardy(const RadialFunction& u, double r, const QuadSpec& q = {}) const {
    return frac_lap(u, r, q) + p_.mu() * std::pow(r, -2.0 * p_.s()) * u(r);
  }

  /// Phi_mu: r^{tau_-}, or -r^{tau_-} ln r at mu = mu_0.
  [[nodiscard]] RadialFunction phi() const {
    const auto& t = exponents();
    return t.degenerate ? RadialFunction::power(-1.0, t.tau_minus, 1) : RadialFunction::power(1.0, t.tau_minus);
  }

  /// Gamma_mu: r^{tau_+}.
  [[nodiscard]] RadialFunction gamma() const { return RadialFunction::power(1.0, exponents().tau_plus); }

private:
  ProblemParams p_;
  RadialKernel kernel_;
  double cns_;
  ExponentPair tau_;
  bool has_tau_;
};

/// K(r, rho) = int_{S^{N-1}} |r e_1 - rho w|^{-N-2s} dw.
inline double sphere_kernel(double r, double rho, const ProblemParams& p) {
  return RadialKernel(p).sphere_kernel(r, rho);
}

inline double frac_lap_pv(const RadialFunction& u, double r, const ProblemParams& p, const QuadSpec& q = {}) {
  q.validate();
  const RadialKernel K(p);
  return apply_pv_rule(build_pv_rule(K, cns(p), r, 0.0, u.shape(), q), K, u);
}

inline double hardy_apply(const RadialFunction& u, double r, const ProblemParams& p, const QuadSpec& q = {}) {
  return frac_lap_pv(u, r, p, q) + p.mu() * std::pow(r, -2.0 * p.s()) * u(r);
}

inline double phi_mu(double r, const ExponentPair& t) {
  detail::require(r > 0.0, "phi_mu: r must be positive");
  const double v = std::pow(r, t.tau_minus);
  return t.degenerate ? -v * std::log(r) : v;
}

inline double phi_mu(double r, const ProblemParams& p) { return phi_mu(r, tau_pair(p)); }

inline double gamma_mu(double r, const ExponentPair& t) {
  detail::require(r > 0.0, "gamma_mu: r must be positive");
  return std::pow(r, t.tau_plus);
}

inline double gamma_mu(double r, const ProblemParams& p) { return gamma_mu(r, tau_pair(p)); }

namespace detail {
inline constexpr double kLambdaBranchTol = 1e-12;
}

/// Lambda_mu(r): 1 if tau_+ > 2s-1, r^{1-2s+tau_+} if tau_+ < 2s-1,
/// 1 + (-ln r)_+ on the borderline.
inline double lambda_mu(double r, double tau_plus, double s) {
  detail::require(r > 0.0, "lambda_mu: r must be positive");
  const double d = tau_plus - (2.0 * s - 1.0);
  if (std::abs(d) <= detail::kLambdaBranchTol) return 1.0 + std::max(0.0, -std::log(r));
  if (d > 0.0) return 1.0;
  return std::pow(r, 1.0 - 2.0 * s + tau_plus);
}

inline double lambda_mu(double r, const ProblemParams& p) { return lambda_mu(r, tau_pair(p).tau_plus, p.s()); }

namespace detail {

// F(Y) = int_{-inf}^Y (1 - e^{tau y})^2 m(y) dy, tabulated along increasing Y.
// Near y = 0 the integrand is tau^2 A |y|^{1-2s}; (-y_min, y_min) is done analytically.
class SquaredDifferenceMass {
public:
  SquaredDifferenceMass(const RadialKernel& K, double tau) : K_(K), tau_(tau) {
    const double c = -RadialKernel::kSeriesCut;
    const double s = K_.order();
    half_gap_ = tau_ * tau_ * K_.singular_coefficient() * std::pow(kYMin, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    base_ = K_.inner_tail(c, 0.0, 0, 0.0) - 2.0 * K_.inner_tail(c, tau_, 0, 0.0) + K_.inner_tail(c, 2.0 * tau_, 0, 0.0);
    base_ += segment(c, -kYMin) + 2.0 * half_gap_;
    last_y_ = kYMin;
    last_F_ = base_;
  }

  /// F(Y) for Y >= the previous query; Y below y_min counts as y_min.
  double advance(double Y) {
    if (Y < last_y_ && Y >= kYMin) throw PreconditionError("SquaredDifferenceMass: queries must be nondecreasing");
    if (Y <= last_y_) return last_F_;
    last_F_ += segment(last_y_, Y);
    last_y_ = Y;
    return last_F_;
  }

  /// F(+inf); finite only when tau < s.
  [[nodiscard]] double total() const {
    const double c = RadialKernel::kSeriesCut;
    return base_ + segment(kYMin, c) + K_.outer_tail(c, 0.0, 0, 0.0) - 2.0 * K_.outer_tail(c, tau_, 0, 0.0) +
           K_.outer_tail(c, 2.0 * tau_, 0, 0.0);
  }

private:
  static constexpr double kYMin = 1e-6;

  double segment(double a, double b) const {
    if (!(b > a)) return 0.0;
    auto f = [&](double y) {
      const double d = -std::expm1(tau_ * y);
      return d * d * K_.m(y);
    };
    return integrate_graded(f, a, b, {}, {0.0}, 0.5, 0.0);
  }

  const RadialKernel& K_;
  double tau_;
  double half_gap_ = 0.0;
  double base_ = 0.0;
  double last_y_ = 0.0;
  double last_F_ = 0.0;
};

}  // namespace detail

/// Gagliardo double integral of Gamma_mu over {x, y in B_1, |x| > eps} for each
/// eps in the (strictly decreasing) sequence.
inline std::vector<double> gagliardo_seminorm_probe(const ProblemParams& p, const std::vector<double>& eps_seq) {
  const auto t = tau_pair(p);
  const RadialKernel K(p);
  for (std::size_t i = 0; i < eps_seq.size(); ++i) {
    detail::require(eps_seq[i] > 0.0 && eps_seq[i] < 1.0, "gagliardo_seminorm_probe: eps must lie in (0, 1)");
    if (i > 0) detail::require(eps_seq[i] < eps_seq[i - 1], "gagliardo_seminorm_probe: eps must decrease");
  }
  const double tau = t.tau_plus;
  const double kappa = p.dim() + 2.0 * tau - 2.0 * p.s();
  const double omega = omega_sphere(p.N());
  detail::SquaredDifferenceMass F(K, tau);
  const auto& gl = GaussRule<8>::get();

  // I = omega int_0^{ln 1/eps} e^{-kappa x} F(x) dx with x = -ln r
  std::vector<double> out;
  double acc = 0.0;
  double x0 = 0.0;
  for (double eps : eps_seq) {
    const double x1 = -std::log(eps);
    for (const auto& pan : graded_panels(x0, x1, {}, {0.0}, 0.5, 1.0, 1e-14)) {
      gl.for_each(pan.a, pan.b, [&](double x, double w) { acc += w * std::exp(-kappa * x) * F.advance(x); });
    }
    x0 = x1;
    out.push_back(omega * acc);
  }
  return out;
}

/// Slope of the seminorm sequence in |ln eps| at mu = mu_0: omega F(inf).
inline double gagliardo_log_slope(const ProblemParams& p) {
  const RadialKernel K(p);
  detail::SquaredDifferenceMass F(K, tau_pair(p).tau_plus);
  return omega_sphere(p.N()) * F.total();
}

}  // namespace hardyfrac
