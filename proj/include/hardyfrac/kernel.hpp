#pragma once

// Angular average of |x - z|^{-N-2s} over the sphere |z| = rho and its
// logarithmic-variable form used by every radial principal-value rule.
//
// With y = ln(rho/r), (-Delta)^s u(r) = C r^{-2s} PV int (u(r) - u(r e^y)) m(y) dy,
// m(y) = e^{Ny} K(1, e^y) = e^{beta y} S(|y|), beta = (N-2s)/2, S even.

#include <cmath>
#include <numbers>
#include <vector>

#include "hardyfrac/params.hpp"
#include "hardyfrac/quadrature.hpp"
#include "hardyfrac/special.hpp"

namespace hardyfrac {

class RadialKernel {
public:
  explicit RadialKernel(const ProblemParams& p)
      : N_(p.dim()), s_(p.s()), a_((p.dim() + 2.0 * p.s()) / 2.0), beta_((p.dim() - 2.0 * p.s()) / 2.0),
        omega_(omega_sphere(p.N())) {
    const double b = 1.0 + s_;
    const double c = N_ / 2.0;
    coef_.reserve(kTerms);
    double cn = 1.0;
    for (int n = 0; n < kTerms; ++n) {
      coef_.push_back(omega_ * cn);
      cn *= (a_ + n) * (b + n) / ((c + n) * (n + 1.0));
    }
    near_pref_ = std::pow(2.0, N_ - 1.0) * detail::sphere_measure(N_ - 1.0) * std::pow(4.0, -a_);
    // S(y) ~ A |y|^{-1-2s} as y -> 0
    A_ = omega_ *
         std::exp(std::lgamma(N_ / 2.0) + std::lgamma(1.0 + 2.0 * s_) - std::lgamma(a_) - std::lgamma(1.0 + s_)) *
         std::pow(2.0, -1.0 - 2.0 * s_);
  }

  [[nodiscard]] double beta() const noexcept { return beta_; }
  [[nodiscard]] double singular_coefficient() const noexcept { return A_; }
  [[nodiscard]] double dim() const noexcept { return N_; }
  [[nodiscard]] double order() const noexcept { return s_; }

  /// Even part S(|y|) of the log-variable kernel; y != 0.
  [[nodiscard]] double S(double y) const {
    const double ay = std::abs(y);
    if (!(ay > 0.0)) throw DomainError("RadialKernel::S: y = 0 is the kernel singularity");
    if (ay >= kSeriesCut) {
      const double q2 = std::exp(-2.0 * ay);
      return std::exp(-a_ * ay) * series(q2);
    }
    const double eps = std::sinh(0.5 * ay);
    return near_pref_ * (std::pow(eps, -1.0 - 2.0 * s_) * inner_integral(eps) + outer_integral(eps));
  }

  /// m(y) = e^{beta y} S(y).
  [[nodiscard]] double m(double y) const { return std::exp(beta_ * y) * S(y); }

  /// K(1, q) = int_{S^{N-1}} |e_1 - q w|^{-N-2s} dw, q != 1.
  [[nodiscard]] double ratio_kernel(double q) const {
    if (!(q > 0.0) || q == 1.0) throw DomainError("sphere kernel: ratio must be positive and != 1");
    const double y = std::log(q);
    if (std::abs(y) >= kSeriesCut) {
      if (q < 1.0) return series(q * q);
      return std::pow(q, -N_ - 2.0 * s_) * series(1.0 / (q * q));
    }
    return std::pow(q, beta_ - N_) * S(y);
  }

  /// K(r, rho) = r^{-N-2s} K(1, rho/r).
  [[nodiscard]] double sphere_kernel(double r, double rho) const {
    if (!(r > 0.0 && rho > 0.0)) throw DomainError("sphere_kernel: radii must be positive");
    if (r == rho) throw DomainError("sphere_kernel: singular at r == rho");
    return std::pow(r, -N_ - 2.0 * s_) * ratio_kernel(rho / r);
  }

  /// int_Y^inf e^{kappa y} (L + y)^ell m(y) dy for Y >= ln 2.
  [[nodiscard]] double outer_tail(double Y, double kappa, int ell, double L) const {
    detail::require(Y >= kSeriesCut * (1.0 - 1e-12), "outer_tail: Y must be >= ln 2");
    detail::require(ell >= 0 && ell <= kMaxLog, "outer_tail: log power must lie in [0, 4]");
    double acc = 0.0;
    for (int n = 0; n < kTerms; ++n) {
      const double k = 2.0 * s_ + 2.0 * n - kappa;
      if (!(k > 0.0)) throw DomainError("outer_tail: tail not integrable (exponent too large)");
      // J_l = e^{-kY} (L+Y)^l / k + (l / k) J_{l-1}
      const double e = std::exp(-k * Y);
      double J = e / k;
      double pw = 1.0;
      for (int l = 1; l <= ell; ++l) {
        pw *= L + Y;
        J = e * pw / k + l / k * J;
      }
      const double term = coef_[n] * J;
      acc += term;
      if (n > 2 && std::abs(term) <= 1e-18 * std::abs(acc)) break;
    }
    return acc;
  }

  /// int_{-inf}^Y e^{kappa y} (L + y)^ell m(y) dy for Y <= -ln 2.
  [[nodiscard]] double inner_tail(double Y, double kappa, int ell, double L) const {
    detail::require(Y <= -kSeriesCut * (1.0 - 1e-12), "inner_tail: Y must be <= -ln 2");
    detail::require(ell >= 0 && ell <= kMaxLog, "inner_tail: log power must lie in [0, 4]");
    double acc = 0.0;
    for (int n = 0; n < kTerms; ++n) {
      const double l = N_ + 2.0 * n + kappa;
      if (!(l > 0.0)) throw DomainError("inner_tail: tail not integrable (exponent too small)");
      // I_j = e^{lY} (L+Y)^j / l - (j / l) I_{j-1}
      const double e = std::exp(l * Y);
      double I = e / l;
      double pw = 1.0;
      for (int j = 1; j <= ell; ++j) {
        pw *= L + Y;
        I = e * pw / l - j / l * I;
      }
      const double term = coef_[n] * I;
      acc += term;
      if (n > 2 && std::abs(term) <= 1e-18 * std::abs(acc)) break;
    }
    return acc;
  }

  static constexpr double kSeriesCut = std::numbers::ln2;

private:
  static constexpr int kTerms = 90;
  static constexpr int kMaxLog = 4;

  // omega * 2F1(a, 1+s; N/2; q2)
  [[nodiscard]] double series(double q2) const {
    double acc = 0.0;
    double qn = 1.0;
    for (int n = 0; n < kTerms; ++n) {
      const double term = coef_[n] * qn;
      acc += term;
      if (n > 2 && term <= 1e-18 * acc) break;
      qn *= q2;
    }
    return acc;
  }

  // int_0^W sinh^{N-2} w cosh^{1-2a} w (1 - eps^2 sinh^2 w)^{(N-3)/2} dw, sinh W = sin(pi/4)/eps
  [[nodiscard]] double inner_integral(double eps) const {
    const double W = std::asinh(std::numbers::sqrt2 / 2.0 / eps);
    const double w_stop = 40.0 / (1.0 + 2.0 * s_);
    const auto& g = GaussRule<16>::get();
    const double e2 = eps * eps;
    auto f = [&](double w) {
      const double sh = std::sinh(w);
      const double ch = std::cosh(w);
      double v = std::pow(ch, 1.0 - 2.0 * a_) * std::pow(1.0 - e2 * sh * sh, (N_ - 3.0) / 2.0);
      if (N_ != 2.0) v *= std::pow(sh, N_ - 2.0);
      return v;
    };
    double acc = 0.0;
    double lo = 0.0;
    double hi = 0.5;
    while (lo < W && lo < w_stop) {
      const double b = std::min(hi, W);
      acc += g.integrate(lo, b, f);
      lo = b;
      hi = lo < 1.0 ? 1.5 : 2.0 * lo;
    }
    return acc;
  }

  // int_{pi/4}^{pi/2} (sin phi cos phi)^{N-2} (eps^2 + sin^2 phi)^{-a} dphi
  [[nodiscard]] double outer_integral(double eps) const {
    const auto& g = GaussRule<20>::get();
    const double e2 = eps * eps;
    return g.integrate(std::numbers::pi / 4.0, std::numbers::pi / 2.0, [&](double phi) {
      const double sp = std::sin(phi);
      double v = std::pow(e2 + sp * sp, -a_);
      if (N_ != 2.0) v *= std::pow(sp * std::cos(phi), N_ - 2.0);
      return v;
    });
  }

  double N_;
  double s_;
  double a_;
  double beta_;
  double omega_;
  double near_pref_;
  double A_;
  std::vector<double> coef_;
};

}  // namespace hardyfrac
