#pragma once

// Gamma-based closed forms: C_{N,s}, c_s(tau), sigma(tau), mu_0, the sphere
// measure and the delta coefficient of (-Delta)^s |x|^{2s-N}.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include "hardyfrac/params.hpp"

namespace hardyfrac {

/// ln|Gamma(x)| together with the sign of Gamma(x).
struct LogGamma {
  double value;
  int sign;
};

namespace detail {

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

}  // namespace detail

/// ln|Gamma(x)| and sign(Gamma(x)). Throws PoleError at nonpositive integers.
inline LogGamma gamma_ln(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma_ln: non-finite argument");
  if (detail::is_nonpositive_integer(x))
    throw PoleError("gamma_ln: pole of Gamma at x = " + std::to_string(x));
  int sign = 1;
  const double v = boost::math::lgamma(x, &sign);
  return {v, sign};
}

namespace detail {

/// ln|1/Gamma(x)| with sign; 1/Gamma is entire, so poles of Gamma give
/// sign 0 (an exact zero) instead of an error.
inline LogGamma log_rgamma(double x) {
  if (is_nonpositive_integer(x)) return {-std::numeric_limits<double>::infinity(), 0};
  if (x > 0.5) {
    const LogGamma g = gamma_ln(x);
    return {-g.value, g.sign};
  }
  // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
  const double sp = boost::math::sin_pi(x);
  if (sp == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  const LogGamma g = gamma_ln(1.0 - x);
  return {std::log(std::abs(sp)) + g.value - std::log(std::numbers::pi), (sp > 0 ? 1 : -1) * g.sign};
}

inline constexpr double kDirectGammaMax = 40.0;

inline double gamma_ratio(double num_a, double num_b, double den_a, double den_b) {
  if (is_nonpositive_integer(den_a) || is_nonpositive_integer(den_b)) return 0.0;
  if (std::max({std::abs(num_a), std::abs(num_b), std::abs(den_a), std::abs(den_b)}) <= kDirectGammaMax &&
      !is_nonpositive_integer(num_a) && !is_nonpositive_integer(num_b)) {
    // direct products lose less than the exp of a sum of logs
    using boost::math::tgamma;
    return tgamma(num_a) * tgamma(num_b) / (tgamma(den_a) * tgamma(den_b));
  }
  const LogGamma a = gamma_ln(num_a);
  const LogGamma b = gamma_ln(num_b);
  const LogGamma c = log_rgamma(den_a);
  const LogGamma d = log_rgamma(den_b);
  const int sign = a.sign * b.sign * c.sign * d.sign;
  if (sign == 0) return 0.0;
  return sign * std::exp(a.value + b.value + c.value + d.value);
}

/// Measure of the unit sphere S^{d-1}; valid for real d >= 1 (d = 1 gives 2).
inline double sphere_measure(double d) {
  return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

}  // namespace detail

/// omega_{N-1} = 2 pi^{N/2} / Gamma(N/2).
inline double omega_sphere(int N) {
  detail::require(N >= 2, "omega_sphere: N must be >= 2");
  return detail::sphere_measure(static_cast<double>(N));
}

/// Normalization constant C_{N,s} of the fractional Laplacian.
inline double cns(const ProblemParams& p) {
  const double s = p.s();
  const double N = p.dim();
  const LogGamma num = gamma_ln((N + 2.0 * s) / 2.0);
  const LogGamma den = gamma_ln(1.0 - s);
  return std::exp(2.0 * s * std::log(2.0) - N / 2.0 * std::log(std::numbers::pi) + std::log(s) +
                  num.value - den.value);
}

/// Symbol c_s(tau) with (-Delta)^s |x|^tau = c_s(tau) |x|^{tau - 2s} for tau in (-N, 2s).
///
/// Evaluated in log-Gamma form; the denominator Gammas go through 1/Gamma so
/// the zeros at tau = 0 and tau = 2s - N come out as exact zeros.
inline double c_s(double tau, const ProblemParams& p) {
  const double s = p.s();
  const double N = p.dim();
  if (!(tau > -N && tau < 2.0 * s))
    throw DomainError("c_s: tau = " + std::to_string(tau) + " outside (-N, 2s)");
  const double zero_tol = 8.0 * std::numeric_limits<double>::epsilon() * N;
  if (std::abs(tau) <= zero_tol || std::abs(tau - (2.0 * s - N)) <= zero_tol) return 0.0;
  return std::pow(2.0, 2.0 * s) *
         detail::gamma_ratio((N + tau) / 2.0, (2.0 * s - tau) / 2.0, -tau / 2.0, (N - 2.0 * s + tau) / 2.0);
}

/// Fourier multiplier sigma(tau) = 2^{tau+N} pi^{N/2} Gamma((tau+N)/2) / Gamma(-tau/2),
/// so that F(|x|^tau) = sigma(tau) |xi|^{-N-tau}.
inline double sigma(double tau, const ProblemParams& p) {
  const double N = p.dim();
  if (!(tau > -N)) throw DomainError("sigma: tau must exceed -N");
  const LogGamma g = gamma_ln((tau + N) / 2.0);
  const LogGamma r = detail::log_rgamma(-tau / 2.0);
  if (r.sign == 0) return 0.0;
  return g.sign * r.sign *
         std::exp((tau + N) * std::log(2.0) + N / 2.0 * std::log(std::numbers::pi) + g.value + r.value);
}

/// Best constant mu_0 < 0 of the fractional Hardy inequality.
inline double mu0(const ProblemParams& p) {
  const double s = p.s();
  const double N = p.dim();
  const LogGamma a = gamma_ln((N + 2.0 * s) / 4.0);
  const LogGamma b = gamma_ln((N - 2.0 * s) / 4.0);
  return -std::exp(2.0 * s * std::log(2.0) + 2.0 * (a.value - b.value));
}

/// Coefficient of delta_0 in (-Delta)^s |x|^{2s-N}.
inline double riesz_delta_const(const ProblemParams& p) {
  const double s = p.s();
  const double N = p.dim();
  const LogGamma a = gamma_ln(s);
  const LogGamma b = gamma_ln((N - 2.0 * s) / 2.0);
  return std::exp(2.0 * s * std::log(2.0) + N / 2.0 * std::log(std::numbers::pi) + a.value - b.value);
}

}  // namespace hardyfrac
