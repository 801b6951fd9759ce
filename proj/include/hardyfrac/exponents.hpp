#pragma once

// The two homogeneity exponents tau_-(s,mu) <= tau_+(s,mu): the roots of
// c_s(tau) = -mu on either side of the maximum of the concave symbol.

#include <cmath>
#include <string>

#include "hardyfrac/params.hpp"
#include "hardyfrac/roots.hpp"
#include "hardyfrac/special.hpp"

namespace hardyfrac {

struct ExponentPair {
  double tau_minus;
  double tau_plus;
  bool degenerate;  // mu == mu_0 within tolerance; both exponents equal (2s-N)/2

  [[nodiscard]] double gap() const noexcept { return tau_plus - tau_minus; }
};

namespace detail {
inline constexpr double kDegenerateRelTol = 1e-10;
inline constexpr double kNearDegenerateTol = 1e-6;
inline constexpr double kBracketInset = 1e-8;
inline constexpr double kBelowMu0Slack = 1e-12;
}  // namespace detail

/// True when mu sits on the critical value mu_0 (relative tolerance 1e-10).
inline bool is_critical(const ProblemParams& p) {
  const double m0 = mu0(p);
  return std::abs(p.mu() - m0) <= detail::kDegenerateRelTol * (1.0 + std::abs(m0));
}

inline ExponentPair tau_pair(const ProblemParams& p) {
  const double m0 = mu0(p);
  const double mu = p.mu();
  if (mu < m0 - detail::kBelowMu0Slack)
    throw PreconditionError("tau_pair: mu = " + std::to_string(mu) + " is below mu_0 = " +
                            std::to_string(m0) + "; no real exponents exist");
  const double mid = p.tau_mid();
  if (is_critical(p) || mu <= m0) return {mid, mid, true};
  if (mu == 0.0) return {2.0 * p.s() - p.dim(), 0.0, false};

  const double N = p.dim();
  const double s = p.s();
  const bool near = (mu - m0) <= detail::kNearDegenerateTol;
  auto f = [&](double tau) { return c_s(tau, p) + mu; };

  const double lo = -N + detail::kBracketInset;
  const double hi = 2.0 * s - detail::kBracketInset;
  if (f(lo) > 0.0 || f(hi) > 0.0)
    throw DomainError("tau_pair: mu = " + std::to_string(mu) +
                      " too large; exponent lies within 1e-8 of the interval end");
  double tm = find_root_bracketed(f, lo, mid, near).root;
  double tp = find_root_bracketed(f, mid, hi, near).root;
  if (near) {
    // the roots are ill-conditioned at the flat maximum; symmetrize about mid
    const double half_gap = 0.5 * (tp - tm);
    tm = mid - half_gap;
    tp = mid + half_gap;
  }
  return {tm, tp, false};
}

/// Inverse of the exponent map: mu = -c_s(tau).
inline double mu_of_tau(double tau, const ProblemParams& p) { return -c_s(tau, p); }

}  // namespace hardyfrac
