#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "hardyfrac/params.hpp"

namespace hardyfrac {

struct RootResult {
  double root;
  int iterations;
};

/// Root of f on [lo, hi] by bisection with a safeguarded secant step.
///
/// f(lo) and f(hi) must have opposite signs (or one of them vanish). The
/// secant candidate is taken between the two bracket ends and is accepted
/// only if it lands strictly inside the bracket and the bracket shrank by at
/// least half on the previous step; otherwise the midpoint is used. With
/// `bisection_only` the secant step is never attempted.
template <class F>
RootResult find_root_bracketed(F&& f, double lo, double hi, bool bisection_only = false,
                               int max_iter = 400) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0};
  if (fhi == 0.0) return {hi, 0};
  if ((flo < 0.0) == (fhi < 0.0))
    throw DomainError("find_root_bracketed: endpoints do not bracket a root");

  double prev_width = hi - lo;
  bool last_secant_ok = true;
  for (int it = 1; it <= max_iter; ++it) {
    const double width = hi - lo;
    const double mid = lo + 0.5 * width;
    if (width <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid)))
      return {mid, it};

    double x = mid;
    if (!bisection_only && last_secant_ok) {
      const double cand = hi - fhi * (hi - lo) / (fhi - flo);
      // stay away from the ends so each step makes progress
      const double guard = 0.01 * width;
      if (std::isfinite(cand) && cand > lo + guard && cand < hi - guard) x = cand;
    }
    const double fx = f(x);
    if (fx == 0.0) return {x, it};
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    const double new_width = hi - lo;
    last_secant_ok = new_width <= 0.5 * prev_width || x == mid;
    prev_width = new_width;
  }
  return {lo + 0.5 * (hi - lo), max_iter};
}

}  // namespace hardyfrac
