#pragma once

// Linear quadrature rule for the radial principal value
//
//   J[u](r) = PV int (u(r) - u(r e^y)) e^{gamma y} m(y) dy,
//
// returned as scale * J with scale = C_{N,s} r^{gamma - 2s}. With gamma = 0
// this is (-Delta)^s u(r); with gamma = tau_+ it is the Gamma_mu-weighted
// operator. The rule is a set of point weights plus coefficients on u(r),
// u'(r), u''(r), so it can be applied to concrete functions or to basis
// functionals alike.

#include <algorithm>
#include <cmath>
#include <vector>

#include "hardyfrac/kernel.hpp"
#include "hardyfrac/params.hpp"
#include "hardyfrac/quadrature.hpp"
#include "hardyfrac/radial_function.hpp"

namespace hardyfrac {

struct PvRule {
  double r = 1.0;
  double gamma = 0.0;
  double scale = 1.0;
  double y_lo = 0.0;  // inner series tail starts below r e^{y_lo}
  double y_hi = 0.0;  // outer series tail starts above r e^{y_hi}
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<double> rho;
  std::vector<double> w;
  std::size_t panels = 0;
};

namespace detail {
inline constexpr double kWindowMax = 0.4;
inline constexpr double kWindowDepth = 1e-3;  // innermost resolved |y| relative to the window
inline constexpr double kFarMaxWidth = 1.0;
inline constexpr std::size_t kMaxPanels = 20000;
}  // namespace detail

inline PvRule build_pv_rule(const RadialKernel& K, double cns_value, double r, double gamma, const FunctionShape& shape,
                            const QuadSpec& q = {}) {
  detail::require(r > 0.0 && std::isfinite(r), "pv rule: r must be positive");
  const auto& gl = GaussRule<8>::get();
  const double s = K.order();
  const double bprime = K.beta() + gamma;

  std::vector<double> bp_y;
  for (double b : shape.breakpoints)
    if (b > 0.0) bp_y.push_back(std::log(b / r));
  std::vector<double> sing_y;
  for (double b : shape.singular_points) {
    if (!(b > 0.0)) continue;
    const double y = std::log(b / r);
    if (y == 0.0) throw PreconditionError("pv rule: r coincides with a singular point of the function");
    sing_y.push_back(y);
  }

  double delta = detail::kWindowMax;
  for (double y : sing_y) delta = std::min(delta, 0.5 * std::abs(y));
  const double y_min = detail::kWindowDepth * delta;

  PvRule R;
  R.r = r;
  R.gamma = gamma;
  R.scale = cns_value * std::pow(r, gamma - 2.0 * s);
  const double y_in = std::log(shape.inner_cut / r);
  const double y_out = std::log(shape.outer_cut / r);
  R.y_lo = std::min(y_in, -RadialKernel::kSeriesCut);
  R.y_hi = std::max(y_out, RadialKernel::kSeriesCut);

  // symmetric window (0, delta]
  {
    std::vector<double> cuts;
    for (double y : bp_y)
      if (std::abs(y) > 2.0 * y_min && std::abs(y) < delta) cuts.push_back(std::abs(y));
    const auto panels = graded_panels(y_min, delta, cuts, {0.0}, delta, 1.0, 0.0);
    R.panels += panels.size();
    for (const auto& p : panels) {
      gl.for_each(p.a, p.b, [&](double y, double wt) {
        const double W = wt * K.S(y);
        const double E = std::exp(bprime * y);
        R.c0 += W * (E + 1.0 / E);
        R.rho.push_back(r * std::exp(y));
        R.w.push_back(-W * E);
        R.rho.push_back(r * std::exp(-y));
        R.w.push_back(-W / E);
      });
    }
    // Taylor remainder on (0, y_min): G(y) + G(-y) ~ (-v'' - 2 beta' v') y^2
    const double rem = K.singular_coefficient() * std::pow(y_min, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    R.c2 += -rem * r * r;
    R.c1 += -rem * r * (1.0 + 2.0 * bprime);
  }

  // far field on [y_lo, -delta] and [delta, y_hi]
  {
    std::vector<double> cuts = bp_y;
    cuts.insert(cuts.end(), sing_y.begin(), sing_y.end());
    cuts.push_back(y_in);
    cuts.push_back(y_out);
    std::vector<double> targets = sing_y;
    targets.push_back(0.0);
    const double min_width = std::ldexp(1.0, -q.max_depth) * std::max(1.0, R.y_hi - R.y_lo);
    for (const auto& [a, b] : {std::pair{R.y_lo, -delta}, std::pair{delta, R.y_hi}}) {
      if (!(b > a)) continue;
      const auto panels = graded_panels(a, b, cuts, targets, detail::kFarMaxWidth, 1.0, min_width);
      R.panels += panels.size();
      for (const auto& p : panels) {
        gl.for_each(p.a, p.b, [&](double y, double wt) {
          const double W = wt * std::exp(bprime * y) * K.S(y);
          R.c0 += W;
          R.rho.push_back(r * std::exp(y));
          R.w.push_back(-W);
        });
      }
    }
  }
  if (R.panels > detail::kMaxPanels)
    throw QuadratureError("pv rule: panel budget exceeded (" + std::to_string(R.panels) + " panels)");

  // mass of the kernel beyond the numeric region
  R.c0 += K.inner_tail(R.y_lo, gamma, 0, 0.0) + K.outer_tail(R.y_hi, gamma, 0, 0.0);
  return R;
}

/// Contribution of the inner/outer power terms of u beyond the numeric region.
inline double pv_tail_terms(const PvRule& R, const RadialKernel& K, const std::vector<PowerTerm>& inner,
                            const std::vector<PowerTerm>& outer) {
  const double L = std::log(R.r);
  double acc = 0.0;
  for (const auto& t : inner)
    acc += t.coef * std::pow(R.r, t.tau) * K.inner_tail(R.y_lo, R.gamma + t.tau, t.log_power, L);
  for (const auto& t : outer)
    acc += t.coef * std::pow(R.r, t.tau) * K.outer_tail(R.y_hi, R.gamma + t.tau, t.log_power, L);
  return acc;
}

inline double apply_pv_rule(const PvRule& R, const RadialKernel& K, const RadialFunction& u) {
  const RadialSample s0 = u.sample(R.r);
  double J = R.c0 * s0.v + R.c1 * s0.d1 + R.c2 * s0.d2;
  for (std::size_t m = 0; m < R.rho.size(); ++m) J += R.w[m] * u(R.rho[m]);
  J -= pv_tail_terms(R, K, u.inner_terms(), u.outer_terms());
  return R.scale * J;
}

}  // namespace hardyfrac
