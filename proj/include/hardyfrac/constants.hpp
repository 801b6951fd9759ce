#pragma once

// Normalization constants c_{s,mu}, c_{s,0} and the ball integrals h(t).
//
// c_{s,mu} = C omega int_0^1 t^{-1} int_{B_t} (|z|^{tau_-} - |z|^{tau_+}) |e_1 - z|^{-N-2s} dz dt.
// Exchanging the order of integration removes the t-integral:
//   int_0^1 t^{-1} int_0^t g(rho) drho dt = int_0^1 g(rho) (-ln rho) drho,
// so with rho = e^y everything is a single integral against m(y) on (-inf, 0).

#include <cmath>
#include <string>

#include "hardyfrac/exponents.hpp"
#include "hardyfrac/kernel.hpp"
#include "hardyfrac/params.hpp"
#include "hardyfrac/quadrature.hpp"
#include "hardyfrac/special.hpp"

namespace hardyfrac {

enum class HKind { h1, h2, h3 };

/// h1 uses tau_-, h2 uses tau_+, h3 is the log-weighted tau_- integral at mu_0.
struct HFunctionTag {
  HKind kind = HKind::h1;
};

namespace detail {

// int_{a}^{0} f(y) m(y) dy with f(y) ~ c2 y^2 at 0, plus the analytic piece on (-y_min, 0).
template <class F>
double integrate_to_origin(const RadialKernel& K, F&& f, double a, double c2, double y_min) {
  auto g = [&](double y) { return f(y) * K.m(y); };
  double acc = integrate_graded(g, a, -y_min, {}, {0.0}, 0.5, 0.0);
  const double s = K.order();
  acc += c2 * K.singular_coefficient() * std::pow(y_min, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  return acc;
}

}  // namespace detail

/// h(t) = int_{B_t} (1 - |z|^tau) |e_1 - z|^{-N-2s} dz (h1, h2), or
/// h3(t) = int_{B_t} |z|^{tau_-} ln|z| |e_1 - z|^{-N-2s} dz at mu = mu_0.
inline double h_eval(HFunctionTag tag, double t, const ProblemParams& p, const QuadSpec& q = {}) {
  q.validate();
  if (!(t > 0.0 && t < 1.0)) throw DomainError("h_eval: t must lie in (0, 1)");
  const auto tp = tau_pair(p);
  if (tag.kind == HKind::h3 && !tp.degenerate) throw PreconditionError("h_eval: h3 is defined at mu = mu_0 only");
  const double tau = tag.kind == HKind::h2 ? tp.tau_plus : tp.tau_minus;
  const RadialKernel K(p);
  const double Y = std::log(t);
  const double c = -RadialKernel::kSeriesCut;
  auto tail = [&](double y) {
    if (tag.kind == HKind::h3) return K.inner_tail(y, tau, 1, 0.0);
    return K.inner_tail(y, 0.0, 0, 0.0) - K.inner_tail(y, tau, 0, 0.0);
  };
  if (Y <= c) return tail(Y);
  auto f = [&](double y) {
    if (tag.kind == HKind::h3) return std::exp(tau * y) * y * K.m(y);
    return -std::expm1(tau * y) * K.m(y);
  };
  // panels shrink toward the kernel singularity just beyond t = 1
  return tail(c) + integrate_graded(f, c, Y, {}, {0.0}, 0.5, 0.0);
}

/// Normalization constant c_{s,mu} for mu >= mu_0.
inline double csmu(const ProblemParams& p, const QuadSpec& q = {}) {
  q.validate();
  const auto tp = tau_pair(p);
  const RadialKernel K(p);
  const double c = -RadialKernel::kSeriesCut;
  const double y_min = q.rel_tol;
  double J;
  if (tp.degenerate) {
    // int e^{tau y} y^2 m(y) dy on (-inf, 0)
    const double tau = tp.tau_minus;
    J = K.inner_tail(c, tau, 2, 0.0) +
        detail::integrate_to_origin(K, [&](double y) { return std::exp(tau * y) * y * y; }, c, 1.0, y_min);
  } else {
    // int (e^{tau_- y} - e^{tau_+ y}) (-y) m(y) dy on (-inf, 0)
    const double a = tp.tau_minus;
    const double b = tp.tau_plus;
    J = -(K.inner_tail(c, a, 1, 0.0) - K.inner_tail(c, b, 1, 0.0)) +
        detail::integrate_to_origin(
            K, [&](double y) { return (std::exp(a * y) - std::exp(b * y)) * (-y); }, c, b - a, y_min);
  }
  const double v = cns(p) * omega_sphere(p.N()) * J;
  if (!(v > 0.0) || !std::isfinite(v))
    throw QuadratureError("csmu: non-positive or non-finite result " + std::to_string(v));
  return v;
}

/// c_{s,0} = c_{s,mu} at mu = 0.
inline double cs0(const ProblemParams& p, const QuadSpec& q = {}) { return csmu(p.with_mu(0.0), q); }

/// Same constant through the nested route int_0^1 (h2(t) - h1(t)) / t dt
/// (or -h3(t)/t at mu_0); slower, kept as an independent cross-check.
/// The t -> 1 range is cut at 1 - e^{-35}, which is negligible for s <= 0.75.
inline double csmu_nested(const ProblemParams& p, const QuadSpec& q = {}) {
  const auto tp = tau_pair(p);
  auto integrand = [&](double t) {
    if (tp.degenerate) return -h_eval({HKind::h3}, t, p, q) / t;
    return (h_eval({HKind::h2}, t, p, q) - h_eval({HKind::h1}, t, p, q)) / t;
  };
  // x = -ln(1 - t) stretches the t -> 1 end where h grows like (1-t)^{1-2s}
  auto in_x = [&](double x) {
    const double t = -std::expm1(-x);
    return integrand(t) * std::exp(-x);
  };
  const auto& gl = GaussRule<8>::get();
  double acc = 0.0;
  // t in (0, 1/2] as Y = ln t; h(e^Y) decays like e^{(N + min(tau_-, 0)) Y}
  auto in_y = [&](double Y) {
    const double t = std::exp(Y);
    return t > 0.0 ? integrand(t) * t : 0.0;
  };
  const double decay = p.dim() + std::min(tp.tau_minus, 0.0);
  const double y_floor = std::max(std::log(0.5) - 40.0 / decay, -700.0);
  for (const auto& pan : graded_panels(y_floor, std::log(0.5), {}, {}, 1.0, 1.0, 0.0)) acc += gl.integrate(pan.a, pan.b, in_y);
  // t in [1/2, 1) as x = -ln(1 - t)
  for (const auto& pan : graded_panels(std::log(2.0), 35.0, {}, {}, 1.0, 1.0, 0.0)) acc += gl.integrate(pan.a, pan.b, in_x);
  return cns(p) * omega_sphere(p.N()) * acc;
}

}  // namespace hardyfrac
