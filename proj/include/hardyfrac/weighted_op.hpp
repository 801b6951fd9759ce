#pragma once

// The Gamma_mu-weighted operator
//   (-Delta)^s_{Gamma_mu} xi(x) = C PV int (xi(x) - xi(z)) Gamma_mu(z) |x - z|^{-N-2s} dz
// on radial C^2 bumps, with the Lambda_mu envelope check and the adjoint identity.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hardyfrac/exponents.hpp"
#include "hardyfrac/params.hpp"
#include "hardyfrac/quadrature.hpp"
#include "hardyfrac/radial_function.hpp"
#include "hardyfrac/radial_kernel.hpp"

namespace hardyfrac {

/// One C^2 bump: amplitude * (1 - q^2)^3 on |q| < 1, with
/// q = r/R (plateau, centered at the origin) or q = (r - center)/R (annulus).
struct Bump {
  enum class Kind { plateau, annulus };
  Kind kind = Kind::plateau;
  double amplitude = 1.0;
  double R = 0.25;
  double center = 0.0;

  [[nodiscard]] double lo() const { return kind == Kind::plateau ? 0.0 : center - R; }
  [[nodiscard]] double hi() const { return kind == Kind::plateau ? R : center + R; }

  [[nodiscard]] RadialSample sample(double r) const {
    const double q = kind == Kind::plateau ? r / R : (r - center) / R;
    if (std::abs(q) >= 1.0) return {};
    const double g = 1.0 - q * q;
    // d/dq (1-q^2)^3 = -6q(1-q^2)^2, d2/dq2 = -6(1-q^2)^2 + 24 q^2 (1-q^2)
    const double v = g * g * g;
    const double dq = -6.0 * q * g * g;
    const double dqq = -6.0 * g * g + 24.0 * q * q * g;
    return {amplitude * v, amplitude * dq / R, amplitude * dqq / (R * R)};
  }
};

/// Radial C^2_c test function: a finite sum of bumps.
class TestFunction {
public:
  TestFunction() = default;
  explicit TestFunction(std::vector<Bump> parts) : parts_(std::move(parts)) {
    for (const auto& b : parts_) {
      detail::require(b.R > 0.0, "TestFunction: bump radius must be positive");
      if (b.kind == Bump::Kind::annulus)
        detail::require(b.center - b.R > 0.0, "TestFunction: annulus must stay away from the origin");
    }
  }

  /// amplitude * (1 - (r/R)^2)^3 for r < R.
  static TestFunction plateau(double R = 0.25, double amplitude = 1.0) {
    return TestFunction({{Bump::Kind::plateau, amplitude, R, 0.0}});
  }

  /// amplitude * (1 - ((r - center)/half_width)^2)^3; vanishes near the origin.
  static TestFunction annulus(double center, double half_width, double amplitude = 1.0) {
    return TestFunction({{Bump::Kind::annulus, amplitude, half_width, center}});
  }

  [[nodiscard]] const std::vector<Bump>& parts() const noexcept { return parts_; }
  [[nodiscard]] bool empty() const noexcept { return parts_.empty(); }

  [[nodiscard]] RadialSample sample(double r) const {
    RadialSample acc;
    for (const auto& b : parts_) {
      const auto v = b.sample(r);
      acc.v += v.v;
      acc.d1 += v.d1;
      acc.d2 += v.d2;
    }
    return acc;
  }
  [[nodiscard]] double operator()(double r) const { return sample(r).v; }

  [[nodiscard]] double at_origin() const {
    double v = 0.0;
    for (const auto& b : parts_)
      if (b.kind == Bump::Kind::plateau) v += b.amplitude;
    return v;
  }

  [[nodiscard]] double support_radius() const {
    double R = 0.0;
    for (const auto& b : parts_) R = std::max(R, b.hi());
    return R;
  }

  /// x -> xi(lambda x).
  [[nodiscard]] TestFunction scaled(double lambda) const {
    detail::require(lambda > 0.0, "TestFunction::scaled: factor must be positive");
    auto parts = parts_;
    for (auto& b : parts) {
      b.R /= lambda;
      b.center /= lambda;
    }
    return TestFunction(parts);
  }

  [[nodiscard]] TestFunction operator+(const TestFunction& o) const {
    auto parts = parts_;
    parts.insert(parts.end(), o.parts_.begin(), o.parts_.end());
    return TestFunction(parts);
  }

  [[nodiscard]] TestFunction operator*(double a) const {
    auto parts = parts_;
    for (auto& b : parts) b.amplitude *= a;
    return TestFunction(parts);
  }

  /// r^weight_tau * xi(r) as a RadialFunction with exact inner power terms.
  [[nodiscard]] RadialFunction to_radial(double weight_tau = 0.0) const {
    if (parts_.empty()) return RadialFunction::zero();
    FunctionShape sh;
    double inner_cut = std::numeric_limits<double>::infinity();
    std::vector<PowerTerm> inner;
    for (const auto& b : parts_) {
      sh.breakpoints.push_back(b.hi());
      if (b.kind == Bump::Kind::annulus) sh.breakpoints.push_back(b.lo());
      inner_cut = std::min(inner_cut, b.kind == Bump::Kind::plateau ? b.R : b.lo());
      if (b.kind == Bump::Kind::plateau) {
        const double a = b.amplitude;
        const double R2 = b.R * b.R;
        inner.push_back({a, weight_tau, 0});
        inner.push_back({-3.0 * a / R2, weight_tau + 2.0, 0});
        inner.push_back({3.0 * a / (R2 * R2), weight_tau + 4.0, 0});
        inner.push_back({-a / (R2 * R2 * R2), weight_tau + 6.0, 0});
      }
    }
    sh.inner_cut = inner_cut;
    sh.outer_cut = support_radius();
    auto f = [xi = *this, weight_tau](double r) {
      const RadialSample v = xi.sample(r);
      if (weight_tau == 0.0) return v;
      const RadialSample w = PowerTerm{1.0, weight_tau, 0}.sample(r);
      return RadialSample{v.v * w.v, v.d1 * w.v + v.v * w.d1, v.d2 * w.v + 2.0 * v.d1 * w.d1 + v.v * w.d2};
    };
    return {f, std::move(sh), std::move(inner), {}};
  }

private:
  std::vector<Bump> parts_;
};

/// (-Delta)^s_{Gamma_mu} xi at |x| = r.
inline double weighted_frac_lap(const TestFunction& xi, double r, const RadialOperator& op, const QuadSpec& q = {}) {
  detail::require(r > 0.0, "weighted_frac_lap: r must be positive");
  if (xi.empty()) return 0.0;
  return op.weighted_pv(xi.to_radial(), r, op.exponents().tau_plus, q);
}

inline double weighted_frac_lap(const TestFunction& xi, double r, const ProblemParams& p, const QuadSpec& q = {}) {
  q.validate();
  return weighted_frac_lap(xi, r, RadialOperator(p), q);
}

/// c0* = max over the grid of |(-Delta)^s_{Gamma_mu} xi(r)| / min{Lambda_mu(r), r^{-N-2s}}.
inline double lambda_bound_check(const TestFunction& xi, const ProblemParams& p, const std::vector<double>& r_grid,
                                 const QuadSpec& q = {}) {
  q.validate();
  const RadialOperator op(p);
  const double tp = op.exponents().tau_plus;
  double c = 0.0;
  for (double r : r_grid) {
    detail::require(r > 0.0 && std::isfinite(r), "lambda_bound_check: radii must be positive and finite");
    const double env = std::min(lambda_mu(r, tp, p.s()), std::pow(r, -p.dim() - 2.0 * p.s()));
    c = std::max(c, std::abs(weighted_frac_lap(xi, r, op, q)) / env);
  }
  return c;
}

struct AdjointReport {
  double lhs = 0.0;  // int xi L^s_mu u dgamma_mu
  double rhs = 0.0;  // int u (-Delta)^s_{Gamma_mu} xi dx
  double residual = 0.0;
  double rel = 0.0;  // residual over the larger of the two absolute-value integrals
};

/// Compares int xi L^s_mu u dgamma_mu with int u (-Delta)^s_{Gamma_mu} xi dx.
///
/// u must be bounded near the origin; the right side is integrated out to
/// 1e3 times the support of xi plus the r^{-N-2s} far-field asymptote.
inline AdjointReport adjoint_identity_check(const TestFunction& xi, const RadialFunction& u, const ProblemParams& p,
                                            const QuadSpec& q = {}) {
  q.validate();
  AdjointReport rep;
  if (xi.empty()) return rep;
  const RadialOperator op(p);
  const double tp = op.exponents().tau_plus;
  const double N = p.dim();
  const double s = p.s();
  const double omega = omega_sphere(p.N());
  const double R = xi.support_radius();
  std::vector<double> cuts;
  for (const auto& b : xi.parts()) {
    cuts.push_back(b.hi());
    if (b.lo() > 0.0) cuts.push_back(b.lo());
  }
  const double r_lo = 1e-10 * R;

  const auto lhs = detail::radial_integral(
      [&](double r) { return xi(r) * op.hardy(u, r, q) * std::pow(r, tp); }, N, r_lo, R, cuts, 0.5);

  const RadialFunction xr = xi.to_radial();
  const double r_far = 1e3 * R;
  auto integrand = [&](double r) { return u(r) * op.weighted_pv(xr, r, tp, q); };
  auto rhs = detail::radial_integral(integrand, N, r_lo, r_far, cuts, 0.5);
  // far field: (-Delta)_Gamma xi ~ -C M r^{-N-2s}, M = int xi Gamma dz; u taken constant there
  const double M =
      omega * detail::radial_integral([&](double r) { return xi(r) * std::pow(r, tp); }, N, r_lo, R, cuts, 0.5).value;
  const double far = -op.cns_value() * M * u(r_far) * std::pow(r_far, -2.0 * s) / (2.0 * s);
  rhs.value += far;
  rhs.magnitude += std::abs(far);
  rep.lhs = omega * lhs.value;
  rep.rhs = omega * rhs.value;
  rep.residual = std::abs(rep.lhs - rep.rhs);
  rep.rel = rep.residual / (omega * std::max(lhs.magnitude, rhs.magnitude));
  return rep;
}

}  // namespace hardyfrac
