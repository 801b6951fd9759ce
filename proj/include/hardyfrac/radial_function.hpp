#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hardyfrac/params.hpp"
#include "hardyfrac/spline.hpp"

namespace hardyfrac {

/// coef * r^tau * (ln r)^log_power with log_power in {0, 1}.
struct PowerTerm {
  double coef = 0.0;
  double tau = 0.0;
  int log_power = 0;

  [[nodiscard]] RadialSample sample(double r) const {
    const double p = coef * std::pow(r, tau);
    if (log_power == 0) return {p, p * tau / r, p * tau * (tau - 1.0) / (r * r)};
    const double L = std::log(r);
    return {p * L, p * (tau * L + 1.0) / r, p * (tau * (tau - 1.0) * L + 2.0 * tau - 1.0) / (r * r)};
  }
};

/// Where a radial function stops being smooth and where its power-series
/// descriptions take over.
struct FunctionShape {
  std::vector<double> breakpoints;      // jumps in a low derivative; quadrature panels split here
  std::vector<double> singular_points;  // non-smooth points that need graded refinement
  double inner_cut = 0.0;               // inner terms exact for rho <= inner_cut
  double outer_cut = std::numeric_limits<double>::infinity();  // outer terms exact for rho >= outer_cut
};

/// Optional analytic singular part k r^tau, or k r^tau (-ln r) with log_flag.
struct SingularPart {
  double k = 0.0;
  double tau = 0.0;
  bool log_flag = false;
};

/// Behavior beyond the last grid radius of sampled data.
struct Exterior {
  enum class Kind { zero, power_extend, analytic };
  Kind kind = Kind::zero;
  double tau = 0.0;
  std::function<RadialSample(double)> handle;

  static Exterior zero() { return {}; }
  static Exterior power(double tau) { return {Kind::power_extend, tau, {}}; }
  static Exterior analytic(std::function<RadialSample(double)> f) { return {Kind::analytic, 0.0, std::move(f)}; }
};

/// A radial function on (0, inf) with value and first two radial derivatives,
/// plus exact power-series descriptions near 0 and near infinity.
///
/// An empty outer term list means the function vanishes for rho >= outer_cut.
class RadialFunction {
public:
  using Evaluator = std::function<RadialSample(double)>;

  RadialFunction(Evaluator f, FunctionShape shape, std::vector<PowerTerm> inner, std::vector<PowerTerm> outer)
      : f_(std::move(f)), shape_(std::move(shape)), inner_(std::move(inner)), outer_(std::move(outer)) {
    detail::require(shape_.inner_cut > 0.0, "RadialFunction: inner_cut must be positive");
    detail::require(std::isfinite(shape_.outer_cut) && shape_.outer_cut > 0.0,
                    "RadialFunction: outer_cut must be finite and positive");
  }

  static RadialFunction zero() {
    return {[](double) { return RadialSample{}; }, {{}, {}, 1.0, 1.0}, {}, {}};
  }

  /// coef * r^tau (ln r)^log_power on all of (0, inf).
  static RadialFunction power(double coef, double tau, int log_power = 0) {
    const PowerTerm t{coef, tau, log_power};
    return {[t](double r) { return t.sample(r); }, {{}, {}, 1.0, 1.0}, {t}, {t}};
  }

  static RadialFunction constant(double c) { return power(c, 0.0); }

  /// Cubic spline in ln r through (grid, values), constant below grid[0],
  /// plus an analytic singular part and the given exterior behavior.
  static RadialFunction from_samples(const std::vector<double>& grid, const std::vector<double>& values,
                                     std::optional<SingularPart> singular, Exterior exterior,
                                     double trunc_radius = 1e4) {
    detail::require(grid.size() >= 16, "from_samples: grid needs at least 16 radii");
    detail::require(grid.size() == values.size(), "from_samples: grid and values differ in length");
    auto basis = std::make_shared<const LogSplineBasis>(grid);
    auto spline = std::make_shared<const LogCubicSpline>(basis, Eigen::Map<const Eigen::VectorXd>(
                                                                    values.data(), static_cast<Eigen::Index>(values.size())));
    const double R = grid.back();
    FunctionShape shape;
    shape.breakpoints = grid;
    shape.inner_cut = grid.front();
    std::vector<PowerTerm> inner{{values.front(), 0.0, 0}};
    std::optional<PowerTerm> sing;
    if (singular) {
      sing = singular->log_flag ? PowerTerm{-singular->k, singular->tau, 1} : PowerTerm{singular->k, singular->tau, 0};
      inner.push_back(*sing);
    }
    std::vector<PowerTerm> outer;
    Evaluator ext;
    switch (exterior.kind) {
      case Exterior::Kind::zero:
        shape.singular_points.push_back(R);
        shape.outer_cut = R;
        ext = [](double) { return RadialSample{}; };
        break;
      case Exterior::Kind::power_extend: {
        const double uR = (*spline)(R).v + (sing ? sing->sample(R).v : 0.0);
        const PowerTerm t{uR * std::pow(R, -exterior.tau), exterior.tau, 0};
        shape.singular_points.push_back(R);
        shape.outer_cut = R;
        outer.push_back(t);
        ext = [t](double r) { return t.sample(r); };
        break;
      }
      case Exterior::Kind::analytic: {
        detail::require(static_cast<bool>(exterior.handle), "from_samples: analytic exterior needs a handle");
        const double T = std::max(trunc_radius, 10.0 * R);
        const PowerTerm t{exterior.handle(T).v, 0.0, 0};
        shape.singular_points.push_back(R);
        shape.singular_points.push_back(T);
        shape.outer_cut = T;
        outer.push_back(t);
        ext = [h = exterior.handle, t, T](double r) { return r >= T ? t.sample(r) : h(r); };
        break;
      }
    }
    auto f = [spline, sing, ext, R](double r) {
      if (r > R) return ext(r);
      RadialSample v = (*spline)(r);
      if (sing) {
        const RadialSample w = sing->sample(r);
        v.v += w.v;
        v.d1 += w.d1;
        v.d2 += w.d2;
      }
      return v;
    };
    return {f, std::move(shape), std::move(inner), std::move(outer)};
  }

  [[nodiscard]] RadialSample sample(double r) const { return f_(r); }
  [[nodiscard]] double operator()(double r) const { return f_(r).v; }

  [[nodiscard]] const FunctionShape& shape() const noexcept { return shape_; }
  [[nodiscard]] const std::vector<PowerTerm>& inner_terms() const noexcept { return inner_; }
  [[nodiscard]] const std::vector<PowerTerm>& outer_terms() const noexcept { return outer_; }
  [[nodiscard]] const Evaluator& evaluator() const noexcept { return f_; }

  /// a * u
  friend RadialFunction operator*(double a, const RadialFunction& u) {
    auto inner = u.inner_;
    auto outer = u.outer_;
    for (auto& t : inner) t.coef *= a;
    for (auto& t : outer) t.coef *= a;
    auto f = [g = u.f_, a](double r) {
      RadialSample v = g(r);
      return RadialSample{a * v.v, a * v.d1, a * v.d2};
    };
    return {f, u.shape_, std::move(inner), std::move(outer)};
  }

  friend RadialFunction operator+(const RadialFunction& u, const RadialFunction& w) {
    FunctionShape sh;
    sh.breakpoints = u.shape_.breakpoints;
    sh.breakpoints.insert(sh.breakpoints.end(), w.shape_.breakpoints.begin(), w.shape_.breakpoints.end());
    sh.singular_points = u.shape_.singular_points;
    sh.singular_points.insert(sh.singular_points.end(), w.shape_.singular_points.begin(),
                              w.shape_.singular_points.end());
    sh.inner_cut = std::min(u.shape_.inner_cut, w.shape_.inner_cut);
    sh.outer_cut = std::max(u.shape_.outer_cut, w.shape_.outer_cut);
    auto inner = u.inner_;
    inner.insert(inner.end(), w.inner_.begin(), w.inner_.end());
    auto outer = u.outer_;
    outer.insert(outer.end(), w.outer_.begin(), w.outer_.end());
    auto f = [a = u.f_, b = w.f_](double r) {
      const RadialSample x = a(r);
      const RadialSample y = b(r);
      return RadialSample{x.v + y.v, x.d1 + y.d1, x.d2 + y.d2};
    };
    return {f, std::move(sh), std::move(inner), std::move(outer)};
  }

  friend RadialFunction operator-(const RadialFunction& u, const RadialFunction& w) { return u + (-1.0) * w; }

private:
  Evaluator f_;
  FunctionShape shape_;
  std::vector<PowerTerm> inner_;
  std::vector<PowerTerm> outer_;
};

}  // namespace hardyfrac
