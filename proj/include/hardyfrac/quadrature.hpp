#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "hardyfrac/parallel.hpp"
#include "hardyfrac/params.hpp"

namespace hardyfrac {

/// Full Gauss-Legendre rule on [-1, 1] built from Boost's half tables.
template <unsigned Points>
struct GaussRule {
  std::array<double, Points> x{};
  std::array<double, Points> w{};

  GaussRule() {
    using G = boost::math::quadrature::gauss<double, Points>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    unsigned k = 0;
    // negative half first so nodes come out increasing
    for (std::size_t i = ab.size(); i-- > 0;) {
      if (ab[i] == 0.0) continue;
      x[k] = -ab[i];
      w[k] = wt[i];
      ++k;
    }
    for (std::size_t i = 0; i < ab.size(); ++i) {
      x[k] = ab[i];
      w[k] = wt[i];
      ++k;
    }
  }

  static const GaussRule& get() {
    static const GaussRule rule;
    return rule;
  }

  /// Calls f(node, weight) for the rule mapped to [a, b].
  template <class F>
  void for_each(double a, double b, F&& f) const {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    for (unsigned i = 0; i < Points; ++i) f(c + h * x[i], h * w[i]);
  }

  template <class F>
  double integrate(double a, double b, F&& f) const {
    double acc = 0.0;
    for_each(a, b, [&](double t, double wt) { acc += wt * f(t); });
    return acc;
  }
};

struct Panel {
  double a;
  double b;
};

/// Splits [a, b] at the given cut points (those strictly inside).
inline std::vector<double> split_points(double a, double b, std::vector<double> cuts) {
  std::vector<double> pts{a};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts)
    if (c > a && c < b && c - pts.back() > 0.0) pts.push_back(c);
  pts.push_back(b);
  return pts;
}

/// Panels on [a, b] refined geometrically toward `targets`.
///
/// A panel is accepted once its width is at most `max_width` and at most
/// `ratio` times its distance to the nearest target, or once it is narrower
/// than `min_width`. Panels come out in increasing order.
inline std::vector<Panel> graded_panels(double a, double b, const std::vector<double>& cuts,
                                        const std::vector<double>& targets, double max_width,
                                        double ratio, double min_width) {
  std::vector<Panel> out;
  const auto pts = split_points(a, b, cuts);
  auto dist = [&](double lo, double hi) {
    double d = std::numeric_limits<double>::infinity();
    for (double t : targets) {
      if (t >= lo && t <= hi) return 0.0;
      d = std::min(d, t < lo ? lo - t : t - hi);
    }
    return d;
  };
  std::vector<Panel> stack;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    stack.push_back({pts[i], pts[i + 1]});
    while (!stack.empty()) {
      const Panel p = stack.back();
      stack.pop_back();
      const double w = p.b - p.a;
      const bool small = w <= min_width;
      if (small || (w <= max_width && w <= ratio * dist(p.a, p.b))) {
        out.push_back(p);
        continue;
      }
      const double m = 0.5 * (p.a + p.b);
      stack.push_back({m, p.b});
      stack.push_back({p.a, m});
    }
  }
  return out;
}

/// 8-point Gauss-Legendre over graded panels; see graded_panels.
template <class F>
double integrate_graded(F&& f, double a, double b, const std::vector<double>& cuts,
                        const std::vector<double>& targets, double max_width, double min_width) {
  const auto& gl = GaussRule<8>::get();
  double acc = 0.0;
  for (const auto& p : graded_panels(a, b, cuts, targets, max_width, 1.0, min_width)) acc += gl.integrate(p.a, p.b, f);
  return acc;
}

namespace detail {

/// Gauss nodes and weights for int g(r) r^{N-1} dr over ln r in [ln r_lo, ln r_hi];
/// the weights include the r^N Jacobian. Panels are split and graded at the cuts.
struct RadialNodes {
  std::vector<double> r;
  std::vector<double> w;
};

inline RadialNodes radial_nodes(double N, double r_lo, double r_hi, const std::vector<double>& cuts, double width) {
  std::vector<double> tc;
  for (double c : cuts)
    if (c > 0.0) tc.push_back(std::log(c));
  const auto& gl = GaussRule<8>::get();
  RadialNodes out;
  for (const auto& pan : graded_panels(std::log(r_lo), std::log(r_hi), tc, tc, width, 1.0, 1e-9)) {
    gl.for_each(pan.a, pan.b, [&](double t, double w) {
      const double r = std::exp(t);
      out.r.push_back(r);
      out.w.push_back(w * std::pow(r, N));
    });
  }
  return out;
}

struct RadialIntegral {
  double value = 0.0;
  double magnitude = 0.0;  // same integral of |g|
  double tail = 0.0;       // extrapolated piece below r_lo
  std::size_t evaluations = 0;
};

// int g(r) r^{N-1} dr on radial_nodes; g is evaluated in parallel. Below r_lo,
// g is extended by the power law fitted to g(r_lo), g(2 r_lo).
template <class G>
RadialIntegral radial_integral(G&& g, double N, double r_lo, double r_hi, const std::vector<double>& cuts,
                               double width) {
  const RadialNodes nodes = radial_nodes(N, r_lo, r_hi, cuts, width);
  std::vector<double> vals(nodes.r.size());
  parallel_for(nodes.r.size(), [&](std::size_t i) { vals[i] = g(nodes.r[i]); });
  RadialIntegral acc;
  acc.evaluations = nodes.r.size() + 2;
  for (std::size_t i = 0; i < nodes.r.size(); ++i) {
    const double v = nodes.w[i] * vals[i];
    acc.value += v;
    acc.magnitude += std::abs(v);
  }
  const double g1 = g(r_lo);
  const double g2 = g(2.0 * r_lo);
  if (g1 != 0.0 && g2 / g1 > 0.0) {
    const double p = std::log(g2 / g1) / std::numbers::ln2;
    if (p + N > 0.0) {
      const double tail = g1 * std::pow(r_lo, N) / (p + N);
      acc.tail = tail;
      acc.value += tail;
      acc.magnitude += std::abs(tail);
    }
  }
  return acc;
}

}  // namespace detail

}  // namespace hardyfrac
