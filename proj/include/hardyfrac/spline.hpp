#pragma once

// Cubic spline in t = ln r. Left end clamped (zero slope, constant extension
// below the first node), right end not-a-knot with cubic extrapolation.
// Second derivatives are a fixed linear map of the nodal values, M = S c,
// so the spline can be used both for data and as a collocation basis.

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "hardyfrac/params.hpp"

namespace hardyfrac {

struct RadialSample {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

class LogSplineBasis {
public:
  /// Coefficients of (c_k, c_{k+1}, M_k, M_{k+1}) for value and r-derivatives.
  struct Stencil {
    int k = 0;
    std::array<double, 4> v{};
    std::array<double, 4> d1{};
    std::array<double, 4> d2{};
  };

  explicit LogSplineBasis(std::vector<double> radii) : r_(std::move(radii)) {
    const auto n = r_.size();
    detail::require(n >= 4, "LogSplineBasis: need at least 4 nodes");
    t_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      detail::require(r_[i] > 0.0 && std::isfinite(r_[i]), "LogSplineBasis: radii must be positive");
      if (i > 0) detail::require(r_[i] > r_[i - 1], "LogSplineBasis: radii must increase");
      t_[i] = std::log(r_[i]);
    }
    build();
  }

  [[nodiscard]] std::size_t size() const noexcept { return r_.size(); }
  [[nodiscard]] const std::vector<double>& radii() const noexcept { return r_; }
  [[nodiscard]] const Eigen::MatrixXd& second_derivative_map() const noexcept { return S_; }

  [[nodiscard]] Stencil stencil(double r) const {
    Stencil st;
    const auto n = static_cast<int>(r_.size());
    if (r < r_.front()) {
      st.v = {1.0, 0.0, 0.0, 0.0};
      return st;
    }
    const double t = std::log(r);
    int k;
    if (r >= r_[n - 2]) {
      k = n - 2;
    } else {
      k = static_cast<int>(std::upper_bound(r_.begin(), r_.end(), r) - r_.begin()) - 1;
    }
    st.k = k;
    const double h = t_[k + 1] - t_[k];
    const double A = (t_[k + 1] - t) / h;
    const double B = 1.0 - A;
    const double h6 = h * h / 6.0;
    st.v = {A, B, (A * A * A - A) * h6, (B * B * B - B) * h6};
    const std::array<double, 4> st_t = {-1.0 / h, 1.0 / h, -(3.0 * A * A - 1.0) * h / 6.0,
                                        (3.0 * B * B - 1.0) * h / 6.0};
    const std::array<double, 4> st_tt = {0.0, 0.0, A, B};
    for (int j = 0; j < 4; ++j) {
      st.d1[j] = st_t[j] / r;
      st.d2[j] = (st_tt[j] - st_t[j]) / (r * r);
    }
    if (r == r_.front()) {
      // one-sided second derivatives 0 and M_0 / r_0^2; use their mean
      for (int j = 0; j < 4; ++j) st.d2[j] *= 0.5;
    }
    return st;
  }

private:
  void build() {
    const auto n = static_cast<Eigen::Index>(r_.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    const double h0 = t_[1] - t_[0];
    T(0, 0) = h0 / 3.0;
    T(0, 1) = h0 / 6.0;
    D(0, 0) = -1.0 / h0;
    D(0, 1) = 1.0 / h0;
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      const double hl = t_[i] - t_[i - 1];
      const double hr = t_[i + 1] - t_[i];
      T(i, i - 1) = hl / 6.0;
      T(i, i) = (hl + hr) / 3.0;
      T(i, i + 1) = hr / 6.0;
      D(i, i - 1) = 1.0 / hl;
      D(i, i) = -1.0 / hl - 1.0 / hr;
      D(i, i + 1) = 1.0 / hr;
    }
    const double ha = t_[n - 2] - t_[n - 3];
    const double hb = t_[n - 1] - t_[n - 2];
    T(n - 1, n - 3) = 1.0 / ha;
    T(n - 1, n - 2) = -1.0 / ha - 1.0 / hb;
    T(n - 1, n - 1) = 1.0 / hb;
    S_ = T.partialPivLu().solve(D);
  }

  std::vector<double> r_;
  std::vector<double> t_;
  Eigen::MatrixXd S_;
};

/// A spline with concrete nodal values.
class LogCubicSpline {
public:
  LogCubicSpline(std::shared_ptr<const LogSplineBasis> basis, Eigen::VectorXd values)
      : basis_(std::move(basis)), c_(std::move(values)) {
    detail::require(static_cast<std::size_t>(c_.size()) == basis_->size(),
                    "LogCubicSpline: value count must match node count");
    M_ = basis_->second_derivative_map() * c_;
  }

  [[nodiscard]] RadialSample operator()(double r) const {
    const auto st = basis_->stencil(r);
    const int k = st.k;
    const std::array<double, 4> x = {c_[k], k + 1 < c_.size() ? c_[k + 1] : 0.0, M_[k],
                                     k + 1 < M_.size() ? M_[k + 1] : 0.0};
    RadialSample out;
    for (int j = 0; j < 4; ++j) {
      out.v += st.v[j] * x[j];
      out.d1 += st.d1[j] * x[j];
      out.d2 += st.d2[j] * x[j];
    }
    return out;
  }

  [[nodiscard]] const LogSplineBasis& basis() const noexcept { return *basis_; }
  [[nodiscard]] const Eigen::VectorXd& values() const noexcept { return c_; }

private:
  std::shared_ptr<const LogSplineBasis> basis_;
  Eigen::VectorXd c_;
  Eigen::VectorXd M_;
};

}  // namespace hardyfrac
