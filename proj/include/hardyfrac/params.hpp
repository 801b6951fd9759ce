#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace hardyfrac {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (e.g. tau outside (-N, 2s)).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Evaluation at a pole of the Gamma function.
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Adaptive quadrature ran out of depth before reaching its tolerance.
class QuadratureError : public Error {
public:
  using Error::Error;
};

/// Dense collocation system is singular or its residual is out of budget.
class SolverError : public Error {
public:
  using Error::Error;
};

namespace detail {
inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}
}  // namespace detail

/// The (N, s, mu) triple every computation is keyed on.
///
/// N is restricted to [2, 10] and s to [0.05, 0.95]; outside this box the
/// radial quadratures lose accuracy, so construction rejects it.
class ProblemParams {
public:
  static constexpr int kMinDim = 2;
  static constexpr int kMaxDim = 10;
  static constexpr double kMinOrder = 0.05;
  static constexpr double kMaxOrder = 0.95;

  ProblemParams(int N, double s, double mu = 0.0) : N_(N), s_(s), mu_(mu) {
    if (N < kMinDim || N > kMaxDim)
      throw PreconditionError("dimension N must lie in [2, 10], got " + std::to_string(N));
    if (!(s >= kMinOrder && s <= kMaxOrder))
      throw PreconditionError("order s must lie in [0.05, 0.95], got " + std::to_string(s));
    if (!std::isfinite(mu)) throw PreconditionError("Hardy coefficient mu must be finite");
  }

  [[nodiscard]] int N() const noexcept { return N_; }
  [[nodiscard]] double s() const noexcept { return s_; }
  [[nodiscard]] double mu() const noexcept { return mu_; }
  [[nodiscard]] double dim() const noexcept { return static_cast<double>(N_); }

  /// Same (N, s) with a different Hardy coefficient.
  [[nodiscard]] ProblemParams with_mu(double mu) const { return {N_, s_, mu}; }

  /// Midpoint (2s - N)/2 of the exponent interval.
  [[nodiscard]] double tau_mid() const noexcept { return (2.0 * s_ - N_) / 2.0; }

  friend bool operator==(const ProblemParams&, const ProblemParams&) = default;

private:
  int N_;
  double s_;
  double mu_;
};

/// Tolerances and limits shared by the principal-value and nested quadratures.
struct QuadSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_depth = 40;          // graded refinement levels toward a singular point
  double trunc_radius = 1e4;   // outer truncation for functions without known tails
  int extrap_order = 1;        // correction terms in r -> 0 limit fits

  void validate() const {
    detail::require(rel_tol >= 1e-12, "QuadSpec.rel_tol must be >= 1e-12");
    detail::require(abs_tol >= 0.0, "QuadSpec.abs_tol must be >= 0");
    detail::require(max_depth >= 4 && max_depth <= 40, "QuadSpec.max_depth must lie in [4, 40]");
    detail::require(trunc_radius >= 10.0, "QuadSpec.trunc_radius must be >= 10");
    detail::require(extrap_order >= 1 && extrap_order <= 3, "QuadSpec.extrap_order must lie in [1, 3]");
  }
};

}  // namespace hardyfrac
