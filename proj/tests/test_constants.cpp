#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hardyfrac/constants.hpp"

using namespace hardyfrac;

namespace {
const std::vector<ProblemParams> kPairs = {ProblemParams(2, 0.5), ProblemParams(3, 0.5), ProblemParams(3, 0.75),
                                           ProblemParams(2, 0.25)};
}

TEST(Csmu, MatchesDeltaConstantAtZeroMu) {
  for (const auto& p : kPairs) {
    const double c = csmu(p.with_mu(0.0));
    const double want = riesz_delta_const(p);
    EXPECT_NEAR(c, want, 5e-3 * want) << p.N() << " " << p.s();
  }
}

TEST(Csmu, PositiveAcrossRegimes) {
  for (const auto& p : kPairs)
    for (double mu : {mu0(p), mu0(p) / 2.0, 0.0, 1.0, 5.0}) EXPECT_GT(csmu(p.with_mu(mu)), 0.0) << mu;
}

TEST(Cs0, SameIntegralAsCsmuAtZero) {
  for (const auto& p : kPairs) {
    const double a = cs0(p.with_mu(0.7));
    const double b = csmu(p.with_mu(0.0));
    EXPECT_NEAR(a, b, 1e-8 * b);
  }
}

TEST(Csmu, NestedRouteAgrees) {
  for (const auto& p : {ProblemParams(2, 0.5), ProblemParams(3, 0.5)}) {
    for (double mu : {mu0(p), 0.0, 1.0}) {
      const auto q = p.with_mu(mu);
      const double a = csmu(q);
      const double b = csmu_nested(q);
      EXPECT_NEAR(a, b, 1e-6 * a) << mu;
    }
  }
}

TEST(Csmu, HalvingToleranceAgreement) {
  for (const auto& p : kPairs) {
    QuadSpec loose;
    loose.rel_tol = 1e-8;
    QuadSpec tight;
    tight.rel_tol = 1e-9;
    const double a = csmu(p.with_mu(0.3), loose);
    const double b = csmu(p.with_mu(0.3), tight);
    EXPECT_NEAR(a, b, 5.0 * loose.rel_tol * b);
  }
}

// c_{s,mu} is smooth on (mu0, inf): first differences shrink linearly with the step.
TEST(Csmu, ContinuousInMu) {
  for (const auto& p : kPairs) {
    for (double mu : {mu0(p) + 0.5, 0.0, 1.0, 3.0}) {
      const double c = csmu(p.with_mu(mu));
      const double d1 = std::abs(csmu(p.with_mu(mu + 0.02)) - c);
      const double d2 = std::abs(csmu(p.with_mu(mu + 0.01)) - c);
      EXPECT_GT(d1, 0.0) << mu;
      EXPECT_NEAR(d2 / d1, 0.5, 0.05) << mu;
      EXPECT_LT(d1, 0.1 * c) << mu;
    }
  }
}

// Phi_mu = (r^tau_- - r^tau_+) / (tau_+ - tau_-) tends to the log profile, so
// the constant vanishes at the rate tau_+ - tau_- as mu decreases to mu0.
TEST(Csmu, CriticalLimit) {
  for (const auto& p : kPairs) {
    const double c0 = csmu(p.with_mu(mu0(p)));
    double prev_err = 1e300;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      const auto q = p.with_mu(mu0(p) + eps);
      const auto t = tau_pair(q);
      const double err = std::abs(csmu(q) / (t.tau_plus - t.tau_minus) - c0);
      EXPECT_LT(err, prev_err) << eps;
      prev_err = err;
    }
    EXPECT_LT(prev_err, 2e-2 * c0);
  }
}

TEST(Csmu, IntegrandSignAboveCritical) {
  for (const auto& p : kPairs) {
    const auto t = tau_pair(p.with_mu(0.4));
    for (double r : {1e-6, 1e-3, 0.1, 0.5, 0.99}) EXPECT_GT(std::pow(r, t.tau_minus), std::pow(r, t.tau_plus));
  }
}

TEST(HEval, ZeroExponentVanishes) {
  const ProblemParams p(3, 0.5, 0.0);  // tau_+ = 0
  for (double t : {0.01, 0.3, 0.9}) EXPECT_EQ(h_eval({HKind::h2}, t, p), 0.0);
}

// Near the origin h_i(t) ~ omega (t^N / N - t^(N+tau) / (N+tau)); globally it
// stays within the same envelope.
TEST(HEval, SmallBallEnvelope) {
  const ProblemParams p(3, 0.5, 0.4);
  const auto tp = tau_pair(p);
  const double n = p.dim(), omega = omega_sphere(p.N());
  for (HKind kind : {HKind::h1, HKind::h2}) {
    const double tau = kind == HKind::h1 ? tp.tau_minus : tp.tau_plus;
    const auto envelope = [&](double t) { return std::pow(t, n) + std::pow(t, n + tau); };
    const auto predicted = [&](double t) {
      return omega * (std::pow(t, n) / n - std::pow(t, n + tau) / (n + tau)) / envelope(t);
    };
    double sup_pred = 0.0;
    for (double t : {1e-3, 3e-3, 1e-2}) {
      const double ratio = h_eval({kind}, t, p) / envelope(t);
      EXPECT_NEAR(ratio, predicted(t), 1e-2 * std::abs(predicted(t))) << t;
    }
    for (double t = 1e-3; t <= 0.5; t *= 1.5) sup_pred = std::max(sup_pred, std::abs(predicted(t)));
    for (double t : {1e-3, 1e-2, 0.1, 0.3, 0.5})
      EXPECT_LE(std::abs(h_eval({kind}, t, p)) / envelope(t), 1.05 * sup_pred) << t;
  }
}

TEST(HEval, LogGrowthAtHalfOrder) {
  const ProblemParams p(2, 0.5, 0.5);
  std::vector<double> ratios;
  for (double t : {0.9, 0.99, 0.999, 0.9999})
    ratios.push_back(std::abs(h_eval({HKind::h2}, t, p)) / std::abs(std::log(1.0 - t)));
  for (double r : ratios) {
    EXPECT_LT(r, 2.0 * ratios.front());
    EXPECT_GT(r, 0.0);
  }
}

TEST(HEval, DomainChecks) {
  const ProblemParams p(2, 0.5, 0.0);
  EXPECT_THROW(h_eval({HKind::h1}, 0.0, p), DomainError);
  EXPECT_THROW(h_eval({HKind::h1}, 1.0, p), DomainError);
  EXPECT_THROW(h_eval({HKind::h3}, 0.5, p), PreconditionError);
}
