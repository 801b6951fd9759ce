#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hardyfrac/exponents.hpp"

using namespace hardyfrac;

namespace {

const std::vector<ProblemParams> kPairs = {ProblemParams(2, 0.5), ProblemParams(3, 0.5), ProblemParams(3, 0.75),
                                           ProblemParams(2, 0.25), ProblemParams(5, 0.9)};

std::vector<double> mu_grid(const ProblemParams& p, int n = 30, double hi = 20.0) {
  std::vector<double> out;
  const double m0 = mu0(p);
  for (int i = 0; i < n; ++i) out.push_back(m0 + (hi - m0) * i / (n - 1));
  return out;
}

}  // namespace

TEST(TauPair, ZeroHardyCoefficient) {
  for (const auto& p : kPairs) {
    const auto t = tau_pair(p.with_mu(0.0));
    EXPECT_NEAR(t.tau_minus, 2.0 * p.s() - p.dim(), 1e-12);
    EXPECT_NEAR(t.tau_plus, 0.0, 1e-12);
    EXPECT_FALSE(t.degenerate);
  }
}

TEST(TauPair, CriticalCollapse) {
  for (const auto& p : kPairs) {
    const auto t = tau_pair(p.with_mu(mu0(p)));
    EXPECT_TRUE(t.degenerate);
    EXPECT_EQ(t.tau_minus, p.tau_mid());
    EXPECT_EQ(t.tau_plus, p.tau_mid());
  }
}

TEST(TauPair, RootsSubstituteBack) {
  const ProblemParams p(3, 0.5, 1.0);
  const auto t = tau_pair(p);
  EXPECT_LE(std::abs(c_s(t.tau_minus, p) + 1.0), 1e-10);
  EXPECT_LE(std::abs(c_s(t.tau_plus, p) + 1.0), 1e-10);
  EXPECT_GT(t.tau_minus, -3.0);
  EXPECT_LT(t.tau_plus, 1.0);
}

TEST(TauPair, BelowMu0Rejected) {
  const ProblemParams p(3, 0.5);
  EXPECT_THROW(tau_pair(p.with_mu(mu0(p) - 1e-3)), PreconditionError);
}

TEST(TauPair, SumRuleAndRanges) {
  for (const auto& p : kPairs)
    for (double mu : mu_grid(p)) {
      const auto t = tau_pair(p.with_mu(mu));
      EXPECT_LE(std::abs(t.tau_minus + t.tau_plus - (2.0 * p.s() - p.dim())), 1e-10) << mu;
      EXPECT_GT(t.tau_minus, -p.dim());
      EXPECT_LE(t.tau_minus, p.tau_mid());
      EXPECT_GE(t.tau_plus, p.tau_mid());
      EXPECT_LT(t.tau_plus, 2.0 * p.s());
    }
}

TEST(TauPair, StrictMonotonicityOnThirtyPoints) {
  for (const auto& p : kPairs) {
    const auto grid = mu_grid(p);
    auto prev = tau_pair(p.with_mu(grid[0]));
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const auto t = tau_pair(p.with_mu(grid[i]));
      EXPECT_LT(t.tau_minus, prev.tau_minus) << grid[i];
      EXPECT_GT(t.tau_plus, prev.tau_plus) << grid[i];
      prev = t;
    }
  }
}

TEST(TauPair, LargeMuLimits) {
  for (const auto& p : kPairs) {
    double prev_gap_lo = 1e9, prev_gap_hi = 1e9;
    for (int k = 1; k <= 4; ++k) {
      const auto t = tau_pair(p.with_mu(std::pow(10.0, k)));
      const double lo = t.tau_minus + p.dim();
      const double hi = 2.0 * p.s() - t.tau_plus;
      EXPECT_LT(lo, prev_gap_lo);
      EXPECT_LT(hi, prev_gap_hi);
      prev_gap_lo = lo;
      prev_gap_hi = hi;
    }
    EXPECT_LT(prev_gap_hi, 1e-2);
  }
}

TEST(TauPair, NearCriticalStaysOrdered) {
  const ProblemParams p(2, 0.5);
  for (double d : {1e-9, 1e-8, 1e-7, 1e-6, 1e-5}) {
    const auto t = tau_pair(p.with_mu(mu0(p) + d));
    EXPECT_FALSE(t.degenerate);
    EXPECT_LT(t.tau_minus, t.tau_plus);
    EXPECT_LE(std::abs(t.tau_minus + t.tau_plus - (2.0 * p.s() - p.dim())), 1e-10);
  }
}

TEST(MuOfTau, RoundTrip) {
  for (const auto& p : kPairs) {
    EXPECT_EQ(mu_of_tau(0.0, p), 0.0);
    EXPECT_EQ(mu_of_tau(2.0 * p.s() - p.dim(), p), 0.0);
    EXPECT_NEAR(mu_of_tau(p.tau_mid(), p), mu0(p), 1e-12 * std::abs(mu0(p)));
    for (double mu : mu_grid(p, 12)) {
      if (mu <= mu0(p) + 1e-3) continue;
      const auto t = tau_pair(p.with_mu(mu));
      EXPECT_NEAR(mu_of_tau(t.tau_plus, p), mu, 1e-9 * std::max(1.0, std::abs(mu)));
      EXPECT_NEAR(mu_of_tau(t.tau_minus, p), mu, 1e-9 * std::max(1.0, std::abs(mu)));
      const auto back = tau_pair(p.with_mu(mu_of_tau(t.tau_plus, p)));
      EXPECT_NEAR(back.tau_plus, t.tau_plus, 1e-9);
    }
  }
}
