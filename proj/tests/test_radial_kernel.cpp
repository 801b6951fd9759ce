#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "golden.hpp"
#include "hardyfrac/radial_kernel.hpp"

using namespace hardyfrac;

namespace {

const std::vector<ProblemParams> kPairs = {ProblemParams(2, 0.5), ProblemParams(3, 0.5), ProblemParams(3, 0.75),
                                           ProblemParams(2, 0.25)};

double scaled_residual(const RadialOperator& op, const RadialFunction& u, double r, double tau) {
  return std::abs(op.hardy(u, r)) * std::pow(r, 2.0 * op.params().s() - tau);
}

}  // namespace

TEST(SphereKernel, SymmetryAndHomogeneity) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> lr(std::log(0.01), std::log(10.0));
  for (const auto& p : kPairs) {
    for (int i = 0; i < 20; ++i) {
      const double r = std::exp(lr(rng));
      const double rho = std::exp(lr(rng));
      const double lam = std::exp(lr(rng));
      if (std::abs(r - rho) < 1e-3 * r) continue;
      const double k = sphere_kernel(r, rho, p);
      EXPECT_GT(k, 0.0);
      EXPECT_NEAR(sphere_kernel(rho, r, p), k, 1e-10 * k);
      EXPECT_NEAR(sphere_kernel(lam * r, lam * rho, p), std::pow(lam, -p.dim() - 2.0 * p.s()) * k, 1e-10 * std::pow(lam, -p.dim() - 2.0 * p.s()) * k);
    }
  }
}

TEST(SphereKernel, TrapezoidOracle) {
  const auto g = load_golden("oracles.json");
  for (const auto& rec : g.at("sphere_kernel")) {
    const ProblemParams p(rec.at("N").get<int>(), rec.at("s").get<double>());
    const double want = rec.at("value").get<double>();
    EXPECT_NEAR(sphere_kernel(rec.at("r").get<double>(), rec.at("rho").get<double>(), p), want, 1e-10 * want);
  }
}

TEST(FracLapPv, ConstantIsHarmonic) {
  for (const auto& p : kPairs)
    for (double r : {0.01, 0.3, 1.0, 7.0})
      EXPECT_NEAR(frac_lap_pv(RadialFunction::constant(1.0), r, p), 0.0,
                  1e-10 * std::max(1.0, std::pow(r, -2.0 * p.s())));
}

TEST(FracLapPv, RieszPotentialIsHarmonicAwayFromOrigin) {
  for (const auto& p : kPairs) {
    const auto u = RadialFunction::power(1.0, 2.0 * p.s() - p.dim());
    for (double r : {0.1, 1.0, 3.0}) {
      const double scale = std::pow(r, -p.dim());
      EXPECT_LE(std::abs(frac_lap_pv(u, r, p)), 1e-8 * scale) << r;
    }
  }
}

TEST(FracLapPv, PowerAtUnitRadius) {
  for (const auto& p : kPairs) {
    const double tau = p.s() - p.dim() / 4.0;
    const double want = c_s(tau, p);
    EXPECT_NEAR(frac_lap_pv(RadialFunction::power(1.0, tau), 1.0, p), want, 1e-6 * std::abs(want) + 1e-10);
  }
}

TEST(FracLapPv, RandomPowersMatchSymbol) {
  std::mt19937_64 rng(7);
  for (const auto& p : kPairs) {
    std::uniform_real_distribution<double> tau_d(-p.dim() + 0.1, 2.0 * p.s() - 0.1);
    std::uniform_real_distribution<double> lr(std::log(0.05), std::log(20.0));
    for (int i = 0; i < 12; ++i) {
      const double tau = tau_d(rng);
      const double r = std::exp(lr(rng));
      const double want = c_s(tau, p) * std::pow(r, tau - 2.0 * p.s());
      EXPECT_LE(std::abs(frac_lap_pv(RadialFunction::power(1.0, tau), r, p) - want), 1e-6 * std::abs(want) + 1e-10)
          << tau << " " << r;
    }
  }
}

TEST(HardyApply, ZeroMuIsFracLap) {
  const ProblemParams p(3, 0.5, 0.0);
  const auto u = RadialFunction::power(2.0, -0.7);
  for (double r : {0.2, 1.5}) EXPECT_EQ(hardy_apply(u, r, p), frac_lap_pv(u, r, p));
}

TEST(HardyApply, FundamentalSolutionsResidual) {
  for (const auto& base : kPairs) {
    for (double mu : {mu0(base), mu0(base) / 2.0, 0.0, 1.0}) {
      const RadialOperator op(base.with_mu(mu));
      const auto& t = op.exponents();
      for (int i = 0; i < 12; ++i) {
        const double r = 0.05 * std::pow(60.0, i / 11.0);
        EXPECT_LE(scaled_residual(op, op.phi(), r, t.tau_minus), 1e-4) << mu << " " << r;
        EXPECT_LE(scaled_residual(op, op.gamma(), r, t.tau_plus), 1e-4) << mu << " " << r;
      }
    }
  }
}

TEST(Homogeneous, PointValues) {
  const ProblemParams p(3, 0.5);
  EXPECT_EQ(phi_mu(1.0, p.with_mu(mu0(p))), 0.0);
  for (double mu : {mu0(p), 0.0, 2.0}) EXPECT_EQ(gamma_mu(1.0, p.with_mu(mu)), 1.0);
  EXPECT_NEAR(phi_mu(0.3, p), std::pow(0.3, 2.0 * 0.5 - 3.0), 1e-14);
  EXPECT_THROW(phi_mu(0.0, p), PreconditionError);
}

TEST(LambdaMu, ThreeBranches) {
  EXPECT_EQ(lambda_mu(0.01, 0.5, 0.5), 1.0);          // tau_+ > 2s - 1
  EXPECT_EQ(lambda_mu(2.0, 0.0, 0.5), 1.0);           // borderline, r >= 1
  EXPECT_NEAR(lambda_mu(0.5, 0.0, 0.5), 1.0 + std::log(2.0), 1e-15);
  EXPECT_NEAR(lambda_mu(0.5, -0.5, 0.5), std::pow(0.5, 1.0 - 1.0 - 0.5), 1e-15);
  const ProblemParams p(3, 0.75, 1.0);  // tau_+ > 0.5
  EXPECT_EQ(lambda_mu(0.1, p), 1.0);
}

TEST(Gagliardo, BoundedAboveCritical) {
  const ProblemParams base(3, 0.5);
  const auto p = base.with_mu(mu0(base) + 0.3);
  std::vector<double> eps;
  for (int k = 2; k <= 40; k += 2) eps.push_back(std::pow(2.0, -k));
  const auto v = gagliardo_seminorm_probe(p, eps);
  for (std::size_t i = 1; i < v.size(); ++i) EXPECT_GE(v[i], v[i - 1]);
  // successive increments shrink geometrically
  const double d1 = v[9] - v[8];
  const double d2 = v.back() - v[v.size() - 2];
  EXPECT_LT(d2, 1e-3 * d1);
  EXPECT_LT(v.back() - v[v.size() / 2], 1e-3 * v.back());
}

TEST(Gagliardo, LogDivergentAtCritical) {
  for (const auto& base : {ProblemParams(3, 0.5), ProblemParams(2, 0.5)}) {
    const auto p = base.with_mu(mu0(base));
    std::vector<double> eps;
    for (int k = 4; k <= 40; k += 4) eps.push_back(std::pow(2.0, -k));
    const auto v = gagliardo_seminorm_probe(p, eps);
    for (std::size_t i = 1; i < v.size(); ++i) EXPECT_GT(v[i], v[i - 1]);
    const double slope = (v.back() - v[v.size() - 4]) / (-std::log(eps.back()) + std::log(eps[eps.size() - 4]));
    const double want = gagliardo_log_slope(p);
    EXPECT_GT(want, 0.0);
    EXPECT_NEAR(slope, want, 0.2 * want);
  }
}
