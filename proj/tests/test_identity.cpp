#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hardyfrac/identity.hpp"
#include "hardyfrac/solver.hpp"

using namespace hardyfrac;

namespace {

std::vector<double> regimes(const ProblemParams& p) { return {mu0(p), mu0(p) / 2.0, 0.0, 1.0}; }

}  // namespace

TEST(WholeSpaceIdentity, AllRegimes) {
  for (const auto& base : {ProblemParams(2, 0.5), ProblemParams(3, 0.75)}) {
    for (double mu : regimes(base)) {
      const auto p = base.with_mu(mu);
      const auto rep = verify_theorem_b(TestFunction::plateau(), p);
      EXPECT_TRUE(rep.pass) << base.N() << " " << base.s() << " mu=" << mu << " rel=" << rep.rel_err;
      EXPECT_LE(rep.rel_err, mu == mu0(base) ? kTheoremBTolCritical : kTheoremBTol);
      EXPECT_GT(rep.budget.evaluations, 0u);
    }
  }
}

TEST(WholeSpaceIdentity, DeltaConstantAtZeroMu) {
  const ProblemParams p(2, 0.25, 0.0);
  const auto xi = TestFunction::plateau(0.3, 2.0);
  const auto rep = verify_theorem_b(xi, p);
  EXPECT_NEAR(rep.lhs / xi.at_origin(), riesz_delta_const(p), 1e-2 * riesz_delta_const(p));
}

TEST(WholeSpaceIdentity, VanishingCenterValue) {
  for (const auto& p : {ProblemParams(2, 0.5, 1.0), ProblemParams(3, 0.75, 0.0)}) {
    const auto rep = verify_theorem_b(TestFunction::annulus(0.3, 0.1), p);
    EXPECT_EQ(rep.rhs, 0.0);
    EXPECT_LE(std::abs(rep.lhs), 1e-4 * csmu(p));
    EXPECT_TRUE(rep.pass);
  }
}

TEST(WholeSpaceIdentity, EmptyTestFunction) {
  const auto rep = verify_theorem_b(TestFunction{}, ProblemParams(2, 0.5, 0.0));
  EXPECT_EQ(rep.lhs, 0.0);
  EXPECT_TRUE(rep.pass);
}

TEST(WholeSpaceIdentity, LinearInXi) {
  const ProblemParams p(2, 0.5, 0.5);
  const auto a = TestFunction::plateau(0.25);
  const auto b = TestFunction::annulus(0.4, 0.15);
  const double ca = 0.7, cb = -1.3;
  const auto ra = verify_theorem_b(a, p);
  const auto rb = verify_theorem_b(b, p);
  const auto rc = verify_theorem_b(a * ca + b * cb, p);
  const double da = ra.lhs - ra.rhs, db = rb.lhs - rb.rhs, dc = rc.lhs - rc.rhs;
  EXPECT_NEAR(dc, ca * da + cb * db, 1e-8 * std::abs(rc.rhs));
}

TEST(WholeSpaceIdentity, ScaleInvariant) {
  const ProblemParams p(3, 0.75, 0.5);
  const auto xi = TestFunction::plateau(0.3);
  const double base = verify_theorem_b(xi, p).lhs;
  for (double lambda : {0.5, 2.0}) {
    const double scaled = verify_theorem_b(xi.scaled(lambda), p).lhs;
    EXPECT_NEAR(scaled / base, 1.0, 1e-2) << lambda;
  }
}

TEST(SolutionIdentity, ZeroData) {
  const ProblemParams p(2, 0.5, 0.0);
  const auto reps = verify_solution_identity(RadialFunction::zero(), RadialFunction::zero(), 0.0, p,
                                             {TestFunction::plateau(0.4)});
  ASSERT_EQ(reps.size(), 1u);
  EXPECT_EQ(reps[0].lhs, 0.0);
  EXPECT_EQ(reps[0].rhs, 0.0);
  EXPECT_TRUE(reps[0].pass);
}

TEST(SolutionIdentity, BumpSourceNoSingularity) {
  const ProblemParams p(2, 0.5, 0.5);
  const auto f = TestFunction::plateau(0.5).to_radial();
  const auto rep = solve(DirichletProblem(p, f), log_grid(128));
  const std::vector<TestFunction> xis = {TestFunction::plateau(0.3), TestFunction::plateau(0.6, 0.5),
                                         TestFunction::annulus(0.5, 0.2)};
  for (const auto& r : verify_solution_identity(rep.u, f, 0.0, p, xis)) {
    EXPECT_TRUE(r.pass) << r.lhs << " vs " << r.rhs;
    EXPECT_GT(std::abs(r.rhs), 0.0);
  }
}

TEST(SolutionIdentity, PhiOmega) {
  for (const auto& p : {ProblemParams(2, 0.5, 0.5), ProblemParams(3, 0.75, 0.0)}) {
    const auto rep = build_phi_omega(p, log_grid(128));
    const std::vector<TestFunction> xis = {TestFunction::plateau(0.3), TestFunction::plateau(0.6, 0.5),
                                           TestFunction::plateau(0.8, 2.0)};
    for (const auto& r : verify_solution_identity(rep.u, RadialFunction::zero(), 1.0, p, xis))
      EXPECT_TRUE(r.pass) << p.N() << " " << r.lhs << " vs " << r.rhs;
  }
}

// rhs vanishes; the discretization error of Phi_Omega shows up as an absolute
// defect that shrinks under refinement
TEST(SolutionIdentity, PhiOmegaVanishingCenter) {
  const ProblemParams p(3, 0.75, 0.0);
  const std::vector<TestFunction> xis = {TestFunction::annulus(0.5, 0.2)};
  const double c = csmu(p);
  double prev = 1e300;
  for (std::size_t n : {128u, 256u}) {
    const auto rep = build_phi_omega(p, log_grid(n));
    const auto r = verify_solution_identity(rep.u, RadialFunction::zero(), 1.0, p, xis).front();
    EXPECT_EQ(r.rhs, 0.0);
    EXPECT_LE(std::abs(r.lhs), 1e-3 * c) << n;
    EXPECT_LT(std::abs(r.lhs), prev) << n;
    prev = std::abs(r.lhs);
  }
}

TEST(SolutionIdentity, RejectsWideSupport) {
  const ProblemParams p(2, 0.5, 0.0);
  EXPECT_THROW(verify_solution_identity(RadialFunction::zero(), RadialFunction::zero(), 0.0, p,
                                        {TestFunction::plateau(1.5)}),
               PreconditionError);
}
