#include <cmath>
#include <limits>
#include <string>

#include <gtest/gtest.h>

#include "hardyfrac/parallel.hpp"
#include "hardyfrac/report.hpp"

using namespace hardyfrac;

TEST(Report, DocumentHeader) {
  const auto j = document("exponents", {{"tau_plus", 0.5}});
  EXPECT_EQ(j.at("schema").get<int>(), kSchemaVersion);
  EXPECT_EQ(j.at("kind").get<std::string>(), "exponents");
  EXPECT_EQ(j.begin().key(), "schema");
  EXPECT_DOUBLE_EQ(j.at("tau_plus").get<double>(), 0.5);
}

TEST(Report, NonFiniteAsStrings) {
  EXPECT_EQ(detail::number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(detail::number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(detail::number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_DOUBLE_EQ(detail::number(1.25).get<double>(), 1.25);
  const auto dumped = detail::numbers({1.0, std::nan("")}).dump();
  EXPECT_EQ(dumped, "[1.0,\"nan\"]");
}

TEST(Report, ExponentsAndParams) {
  const ProblemParams p(3, 0.5, 0.0);
  const auto j = to_json(tau_pair(p));
  EXPECT_DOUBLE_EQ(j.at("tau_plus").get<double>(), 0.0);
  EXPECT_DOUBLE_EQ(j.at("tau_minus").get<double>(), -2.0);
  EXPECT_FALSE(j.at("degenerate").get<bool>());
  EXPECT_EQ(to_json(p).dump(), R"({"N":3,"s":0.5,"mu":0.0})");
}

TEST(Report, SolveProfile) {
  const ProblemParams p(2, 0.5, 0.0);
  const auto rep = solve(DirichletProblem(p, RadialFunction::constant(1.0)), log_grid(64));
  const auto j = to_json(rep, p);
  EXPECT_EQ(j.at("nodes").get<std::size_t>(), 64u);
  ASSERT_EQ(j.at("r").size(), 64u);
  ASSERT_EQ(j.at("u_over_gamma").size(), 64u);
  EXPECT_DOUBLE_EQ(j.at("u").at(10).get<double>(), rep.u(rep.grid[10]));
  EXPECT_FALSE(to_json(rep, p, false).contains("r"));
}

TEST(Report, IdentityAndProbeFields) {
  const auto id = to_json(verify_theorem_b(TestFunction::plateau(), ProblemParams(2, 0.5, 0.0)));
  for (const char* key : {"lhs", "rhs", "rel_err", "abs_floor", "tol", "pass", "quad_budget"})
    EXPECT_TRUE(id.contains(key)) << key;
  ProbeReport pr;
  pr.levels = {1.0};
  pr.norms = {std::numeric_limits<double>::infinity()};
  const auto j = to_json(pr);
  EXPECT_EQ(j.at("norms").at(0), "inf");
  EXPECT_EQ(j.at("verdict"), "inconclusive");
}

TEST(Report, ThreadCountDoesNotChangeBytes) {
  const ProblemParams p(3, 0.75, -0.3);
  auto run = [&](int threads) {
    const ScopedThreads guard(threads);
    const auto rep = solve(DirichletProblem(p, TestFunction::plateau(0.4).to_radial(), 0.5), log_grid(64));
    return document("solve", to_json(rep, p)).dump();
  };
  EXPECT_EQ(run(1), run(4));
}
