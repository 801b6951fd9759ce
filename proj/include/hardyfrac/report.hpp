#pragma once

// JSON views of the report structs. Every document carries "schema": 1.
// Non-finite doubles are written as the strings "inf", "-inf" and "nan".

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardyfrac/exponents.hpp"
#include "hardyfrac/identity.hpp"
#include "hardyfrac/probe.hpp"
#include "hardyfrac/radial_kernel.hpp"
#include "hardyfrac/solver.hpp"

namespace hardyfrac {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

}  // namespace detail

inline json to_json(const ProblemParams& p) { return {{"N", p.N()}, {"s", p.s()}, {"mu", p.mu()}}; }

inline json to_json(const ExponentPair& t) {
  return {{"tau_minus", detail::number(t.tau_minus)},
          {"tau_plus", detail::number(t.tau_plus)},
          {"degenerate", t.degenerate}};
}

inline json to_json(const IdentityReport& r) {
  return {{"lhs", detail::number(r.lhs)},
          {"rhs", detail::number(r.rhs)},
          {"rel_err", detail::number(r.rel_err)},
          {"abs_floor", detail::number(r.abs_floor)},
          {"tol", r.tol},
          {"pass", r.pass},
          {"quad_budget",
           {{"evaluations", r.budget.evaluations},
            {"r_inner", detail::number(r.budget.r_inner)},
            {"inner_tail", detail::number(r.budget.inner_tail)},
            {"outer_tail", detail::number(r.budget.outer_tail)}}}};
}

/// Scalar fields plus the solution sampled at the grid. With the profile,
/// u / Phi_mu and u / Gamma_mu are included as well (ball problems only).
inline json to_json(const SolveReport& r, const ProblemParams& p, bool profile = true) {
  json j = {{"k", detail::number(r.k)},
            {"residual_max", detail::number(r.residual_max)},
            {"singular_limit", detail::number(r.singular_limit)},
            {"gamma_ratio_max", detail::number(r.gamma_ratio_max)},
            {"l1_lambda_norm", detail::number(r.l1_lambda_norm)},
            {"l1_gamma_norm_f", detail::number(r.l1_gamma_norm_f)},
            {"f_linf_rho", detail::number(r.f_linf_rho)},
            {"positivity_min", detail::number(r.positivity_min)},
            {"max_abs", detail::number(r.max_abs)},
            {"condition", detail::number(r.condition)},
            {"nodes", r.grid.size()}};
  if (profile) {
    const auto t = tau_pair(p);
    std::vector<double> u, by_phi, by_gamma;
    for (double x : r.grid) {
      const double v = r.u(x);
      u.push_back(v);
      by_phi.push_back(v / phi_mu(x, t));
      by_gamma.push_back(v / gamma_mu(x, t));
    }
    j["r"] = detail::numbers(r.grid);
    j["u"] = detail::numbers(u);
    j["u_over_phi"] = detail::numbers(by_phi);
    j["u_over_gamma"] = detail::numbers(by_gamma);
  }
  return j;
}

inline json to_json(const ProbeReport& r) {
  return {{"levels", detail::numbers(r.levels)},
          {"norms", detail::numbers(r.norms)},
          {"masses", detail::numbers(r.masses)},
          {"analytic_masses", detail::numbers(r.analytic_masses)},
          {"ratios", detail::numbers(r.ratios)},
          {"minima", detail::numbers(r.minima)},
          {"maxima", detail::numbers(r.maxima)},
          {"verdict", to_string(r.verdict)},
          {"analytic_verdict", to_string(r.analytic_verdict)},
          {"growth_fit", detail::number(r.growth_fit)}};
}

/// {"schema": 1, "kind": kind, ...body}.
inline json document(const std::string& kind, const json& body) {
  json j = {{"schema", kSchemaVersion}, {"kind", kind}};
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

}  // namespace hardyfrac
