// hardyfrac: command-line front end.
//
//   hardyfrac constants --N 2 --s 0.5 --mu 0
//   hardyfrac exponents --N 3 --s 0.5 --mu-grid -1:5:13
//   hardyfrac verify-identity --N 2 --s 0.5 --mu 0 --xi plateau:0.25
//   hardyfrac solve --N 2 --s 0.5 --mu 0 --f const:1 --nodes 128 --out report.json --csv profile.csv
//   hardyfrac fundamental --N 3 --s 0.75 --mu -0.5
//   hardyfrac probe divergence --N 2 --s 0.5 --mu 0 --levels 7
//   hardyfrac regress
//
// Exit status: 0 when every verdict passes, 1 on a failed verdict or a
// computational failure (a diagnostic JSON document is written), 2 on usage
// errors.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardyfrac/hardyfrac.hpp"

namespace fs = std::filesystem;
using hardyfrac::json;

#ifndef HARDYFRAC_GOLDEN_DIR
#define HARDYFRAC_GOLDEN_DIR "golden"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

constexpr double kConstantsCrossCheckTol = 5e-3;
constexpr double kFundamentalTol = 1e-4;
constexpr double kRegressRelTol = 1e-9;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  int code = kExitOk;
  json doc;           // JSON output (empty when text is used)
  std::string text;   // CSV output
  std::string csv_path;
  std::string csv;    // optional side CSV (solve profile)
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid number '" + s + "' in " + what);
  }
}

// "a:b:n" -> n evenly spaced values from a to b
std::vector<double> parse_range(const std::string& spec, const std::string& what) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw UsageError(what + " must look like a:b:n");
  const double a = to_double(parts[0], what);
  const double b = to_double(parts[1], what);
  const double n = to_double(parts[2], what);
  if (n < 1 || n != std::floor(n) || n > 100000) throw UsageError(what + ": n must be a positive integer");
  std::vector<double> out;
  const auto m = static_cast<int>(n);
  for (int i = 0; i < m; ++i) out.push_back(m == 1 ? a : a + (b - a) * i / (m - 1));
  return out;
}

hardyfrac::RadialFunction parse_source(const std::string& spec) {
  const auto kv = split(spec, ':');
  if (kv.size() != 2) throw UsageError("--f must be const:c, power:a,tau or bump:R");
  const auto args = split(kv[1], ',');
  if (kv[0] == "const" && args.size() == 1) return hardyfrac::RadialFunction::constant(to_double(args[0], "--f"));
  if (kv[0] == "power" && args.size() == 2)
    return hardyfrac::RadialFunction::power(to_double(args[0], "--f"), to_double(args[1], "--f"));
  if (kv[0] == "bump" && args.size() == 1) {
    const double R = to_double(args[0], "--f");
    if (!(R > 0.0)) throw UsageError("--f bump radius must be positive");
    return hardyfrac::TestFunction::plateau(R).to_radial();
  }
  throw UsageError("--f must be const:c, power:a,tau or bump:R");
}

hardyfrac::TestFunction parse_xi(const std::string& spec) {
  const auto kv = split(spec, ':');
  if (kv.size() != 2) throw UsageError("--xi must be plateau:R or annulus:center,half_width");
  const auto args = split(kv[1], ',');
  if (kv[0] == "plateau" && args.size() == 1) {
    const double R = to_double(args[0], "--xi");
    if (!(R > 0.0)) throw UsageError("--xi plateau radius must be positive");
    return hardyfrac::TestFunction::plateau(R);
  }
  if (kv[0] == "annulus" && args.size() == 2) {
    const double c = to_double(args[0], "--xi");
    const double w = to_double(args[1], "--xi");
    if (!(w > 0.0 && c - w > 0.0)) throw UsageError("--xi annulus must satisfy center > half_width > 0");
    return hardyfrac::TestFunction::annulus(c, w);
  }
  throw UsageError("--xi must be plateau:R or annulus:center,half_width");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Common {
  int N = 2;
  double s = 0.5;
  double mu = 0.0;
  hardyfrac::ProblemParams params() const { return {N, s, mu}; }
};

void add_common(CLI::App* sub, Common& c, bool with_mu = true) {
  sub->add_option("--N", c.N, "dimension")->required();
  sub->add_option("--s", c.s, "fractional order")->required();
  if (with_mu) sub->add_option("--mu", c.mu, "Hardy coefficient")->required();
}

void require_mu0(const hardyfrac::ProblemParams& p) {
  if (p.mu() < hardyfrac::mu0(p) - 1e-12)
    throw UsageError("mu = " + fmt(p.mu()) + " is below mu_0 = " + fmt(hardyfrac::mu0(p)));
}

// ---- subcommands ----

Outcome run_constants(const Common& c) {
  const auto p = c.params();
  require_mu0(p);
  const auto t = hardyfrac::tau_pair(p);
  const double cm = hardyfrac::csmu(p);
  const double c0 = hardyfrac::cs0(p);
  const double rd = hardyfrac::riesz_delta_const(p);
  const double rel = std::abs(c0 - rd) / rd;
  Outcome o;
  o.doc = hardyfrac::document("constants", {{"params", hardyfrac::to_json(p)},
                                            {"mu0", hardyfrac::mu0(p)},
                                            {"tau_minus", t.tau_minus},
                                            {"tau_plus", t.tau_plus},
                                            {"degenerate", t.degenerate},
                                            {"c_smu", cm},
                                            {"c_s0", c0},
                                            {"riesz_delta", rd},
                                            {"cross_check_rel_err", rel},
                                            {"cross_check_tol", kConstantsCrossCheckTol}});
  o.code = rel <= kConstantsCrossCheckTol ? kExitOk : kExitFail;
  return o;
}

Outcome run_exponents(const Common& c, const std::string& grid, const std::string& format) {
  const hardyfrac::ProblemParams base(c.N, c.s, 0.0);
  const auto mus = parse_range(grid, "--mu-grid");
  const double m0 = hardyfrac::mu0(base);
  Outcome o;
  json rows = json::array();
  std::string csv = "mu,tau_minus,tau_plus,degenerate,status\n";
  for (double mu : mus) {
    if (mu < m0 - hardyfrac::detail::kBelowMu0Slack) {
      csv += fmt(mu) + ",nan,nan,0,below_mu0\n";
      rows.push_back({{"mu", mu}, {"tau_minus", "nan"}, {"tau_plus", "nan"}, {"degenerate", false},
                      {"status", "below_mu0"}});
      continue;
    }
    const auto t = hardyfrac::tau_pair(base.with_mu(mu));
    csv += fmt(mu) + "," + fmt(t.tau_minus) + "," + fmt(t.tau_plus) + "," + (t.degenerate ? "1" : "0") + ",ok\n";
    rows.push_back({{"mu", mu}, {"tau_minus", t.tau_minus}, {"tau_plus", t.tau_plus}, {"degenerate", t.degenerate},
                    {"status", "ok"}});
  }
  if (format == "csv")
    o.text = csv;
  else
    o.doc = hardyfrac::document("exponents", {{"N", c.N}, {"s", c.s}, {"mu0", m0}, {"rows", rows}});
  return o;
}

Outcome run_verify_identity(const Common& c, const std::string& xi_spec, std::optional<double> tol) {
  const auto p = c.params();
  require_mu0(p);
  const auto xi = parse_xi(xi_spec);
  auto rep = hardyfrac::verify_theorem_b(xi, p);
  if (tol) {
    if (!(*tol > 0.0)) throw UsageError("--tol must be positive");
    rep.tol = *tol;
    rep.pass = rep.rel_err <= *tol;
  }
  Outcome o;
  o.doc = hardyfrac::document("identity", {{"params", hardyfrac::to_json(p)},
                                           {"xi", xi_spec},
                                           {"c_smu", hardyfrac::csmu(p)},
                                           {"report", hardyfrac::to_json(rep)}});
  o.code = rep.pass ? kExitOk : kExitFail;
  return o;
}

Outcome run_solve(const Common& c, double k, const std::string& f_spec, int nodes, double rho,
                  const std::string& csv_path) {
  const auto p = c.params();
  require_mu0(p);
  if (nodes < 64 || nodes > 2048) throw UsageError("--nodes must lie in [64, 2048]");
  const auto f = parse_source(f_spec);
  const hardyfrac::DirichletProblem prob(p, f, k, rho);
  const auto grid = hardyfrac::log_grid(static_cast<std::size_t>(nodes));
  const auto rep = hardyfrac::assemble_uk(prob, grid);
  Outcome o;
  o.doc = hardyfrac::document("solve", {{"params", hardyfrac::to_json(p)},
                                        {"f", f_spec},
                                        {"rho", rho},
                                        {"report", hardyfrac::to_json(rep, p)}});
  if (!csv_path.empty()) {
    const auto t = hardyfrac::tau_pair(p);
    std::string csv = "r,u,u_over_phi,u_over_gamma\n";
    for (double r : grid) {
      const double v = rep.u(r);
      csv += fmt(r) + "," + fmt(v) + "," + fmt(v / hardyfrac::phi_mu(r, t)) + "," + fmt(v / hardyfrac::gamma_mu(r, t)) +
             "\n";
    }
    o.csv_path = csv_path;
    o.csv = csv;
  }
  return o;
}

Outcome run_fundamental(const Common& c, const std::string& r_grid) {
  const auto p = c.params();
  require_mu0(p);
  const auto ends = parse_range(r_grid, "--r-grid");
  const hardyfrac::RadialOperator op(p);
  const auto& t = op.exponents();
  std::vector<double> rs;
  if (ends.front() <= 0.0 || ends.back() <= 0.0) throw UsageError("--r-grid radii must be positive");
  // the range is log-spaced between its endpoints
  for (std::size_t i = 0; i < ends.size(); ++i)
    rs.push_back(ends.size() == 1 ? ends[0]
                                  : ends.front() * std::pow(ends.back() / ends.front(),
                                                            static_cast<double>(i) / static_cast<double>(ends.size() - 1)));
  std::vector<double> res_phi(rs.size()), res_gamma(rs.size());
  const auto phi = op.phi();
  const auto gam = op.gamma();
  hardyfrac::parallel_for(rs.size(), [&](std::size_t i) {
    const double r = rs[i];
    res_phi[i] = std::abs(op.hardy(phi, r)) * std::pow(r, 2.0 * p.s() - t.tau_minus);
    res_gamma[i] = std::abs(op.hardy(gam, r)) * std::pow(r, 2.0 * p.s() - t.tau_plus);
  });
  double mp = 0.0, mg = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    mp = std::max(mp, res_phi[i]);
    mg = std::max(mg, res_gamma[i]);
  }
  Outcome o;
  o.doc = hardyfrac::document("fundamental", {{"params", hardyfrac::to_json(p)},
                                              {"exponents", hardyfrac::to_json(t)},
                                              {"r", hardyfrac::detail::numbers(rs)},
                                              {"residual_phi", hardyfrac::detail::numbers(res_phi)},
                                              {"residual_gamma", hardyfrac::detail::numbers(res_gamma)},
                                              {"max_residual_phi", mp},
                                              {"max_residual_gamma", mg},
                                              {"tol", kFundamentalTol}});
  o.code = (mp <= kFundamentalTol && mg <= kFundamentalTol) ? kExitOk : kExitFail;
  return o;
}

Outcome run_probe(const std::string& kind, const Common& c, int levels, int nodes, std::optional<double> a) {
  const auto p = c.params();
  if (levels < 4 || levels > 12) throw UsageError("--levels must lie in [4, 12]");
  if (nodes < 64 || nodes > 2048) throw UsageError("--nodes must lie in [64, 2048]");
  hardyfrac::ProbeReport rep;
  json extra = json::object();
  if (kind == "delta") {
    require_mu0(p);
    std::vector<double> r_seq;
    for (int i = 0; i < levels; ++i) r_seq.push_back(0.2 * std::pow(0.5, i));
    rep = hardyfrac::delta_sequence_probe(p, r_seq, hardyfrac::log_grid(static_cast<std::size_t>(nodes)));
  } else if (kind == "divergence") {
    require_mu0(p);
    const double exponent = a ? *a : p.dim() + hardyfrac::tau_pair(p).tau_plus;
    if (!(exponent > 0.0)) throw UsageError("--a must be positive");
    std::vector<double> lv;
    for (int i = 1; i <= levels; ++i) lv.push_back(std::pow(3.0, i));
    rep = hardyfrac::divergence_probe(p, exponent, lv, hardyfrac::log_grid(static_cast<std::size_t>(nodes)));
    extra["a"] = exponent;
  } else if (kind == "subcritical") {
    std::vector<double> eps;
    for (int i = 0; i < levels; ++i) eps.push_back(std::pow(0.5, i + 2));
    rep = hardyfrac::subcritical_mu_probe(p, eps, static_cast<std::size_t>(nodes));
  } else {
    throw UsageError("probe kind must be delta, divergence or subcritical");
  }
  Outcome o;
  json body = {{"probe", kind}, {"params", hardyfrac::to_json(p)}};
  for (auto it = extra.begin(); it != extra.end(); ++it) body[it.key()] = it.value();
  body["report"] = hardyfrac::to_json(rep);
  o.doc = hardyfrac::document("probe", body);
  o.code = rep.verdict == rep.analytic_verdict ? kExitOk : kExitFail;
  return o;
}

Outcome execute(std::vector<std::string> args);

// ---- golden replay ----

bool close(const json& a, const json& b, const std::string& path, std::vector<std::string>& diffs) {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>();
    const double y = b.get<double>();
    if (std::abs(x - y) <= kRegressRelTol * std::max(std::abs(x), std::abs(y))) return true;
    diffs.push_back(path + ": " + fmt(x) + " vs " + fmt(y));
    return false;
  }
  if (a.type() != b.type()) {
    diffs.push_back(path + ": type differs");
    return false;
  }
  if (a.is_object()) {
    bool ok = a.size() == b.size();
    if (!ok) diffs.push_back(path + ": key count differs");
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) {
        diffs.push_back(path + "." + it.key() + ": missing");
        ok = false;
        continue;
      }
      ok = close(it.value(), b.at(it.key()), path + "." + it.key(), diffs) && ok;
    }
    return ok;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) {
      diffs.push_back(path + ": length differs");
      return false;
    }
    bool ok = true;
    for (std::size_t i = 0; i < a.size(); ++i) ok = close(a[i], b[i], path + "[" + std::to_string(i) + "]", diffs) && ok;
    return ok;
  }
  if (a == b) return true;
  diffs.push_back(path + ": " + a.dump() + " vs " + b.dump());
  return false;
}

std::string g15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// Exact 15-digit match; near-tie fields may print either neighbour.
bool matches15(const std::string& got, const std::string& want, bool near_tie) {
  if (got == want) return true;
  if (!near_tie) return false;
  const double a = std::stod(got), b = std::stod(want);
  return std::abs(a - b) <= 1.01 * std::pow(10.0, std::floor(std::log10(std::abs(b))) - 14);
}

json replay_special(const json& g, int& failures) {
  json out = json::array();
  for (const auto& rec : g.at("records")) {
    const hardyfrac::ProblemParams p(rec.at("N").get<int>(), rec.at("s").get<double>());
    const double tau = std::stod(rec.at("tau").get<std::string>());
    const std::map<std::string, double> got = {{"c_s", hardyfrac::c_s(tau, p)},
                                               {"mu0", hardyfrac::mu0(p)},
                                               {"cns", hardyfrac::cns(p)},
                                               {"riesz_delta", hardyfrac::riesz_delta_const(p)},
                                               {"omega", hardyfrac::omega_sphere(p.N())}};
    for (const auto& [key, v] : got) {
      const auto want = rec.at(key).get<std::string>();
      const auto& ties = rec.at("near_tie");
      if (!matches15(g15(v), want, std::find(ties.begin(), ties.end(), key) != ties.end())) {
        ++failures;
        out.push_back({{"N", p.N()}, {"s", p.s()}, {"tau", rec.at("tau")}, {"field", key}, {"want", want},
                       {"got", g15(v)}});
      }
    }
  }
  for (const auto& rec : g.at("gamma_ln")) {
    const double x = std::stod(rec.at("x").get<std::string>());
    const auto lg = hardyfrac::gamma_ln(x);
    if (!matches15(g15(lg.value), rec.at("value").get<std::string>(), rec.at("near_tie").get<bool>()) ||
        lg.sign != rec.at("sign").get<int>()) {
      ++failures;
      out.push_back({{"x", rec.at("x")}, {"field", "gamma_ln"}, {"want", rec.at("value")}, {"got", g15(lg.value)}});
    }
  }
  return out;
}

Outcome run_regress(const std::string& dir, bool update) {
  int failures = 0;
  json files = json::array();
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw UsageError("golden directory '" + dir + "' not found");

  const fs::path special = root / "special.json";
  if (fs::exists(special)) {
    std::ifstream in(special);
    const json g = json::parse(in);
    int f = 0;
    const json bad = replay_special(g, f);
    failures += f;
    files.push_back({{"file", "special.json"}, {"failures", f}, {"mismatches", bad}});
  }

  std::vector<fs::path> cli_files;
  if (fs::is_directory(root / "cli"))
    for (const auto& e : fs::directory_iterator(root / "cli"))
      if (e.path().extension() == ".json") cli_files.push_back(e.path());
  std::sort(cli_files.begin(), cli_files.end());
  for (const auto& path : cli_files) {
    json g;
    {
      std::ifstream in(path);
      g = json::parse(in);
    }
    const auto args = g.at("config").at("args").get<std::vector<std::string>>();
    const Outcome o = execute(args);
    std::vector<std::string> diffs;
    bool ok = o.code == g.at("exit_code").get<int>();
    if (!ok) diffs.push_back("exit code " + std::to_string(o.code));
    if (update) {
      g["exit_code"] = o.code;
      g["output"] = o.doc;
      std::ofstream(path) << g.dump(2) << "\n";
      ok = true;
      diffs.clear();
    } else {
      ok = close(g.at("output"), o.doc, "output", diffs) && ok;
    }
    if (!ok) ++failures;
    files.push_back({{"file", "cli/" + path.filename().string()}, {"failures", ok ? 0 : 1}, {"diffs", diffs}});
  }
  Outcome o;
  o.doc = hardyfrac::document("regress", {{"golden_dir", dir},
                                          {"updated", update},
                                          {"rel_tol", kRegressRelTol},
                                          {"files", files},
                                          {"failures", failures}});
  o.code = failures == 0 ? kExitOk : kExitFail;
  return o;
}

// ---- dispatch ----

Outcome execute_impl(std::vector<std::string> args, std::string* out_path, bool* help) {
  CLI::App app{"Fractional Hardy operator toolkit", "hardyfrac"};
  app.require_subcommand(1);
  std::string out;
  std::string format = "json";

  Common c;
  auto* constants = app.add_subcommand("constants", "normalization constants and exponents (JSON)");
  add_common(constants, c);

  Common ce;
  std::string mu_grid;
  auto* exponents = app.add_subcommand("exponents", "tau_-/tau_+ over a mu grid (CSV)");
  add_common(exponents, ce, false);
  exponents->add_option("--mu-grid", mu_grid, "a:b:n")->required();

  Common ci;
  std::string xi_spec = "plateau:0.25";
  std::optional<double> tol;
  auto* verify = app.add_subcommand("verify-identity", "whole-space identity against a test bump (JSON)");
  add_common(verify, ci);
  verify->add_option("--xi", xi_spec, "plateau:R or annulus:center,half_width");
  verify->add_option("--tol", tol, "relative tolerance override");

  Common cs;
  double k = 0.0;
  double rho = 0.0;
  int nodes = 128;
  std::string f_spec = "const:1";
  std::string csv_path;
  auto* solve = app.add_subcommand("solve", "Dirichlet problem on the unit ball (JSON, optional CSV profile)");
  add_common(solve, cs);
  solve->add_option("--k", k, "singular coefficient");
  solve->add_option("--f", f_spec, "const:c | power:a,tau | bump:R");
  solve->add_option("--nodes", nodes, "collocation nodes");
  solve->add_option("--rho", rho, "weight exponent of the source bound");
  solve->add_option("--csv", csv_path, "write (r, u, u/Phi_mu, u/Gamma_mu) here");

  Common cf;
  std::string r_grid = "0.05:3:24";
  auto* fundamental = app.add_subcommand("fundamental", "operator residuals of Phi_mu and Gamma_mu (JSON)");
  add_common(fundamental, cf);
  fundamental->add_option("--r-grid", r_grid, "a:b:n, log-spaced");

  Common cp;
  std::string kind;
  int levels = 6;
  int probe_nodes = 128;
  std::optional<double> a;
  auto* probe = app.add_subcommand("probe", "nonexistence probes (JSON)");
  probe->add_option("kind", kind, "delta | divergence | subcritical")->required();
  add_common(probe, cp);
  probe->add_option("--levels", levels, "number of levels");
  probe->add_option("--nodes", probe_nodes, "collocation nodes");
  probe->add_option("--a", a, "divergence probe exponent (default N + tau_+)");

  std::string golden = HARDYFRAC_GOLDEN_DIR;
  bool update = false;
  auto* regress = app.add_subcommand("regress", "replay golden files");
  regress->add_option("--golden-dir", golden, "directory with golden JSON files");
  regress->add_flag("--update", update, "rewrite the CLI goldens from the current build");

  for (auto* sub : {constants, exponents, verify, solve, fundamental, probe, regress}) {
    sub->add_option("--out", out, "output path (default stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    *help = true;
    return {};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  if (out_path) *out_path = out;
  if (format == "csv" && !exponents->parsed()) throw UsageError("--format csv is only available for exponents");

  if (constants->parsed()) return run_constants(c);
  if (exponents->parsed()) return run_exponents(ce, mu_grid, exponents->count("--format") ? format : "csv");
  if (verify->parsed()) return run_verify_identity(ci, xi_spec, tol);
  if (solve->parsed()) return run_solve(cs, k, f_spec, nodes, rho, csv_path);
  if (fundamental->parsed()) return run_fundamental(cf, r_grid);
  if (probe->parsed()) return run_probe(kind, cp, levels, probe_nodes, a);
  return run_regress(golden, update);
}

Outcome execute_checked(std::vector<std::string> args, std::string* out_path, bool* help) {
  const std::string sub = args.empty() ? "" : args.front();
  try {
    return execute_impl(std::move(args), out_path, help);
  } catch (const UsageError& e) {
    Outcome o;
    o.code = kExitUsage;
    o.doc = hardyfrac::document("error", {{"subcommand", sub}, {"usage_error", e.what()}});
    return o;
  } catch (const hardyfrac::PreconditionError& e) {
    Outcome o;
    o.code = kExitUsage;
    o.doc = hardyfrac::document("error", {{"subcommand", sub}, {"usage_error", e.what()}});
    return o;
  } catch (const hardyfrac::DomainError& e) {
    Outcome o;
    o.code = kExitUsage;
    o.doc = hardyfrac::document("error", {{"subcommand", sub}, {"usage_error", e.what()}});
    return o;
  } catch (const std::exception& e) {
    Outcome o;
    o.code = kExitFail;
    o.doc = hardyfrac::document("error", {{"subcommand", sub}, {"error", e.what()}});
    return o;
  }
}

Outcome execute(std::vector<std::string> args) {
  bool help = false;
  return execute_checked(std::move(args), nullptr, &help);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string out_path;
  bool help = false;
  const Outcome o = execute_checked(args, &out_path, &help);
  if (help) return kExitOk;
  const std::string body = o.text.empty() ? o.doc.dump(2) + "\n" : o.text;
  if (o.code == kExitUsage) std::cerr << "usage error: " << o.doc.value("usage_error", std::string()) << "\n";
  if (!o.csv_path.empty()) {
    std::ofstream csv(o.csv_path, std::ios::binary);
    if (!csv) {
      std::cerr << "cannot write " << o.csv_path << "\n";
      return kExitFail;
    }
    csv << o.csv;
  }
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitFail;
    }
    out << body;
  }
  return o.code;
}
