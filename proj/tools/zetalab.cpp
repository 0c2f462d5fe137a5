#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "zetalab/charsum.hpp"
#include "zetalab/classical.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/ffield.hpp"
#include "zetalab/modforms.hpp"
#include "zetalab/parse.hpp"
#include "zetalab/poly.hpp"
#include "zetalab/varieties.hpp"
#include "zetalab/zeta.hpp"

namespace {

using json = nlohmann::ordered_json;

/// Shared run configuration; --budget falls back to ZETALAB_BUDGET.
struct RunConfig {
  std::uint64_t budget = zetalab::kDefaultBudget;
  double tol = zetalab::kDefaultRhTol;
  std::string format = "text";
  std::uint64_t seed = 0;  // reserved for sampled sweeps
};

void add_config(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--budget", cfg.budget, "Max points enumerated per count")
      ->envname("ZETALAB_BUDGET")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", cfg.tol, "Numeric tolerance for root moduli");
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--seed", cfg.seed, "Seed for sampled sweeps (reserved)");
}

void validate_config(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0 && cfg.tol <= 1e-3))
    throw zetalab::UsageError("tolerance must lie in (0, 1e-3]");
}

/// Doubles are rendered with 12 significant digits everywhere (and as decimal
/// strings inside JSON, which therefore never carries NaN).
std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json json_double(double v) { return json(fmt_double(v)); }

json json_int_poly(const zetalab::IntPoly& f) {
  json arr = json::array();
  for (const auto& c : f) arr.push_back(c.str());
  return arr;
}

zetalab::PolySystem load_system(const std::vector<std::string>& exprs,
                                const std::string& file, zetalab::Ambient ambient) {
  std::vector<std::string> lines;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw zetalab::UsageError("cannot open " + file);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }
  for (const auto& e : exprs) lines.push_back(e);
  if (lines.empty()) throw zetalab::UsageError("give a system with -e or -f");
  return zetalab::parse_system(lines, ambient);
}

/// Coefficient list (constant first) of the single univariate polynomial.
std::vector<std::int64_t> curve_coeffs(const zetalab::PolySystem& sys) {
  if (sys.polys.size() != 1 || sys.num_vars != 1)
    throw zetalab::UsageError("the curve model needs exactly one univariate f(x)");
  const zetalab::Polynomial& poly = sys.polys.front();
  std::vector<std::int64_t> f(total_degree(poly) + 1, 0);
  for (const zetalab::Term& t : poly.terms) f[t.exps[0]] = t.coeff;
  return f;
}

// --- count ---

struct CountOpts {
  RunConfig cfg;
  std::vector<std::string> exprs;
  std::string file;
  std::int64_t p = 0;
  int n = 1;
  bool projective = false;
};

int cmd_count(const CountOpts& opt) {
  validate_config(opt.cfg);
  const auto ambient =
      opt.projective ? zetalab::Ambient::projective : zetalab::Ambient::affine;
  const zetalab::PolySystem sys = load_system(opt.exprs, opt.file, ambient);
  const zetalab::FieldSpec field = zetalab::FieldSpec::build(opt.p, opt.n);
  const std::uint64_t N = opt.projective
                              ? zetalab::count_projective(sys, field, opt.cfg.budget)
                              : zetalab::count_affine(sys, field, opt.cfg.budget);
  if (opt.cfg.format == "csv") {
    std::cout << "N\n" << N << "\n";
  } else {
    std::cout << json{{"N", N}}.dump() << "\n";
  }
  return 0;
}

// --- weil ---

struct WeilOpts {
  RunConfig cfg;
  std::string expr;
  std::string file;
  std::int64_t p = 0;
  int B = 0;
};

int cmd_weil(const WeilOpts& opt) {
  validate_config(opt.cfg);
  if (opt.cfg.format == "csv")
    throw zetalab::UsageError("the weil report has no csv form; use text or json");
  std::vector<std::string> exprs;
  if (!opt.expr.empty()) exprs.push_back(opt.expr);
  const zetalab::PolySystem sys =
      load_system(exprs, opt.file, zetalab::Ambient::affine);
  const zetalab::CurveSpec curve = zetalab::make_curve(curve_coeffs(sys), opt.p);
  const zetalab::WeilReport rep =
      zetalab::curve_weil_report(curve, opt.B, opt.cfg.tol, opt.cfg.budget);
  json out;
  out["p"] = rep.p;
  out["g"] = rep.g;
  out["counts"] = rep.counts;
  out["zeta"] = json{{"num", json_int_poly(rep.num)}, {"den", json_int_poly(rep.den)}};
  out["epsilon"] = rep.epsilon;
  json moduli = json::array();
  for (double m : rep.root_moduli) moduli.push_back(json_double(m));
  out["root_moduli"] = std::move(moduli);
  out["hasse_slack"] = json_double(rep.hasse_slack);
  out["verdicts"] = json{{"rational", rep.verdicts.rational},
                         {"functional_eq", rep.verdicts.functional_eq},
                         {"rh", rep.verdicts.rh},
                         {"schmidt", rep.verdicts.schmidt},
                         {"hasse", rep.verdicts.hasse}};
  out["failure"] = rep.failure;
  std::cout << (opt.cfg.format == "json" ? out.dump() : out.dump(2)) << "\n";
  return rep.verdicts.all() ? 0 : 3;
}

// --- gauss ---

struct GaussOpts {
  RunConfig cfg;
  std::int64_t max = 100;
};

json check_json(const zetalab::FormulaCheck& c) {
  return json{{"formula", c.formula}, {"brute", c.brute}, {"ok", c.ok}};
}

int cmd_gauss(const GaussOpts& opt) {
  validate_config(opt.cfg);
  int total = 0, passed = 0;
  json records = json::array();
  std::string csv;
  std::string text;
  for (std::int64_t p = 5; p <= opt.max; p += 4) {
    if (!zetalab::is_prime(p)) continue;
    const zetalab::TwoSquares ts = zetalab::two_squares(p);
    const zetalab::FormulaCheck circle = zetalab::circle_check(p, opt.cfg.budget);
    const zetalab::FormulaCheck lem = zetalab::lemniscate_check(p, opt.cfg.budget);
    const zetalab::FormulaCheck quartic = zetalab::quartic_check(p, opt.cfg.budget);
    const bool ok = circle.ok && lem.ok && quartic.ok;
    ++total;
    passed += ok ? 1 : 0;
    if (opt.cfg.format == "json") {
      records.push_back(json{{"p", p},
                             {"a", ts.a},
                             {"b", ts.b},
                             {"circle", check_json(circle)},
                             {"lemniscate", check_json(lem)},
                             {"quartic", check_json(quartic)},
                             {"ok", ok}});
    } else if (opt.cfg.format == "csv") {
      csv += std::to_string(p) + "," + std::to_string(ts.a) + "," +
             std::to_string(ts.b) + "," + std::to_string(circle.formula) + "," +
             std::to_string(circle.brute) + "," + std::to_string(lem.formula) + "," +
             std::to_string(lem.brute) + "," + std::to_string(quartic.formula) + "," +
             std::to_string(quartic.brute) + "," + (ok ? "1" : "0") + "\n";
    } else {
      text += "p=" + std::to_string(p) + ": a=" + std::to_string(ts.a) +
              " b=" + std::to_string(ts.b) +
              " circle " + std::to_string(circle.formula) + "/" +
              std::to_string(circle.brute) +
              " lemniscate " + std::to_string(lem.formula) + "/" +
              std::to_string(lem.brute) +
              " quartic " + std::to_string(quartic.formula) + "/" +
              std::to_string(quartic.brute) + (ok ? " pass" : " FAIL") + "\n";
    }
  }
  const int failed = total - passed;
  if (opt.cfg.format == "json") {
    json out;
    out["records"] = std::move(records);
    out["summary"] = json{{"total", total}, {"passed", passed}, {"failed", failed}};
    std::cout << out.dump() << "\n";
  } else if (opt.cfg.format == "csv") {
    std::cout << "p,a,b,circle_formula,circle_brute,lemniscate_formula,"
                 "lemniscate_brute,quartic_formula,quartic_brute,ok\n"
              << csv;
    std::cerr << "summary: " << total << " records, " << passed << " passed, "
              << failed << " failed\n";
  } else {
    std::cout << text << "summary: " << total << " records, " << passed
              << " passed, " << failed << " failed\n";
  }
  return failed == 0 ? 0 : 3;
}

// --- tau ---

struct TauOpts {
  RunConfig cfg;
  int B = 100;
  bool all_checks = false;
};

int cmd_tau(const TauOpts& opt) {
  validate_config(opt.cfg);
  const zetalab::QExpansion exp = zetalab::delta_expand(opt.B);
  struct Suite {
    int total = 0;
    int passed = 0;
  };
  Suite mult, euler, deligne;
  if (opt.all_checks) {
    for (std::int64_t m = 2; m <= opt.B; ++m) {
      for (std::int64_t n = m + 1; m * n <= opt.B; ++n) {
        std::int64_t a = m, b = n;
        while (b != 0) {
          a %= b;
          std::swap(a, b);
        }
        if (a != 1) continue;
        ++mult.total;
        mult.passed += zetalab::multiplicativity_check(exp, m, n).ok ? 1 : 0;
      }
    }
    for (std::int64_t p = 2; p <= opt.B; ++p) {
      if (!zetalab::is_prime(p)) continue;
      for (int k = 1;; ++k) {
        std::int64_t pk1 = 1;
        bool fits = true;
        for (int i = 0; i <= k; ++i) {
          if (pk1 > opt.B / p) {
            fits = false;
            break;
          }
          pk1 *= p;
        }
        if (!fits) break;
        ++euler.total;
        euler.passed += zetalab::euler_recursion_check(exp, p, k).ok ? 1 : 0;
      }
      ++deligne.total;
      deligne.passed += zetalab::deligne_tau_check(exp, p).ok ? 1 : 0;
    }
  }
  const bool all_ok = mult.passed == mult.total && euler.passed == euler.total &&
                      deligne.passed == deligne.total;
  if (opt.cfg.format == "csv") {
    std::cout << "n,tau\n";
    for (int n = 1; n <= opt.B; ++n)
      std::cout << n << "," << exp.tau[n].str() << "\n";
    if (opt.all_checks)
      std::cerr << "summary: multiplicativity " << mult.passed << "/" << mult.total
                << ", euler " << euler.passed << "/" << euler.total << ", deligne "
                << deligne.passed << "/" << deligne.total << "\n";
  } else if (opt.cfg.format == "json") {
    json out;
    out["B"] = opt.B;
    json head = json::array();
    for (int n = 1; n <= std::min(opt.B, 12); ++n) head.push_back(exp.tau[n].str());
    out["tau_head"] = std::move(head);
    out["checks"] =
        json{{"multiplicativity", json{{"total", mult.total}, {"passed", mult.passed}}},
             {"euler", json{{"total", euler.total}, {"passed", euler.passed}}},
             {"deligne", json{{"total", deligne.total}, {"passed", deligne.passed}}}};
    out["all_ok"] = all_ok;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "tau(n) computed for n <= " << opt.B << "\n";
    if (opt.all_checks) {
      std::cout << "multiplicativity: " << mult.passed << "/" << mult.total
                << " pass\n"
                << "euler recursion:  " << euler.passed << "/" << euler.total
                << " pass\n"
                << "deligne bound:    " << deligne.passed << "/" << deligne.total
                << " pass\n"
                << (all_ok ? "all checks passed" : "CHECK FAILURES") << "\n";
    }
  }
  return all_ok ? 0 : 3;
}

// --- expsum ---

struct ExpsumOpts {
  RunConfig cfg;
  std::string expr;
  std::int64_t p = 0;
};

int cmd_expsum(const ExpsumOpts& opt) {
  validate_config(opt.cfg);
  const zetalab::PolySystem sys =
      zetalab::parse_system(std::vector<std::string>{opt.expr},
                            zetalab::Ambient::affine);
  const zetalab::Polynomial& f = sys.polys.front();
  const zetalab::DeligneSumResult res =
      zetalab::deligne_sum_check(f, opt.p, opt.cfg.budget);
  const zetalab::ComplexValue S = zetalab::exp_sum(f, opt.p, opt.cfg.budget);
  if (opt.cfg.format == "json") {
    json out;
    out["p"] = opt.p;
    out["n"] = f.num_vars;
    out["sum_re"] = json_double(S.real());
    out["sum_im"] = json_double(S.imag());
    out["abs_sum"] = json_double(res.abs_sum);
    out["bound"] = json_double(res.bound);
    out["ok"] = res.ok;
    std::cout << out.dump() << "\n";
  } else if (opt.cfg.format == "csv") {
    std::cout << "p,n,abs_sum,bound,ok\n"
              << opt.p << "," << f.num_vars << "," << fmt_double(res.abs_sum) << ","
              << fmt_double(res.bound) << "," << (res.ok ? 1 : 0) << "\n";
  } else {
    std::cout << "S = " << fmt_double(S.real()) << " + " << fmt_double(S.imag())
              << "i\n|S| = " << fmt_double(res.abs_sum)
              << ", bound = " << fmt_double(res.bound) << " -> "
              << (res.ok ? "pass" : "FAIL") << "\n";
  }
  return res.ok ? 0 : 3;
}

// --- diagonal ---

struct DiagonalOpts {
  RunConfig cfg;
  std::vector<std::int64_t> coeffs;
  std::vector<std::uint32_t> exps;
  std::int64_t rhs = 1;
  std::int64_t p = 0;
  int n = 1;
};

int cmd_diagonal(const DiagonalOpts& opt) {
  validate_config(opt.cfg);
  const zetalab::FieldSpec field = zetalab::FieldSpec::build(opt.p, opt.n);
  const std::uint64_t N = zetalab::count_diagonal(
      opt.coeffs, opt.exps, field.from_int(opt.rhs), field, opt.cfg.budget);
  if (opt.cfg.format == "csv") {
    std::cout << "N\n" << N << "\n";
  } else {
    std::cout << json{{"N", N}}.dump() << "\n";
  }
  return 0;
}

int run_guarded(int& rc, const std::function<int()>& fn) {
  try {
    rc = fn();
  } catch (const zetalab::Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.category()) {
      case zetalab::ErrorCategory::usage: rc = 1; break;
      case zetalab::ErrorCategory::resource: rc = 2; break;
      case zetalab::ErrorCategory::check: rc = 3; break;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 1;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point counts, zeta functions, and character sums over finite fields"};
  app.require_subcommand(1);
  int rc = 0;

  CountOpts count_opt;
  CLI::App* count = app.add_subcommand("count", "Count points of a polynomial system");
  count->add_option("-e,--expr", count_opt.exprs, "Inline polynomial (repeatable)");
  count->add_option("-f,--file", count_opt.file, "File with one polynomial per line");
  count->add_option("-p,--prime", count_opt.p, "Field characteristic")->required();
  count->add_option("-n,--ext", count_opt.n, "Extension degree");
  count->add_flag("--projective", count_opt.projective,
                  "Count in projective space (homogeneous system)");
  add_config(count, count_opt.cfg);
  count->callback([&] { run_guarded(rc, [&] { return cmd_count(count_opt); }); });

  WeilOpts weil_opt;
  CLI::App* weil =
      app.add_subcommand("weil", "Zeta function and Weil checks for y^2 = f(x)");
  weil->add_option("-e,--expr", weil_opt.expr, "Univariate f(x)");
  weil->add_option("-f,--file", weil_opt.file, "File with f(x) on one line");
  weil->add_option("-p,--prime", weil_opt.p, "Odd field characteristic")->required();
  weil->add_option("-B,--depth", weil_opt.B, "Series depth (default 2g+2)");
  add_config(weil, weil_opt.cfg);
  weil->callback([&] { run_guarded(rc, [&] { return cmd_weil(weil_opt); }); });

  GaussOpts gauss_opt;
  CLI::App* gauss = app.add_subcommand(
      "gauss", "Two-squares decomposition and closed-form counts per prime");
  gauss->add_option("--max", gauss_opt.max, "Upper bound on p");
  add_config(gauss, gauss_opt.cfg);
  gauss->callback([&] { run_guarded(rc, [&] { return cmd_gauss(gauss_opt); }); });

  TauOpts tau_opt;
  CLI::App* tau = app.add_subcommand("tau", "Ramanujan tau expansion and identities");
  tau->add_option("-B,--depth", tau_opt.B, "Expansion order");
  tau->add_flag("--all-checks", tau_opt.all_checks,
                "Run multiplicativity, Euler recursion, and bound suites");
  add_config(tau, tau_opt.cfg);
  tau->callback([&] { run_guarded(rc, [&] { return cmd_tau(tau_opt); }); });

  ExpsumOpts expsum_opt;
  CLI::App* expsum =
      app.add_subcommand("expsum", "Exponential sum of a polynomial mod p");
  expsum->add_option("-e,--expr", expsum_opt.expr, "Polynomial over Z")->required();
  expsum->add_option("-p,--prime", expsum_opt.p, "Prime modulus")->required();
  add_config(expsum, expsum_opt.cfg);
  expsum->callback([&] { run_guarded(rc, [&] { return cmd_expsum(expsum_opt); }); });

  DiagonalOpts diag_opt;
  CLI::App* diag =
      app.add_subcommand("diagonal", "Count solutions of sum a_i x_i^{n_i} = rhs");
  diag->add_option("--coeffs", diag_opt.coeffs, "Coefficients a_1..a_m")->required();
  diag->add_option("--exps", diag_opt.exps, "Exponents n_1..n_m")->required();
  diag->add_option("--rhs", diag_opt.rhs, "Right-hand side (integer)");
  diag->add_option("-p,--prime", diag_opt.p, "Field characteristic")->required();
  diag->add_option("-n,--ext", diag_opt.n, "Extension degree");
  add_config(diag, diag_opt.cfg);
  diag->callback([&] { run_guarded(rc, [&] { return cmd_diagonal(diag_opt); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return rc;
}
