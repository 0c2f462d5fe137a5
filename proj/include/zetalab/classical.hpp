#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "zetalab/errors.hpp"
#include "zetalab/ffield.hpp"
#include "zetalab/poly.hpp"
#include "zetalab/varieties.hpp"

namespace zetalab {

/// p = a^2 + b^2 with a odd, b even and positive, and the diary
/// normalization a + b = 1 (mod 4), equivalently (a-1)^2 + b^2 = 0 (mod 8).
struct TwoSquares {
  std::int64_t p = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::string normalization = "gauss-diary";
};

inline TwoSquares two_squares(std::int64_t p) {
  if (!is_prime(p)) throw CompositeModulus(std::to_string(p) + " is not prime");
  if (p % 4 != 1)
    throw NotOneModFour("p = " + std::to_string(p) + " is not 1 mod 4");
  for (std::int64_t a0 = 1; a0 * a0 < p; a0 += 2) {
    const std::int64_t b2 = p - a0 * a0;
    std::int64_t b = std::llround(std::sqrt(static_cast<double>(b2)));
    while (b * b > b2) --b;
    while ((b + 1) * (b + 1) <= b2) ++b;
    if (b * b != b2) continue;
    // b is automatically even (p = 1 mod 4, a odd). Exactly one sign of a
    // satisfies a + b = 1 (mod 4): flipping a changes a + b by 2a0 = 2 (mod 4).
    for (const std::int64_t a : {a0, -a0}) {
      if (((a + b) % 4 + 4) % 4 == 1) return TwoSquares{p, a, b};
    }
  }
  throw InconsistentCounts("no two-squares decomposition found; p is not prime");
}

/// Formula value, exhaustive value, and their agreement for one prime.
struct FormulaCheck {
  std::int64_t p = 0;
  std::int64_t formula = 0;
  std::uint64_t brute = 0;
  bool ok = false;
};

namespace detail {

inline PolySystem circle_system() {
  return make_system(2, Ambient::affine,
                     {Polynomial{2,
                                 {Term{1, {2, 0}}, Term{1, {0, 2}}, Term{-1, {0, 0}}}}});
}

inline PolySystem lemniscate_system() {
  return make_system(2, Ambient::affine,
                     {Polynomial{2,
                                 {Term{1, {2, 0}}, Term{1, {0, 2}}, Term{1, {2, 2}},
                                  Term{-1, {0, 0}}}}});
}

inline PolySystem quartic_system() {
  // y^2 = x^4 - 1, the equation attained by the three-case count below; for
  // p = 2 and p = 1 (mod 4) it has the same count as y^2 = 1 - x^4.
  return make_system(2, Ambient::affine,
                     {Polynomial{2,
                                 {Term{1, {0, 2}}, Term{-1, {4, 0}}, Term{1, {0, 0}}}}});
}

inline FormulaCheck run_check(std::int64_t p, std::int64_t formula,
                              const PolySystem& sys, std::uint64_t budget) {
  FormulaCheck check;
  check.p = p;
  check.formula = formula;
  check.brute = count_affine(sys, FieldSpec::build(p, 1), budget);
  check.ok = check.formula >= 0 &&
             static_cast<std::uint64_t>(check.formula) == check.brute;
  return check;
}

}  // namespace detail

/// N(x^2 + y^2 = 1) = p - (-1/p).
inline std::int64_t circle_formula(std::int64_t p) {
  return p - legendre(-1, p);
}

inline FormulaCheck circle_check(std::int64_t p, std::uint64_t budget = kDefaultBudget) {
  return detail::run_check(p, circle_formula(p), detail::circle_system(), budget);
}

/// N(x^2 + y^2 + x^2 y^2 = 1) = p - 2a - 3 with the diary-normalized a.
inline std::int64_t lemniscate_formula(std::int64_t p) {
  return p - 2 * two_squares(p).a - 3;
}

inline FormulaCheck lemniscate_check(std::int64_t p,
                                     std::uint64_t budget = kDefaultBudget) {
  return detail::run_check(p, lemniscate_formula(p), detail::lemniscate_system(), budget);
}

/// Three-case quartic count: 2 for p = 2, p - 1 for p = 3 (mod 4), and
/// p - 1 - 2a for p = 1 (mod 4) with the diary-normalized a.
inline std::int64_t quartic_formula(std::int64_t p) {
  if (!is_prime(p)) throw CompositeModulus(std::to_string(p) + " is not prime");
  if (p == 2) return 2;
  if (p % 4 == 3) return p - 1;
  return p - 1 - 2 * two_squares(p).a;
}

inline FormulaCheck quartic_check(std::int64_t p, std::uint64_t budget = kDefaultBudget) {
  return detail::run_check(p, quartic_formula(p), detail::quartic_system(), budget);
}

/// Chevalley-Warning: p divides the affine count whenever the number of
/// variables exceeds the total degree of the system.
struct ChevalleyResult {
  std::int64_t p = 0;
  std::uint64_t count = 0;
  bool ok = false;
};

inline ChevalleyResult chevalley_warning_check(const PolySystem& sys, std::int64_t p,
                                               std::uint64_t budget = kDefaultBudget) {
  int degree_sum = 0;
  for (const Polynomial& poly : sys.polys) degree_sum += total_degree(poly);
  if (sys.num_vars <= degree_sum)
    throw HypothesisNotMet("requires num_vars > total degree (" +
                           std::to_string(sys.num_vars) + " <= " +
                           std::to_string(degree_sum) + ")");
  ChevalleyResult r;
  r.p = p;
  r.count = count_affine(sys, FieldSpec::build(p, 1), budget);
  r.ok = r.count % static_cast<std::uint64_t>(p) == 0;
  return r;
}

/// Esnault: N = 1 (mod q) for smooth projective rationally connected V.
/// The geometric hypothesis is the caller's responsibility.
struct EsnaultResult {
  std::uint64_t N = 0;
  std::uint64_t q = 0;
  std::uint64_t remainder = 0;
  bool ok = false;
};

inline EsnaultResult esnault_congruence_check(std::uint64_t N, std::uint64_t q) {
  if (q < 2) throw OutOfRange("q must be >= 2");
  EsnaultResult r;
  r.N = N;
  r.q = q;
  r.remainder = N % q;
  r.ok = r.remainder == 1;
  return r;
}

}  // namespace zetalab
