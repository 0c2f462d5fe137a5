#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/ffield.hpp"
#include "zetalab/poly.hpp"
#include "zetalab/varieties.hpp"

namespace zetalab {

using ComplexValue = std::complex<double>;

/// Discrete-log and trace tables for one field, anchored at the deterministic
/// generator from ffield. Characters, Gauss sums, and Jacobi sums all read
/// from here, so results are reproducible across runs.
class CharacterTable {
public:
  explicit CharacterTable(const FieldSpec& field, std::uint64_t limit = kEnumLimit)
      : field_(field) {
    const std::uint64_t q = field.q();
    if (q > limit)
      throw SizeExceeded("character table for q = " + std::to_string(q) +
                         " exceeds limit " + std::to_string(limit));
    gen_ = field.generator(limit);
    dlog_.assign(q, -1);
    FieldElement x = field_.one();
    for (std::uint64_t j = 0; j + 1 < q; ++j) {
      dlog_[field_.index(x)] = static_cast<std::int64_t>(j);
      field_.mul_into(x, gen_, x);
    }
    trace_.resize(q);
    FieldElement e = field_.zero();
    do {
      trace_[field_.index(e)] = field_.trace(e);
    } while (field_.next_element(e));
    const double tau = 2.0 * std::numbers::pi;
    mult_unit_.reserve(q - 1);
    for (std::uint64_t j = 0; j + 1 < q; ++j) {
      const double arg = tau * static_cast<double>(j) / static_cast<double>(q - 1);
      mult_unit_.emplace_back(std::cos(arg), std::sin(arg));
    }
    add_unit_.reserve(static_cast<std::size_t>(field.p()));
    for (std::int64_t r = 0; r < field.p(); ++r) {
      const double arg = tau * static_cast<double>(r) / static_cast<double>(field.p());
      add_unit_.emplace_back(std::cos(arg), std::sin(arg));
    }
  }

  const FieldSpec& field() const { return field_; }
  const FieldElement& generator_element() const { return gen_; }

  /// Discrete log base the generator; -1 for the zero element.
  std::int64_t dlog(const FieldElement& a) const { return dlog_[field_.index(a)]; }

  /// chi_k(g^j) = exp(2 pi i k j / (q-1)); chi_k(0) = 0 for every k,
  /// including the trivial character.
  ComplexValue chi(std::uint64_t k, const FieldElement& a) const {
    const std::int64_t j = dlog_[field_.index(a)];
    if (j < 0) return {0.0, 0.0};
    return mult_unit_[(k * static_cast<std::uint64_t>(j)) % (field_.q() - 1)];
  }

  /// psi(a) = exp(2 pi i Tr(a) / p).
  ComplexValue psi(const FieldElement& a) const {
    return add_unit_[static_cast<std::size_t>(trace_[field_.index(a)])];
  }

private:
  FieldSpec field_;
  FieldElement gen_;
  std::vector<std::int64_t> dlog_;
  std::vector<std::int64_t> trace_;
  std::vector<ComplexValue> mult_unit_;
  std::vector<ComplexValue> add_unit_;
};

/// Multiplicative character chi_k bound to a table.
class MultChar {
public:
  MultChar(const CharacterTable& table, std::uint64_t k) : table_(&table), k_(k) {
    if (k >= table.field().q() - 1)
      throw OutOfRange("character index must lie in [0, q-1)");
  }
  ComplexValue operator()(const FieldElement& a) const { return table_->chi(k_, a); }
  const CharacterTable& table() const { return *table_; }
  std::uint64_t k() const { return k_; }
  bool trivial() const { return k_ == 0; }

private:
  const CharacterTable* table_;
  std::uint64_t k_;
};

/// psi(a) without building a table.
inline ComplexValue additive_char(const FieldSpec& field, const FieldElement& a) {
  const double arg = 2.0 * std::numbers::pi * static_cast<double>(field.trace(a)) /
                     static_cast<double>(field.p());
  return {std::cos(arg), std::sin(arg)};
}

/// g(chi) = sum_{a != 0} chi(a) psi(a); -1 for the trivial character,
/// modulus sqrt(q) otherwise.
inline ComplexValue gauss_sum(const MultChar& chi) {
  const CharacterTable& table = chi.table();
  const FieldSpec& field = table.field();
  ComplexValue sum{0.0, 0.0};
  FieldElement a = field.zero();
  do {
    const std::int64_t j = table.dlog(a);
    if (j < 0) continue;
    sum += chi(a) * table.psi(a);
  } while (field.next_element(a));
  return sum;
}

/// J(chi1, chi2) = sum_{a + b = 1} chi1(a) chi2(b), both characters on the
/// same table.
inline ComplexValue jacobi_sum(const MultChar& chi1, const MultChar& chi2) {
  if (&chi1.table() != &chi2.table())
    throw UsageError("Jacobi sum requires characters on the same field table");
  const FieldSpec& field = chi1.table().field();
  const FieldElement one = field.one();
  ComplexValue sum{0.0, 0.0};
  FieldElement a = field.zero();
  do {
    sum += chi1(a) * chi2(field.sub(one, a));
  } while (field.next_element(a));
  return sum;
}

/// Exact count of solutions of sum_i a_i x_i^{e_i} = rhs by per-coordinate
/// representation counts convolved over the additive group.
inline std::uint64_t count_diagonal(const std::vector<std::int64_t>& coeffs,
                                    const std::vector<std::uint32_t>& exps,
                                    const FieldElement& rhs, const FieldSpec& field,
                                    std::uint64_t budget = kDefaultBudget) {
  const std::size_t m = coeffs.size();
  if (m == 0 || exps.size() != m)
    throw OutOfRange("coefficient and exponent lists must have equal nonzero length");
  const std::uint64_t q = field.q();
  if (q > budget)
    throw SizeExceeded("q = " + std::to_string(q) + " exceeds the budget");
  if (m > 1 && (m - 1) * q > budget / q)
    throw SizeExceeded("convolution cost (m-1) q^2 exceeds the budget");
  for (std::int64_t c : coeffs)
    if (c % field.p() == 0)
      throw ZeroCoefficient("diagonal coefficients must be nonzero in the field");

  const std::vector<FieldElement> elems = enumerate(field, budget);
  auto rep_counts = [&](std::int64_t a, std::uint32_t e) {
    std::vector<std::uint64_t> r(q, 0);
    const FieldElement af = field.from_int(a);
    for (const FieldElement& x : elems)
      ++r[field.index(field.mul(af, field.pow(x, e)))];
    return r;
  };

  std::vector<std::uint64_t> cur = rep_counts(coeffs[0], exps[0]);
  for (std::size_t i = 1; i < m; ++i) {
    const std::vector<std::uint64_t> ri = rep_counts(coeffs[i], exps[i]);
    std::vector<std::uint64_t> next(q, 0);
    for (std::uint64_t u = 0; u < q; ++u) {
      if (cur[u] == 0) continue;
      const FieldElement eu = elems[u];
      for (std::uint64_t v = 0; v < q; ++v) {
        if (ri[v] == 0) continue;
        next[field.index(field.add(eu, elems[v]))] += cur[u] * ri[v];
      }
    }
    cur = std::move(next);
  }
  return cur[field.index(rhs)];
}

/// S(f) = sum over (Z/p)^n of exp(2 pi i f(x)/p), accumulated in a fixed
/// enumeration order; absolute error is bounded by about n p^n 2^{-50}.
inline ComplexValue exp_sum(const Polynomial& f, std::int64_t p,
                            std::uint64_t budget = kDefaultBudget) {
  if (!is_prime(p)) throw CompositeModulus(std::to_string(p) + " is not prime");
  const int n = f.num_vars;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > budget / static_cast<std::uint64_t>(p))
      throw SizeExceeded("p^n exceeds the budget");
    total *= static_cast<std::uint64_t>(p);
  }
  std::vector<ComplexValue> unit;
  unit.reserve(static_cast<std::size_t>(p));
  for (std::int64_t r = 0; r < p; ++r) {
    const double arg = 2.0 * std::numbers::pi * static_cast<double>(r) /
                       static_cast<double>(p);
    unit.emplace_back(std::cos(arg), std::sin(arg));
  }
  ComplexValue sum{0.0, 0.0};
  std::vector<std::int64_t> xs(n, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    sum += unit[static_cast<std::size_t>(eval_mod_p(f, xs, p))];
    for (int i = 0; i < n; ++i) {
      if (++xs[i] < p) break;
      xs[i] = 0;
    }
  }
  return sum;
}

struct DeligneSumResult {
  double abs_sum = 0;
  double bound = 0;
  bool ok = false;
};

namespace detail {

inline Polynomial partial_derivative(const Polynomial& f, int var) {
  std::vector<Term> terms;
  for (const Term& t : f.terms) {
    if (t.exps[var] == 0) continue;
    Term d = t;
    d.coeff = t.coeff * static_cast<std::int64_t>(t.exps[var]);
    --d.exps[var];
    terms.push_back(std::move(d));
  }
  return make_polynomial(f.num_vars, terms);
}

/// Looks for a common nontrivial zero of the partials of the top-degree part
/// over F_p and F_{p^2}. Finding one (or a partial vanishing identically mod
/// p) refutes the smoothness screen.
inline bool smoothness_screen(const Polynomial& top, std::int64_t p,
                              std::uint64_t budget) {
  const int n = top.num_vars;
  std::vector<Polynomial> partials;
  for (int i = 0; i < n; ++i) {
    Polynomial d = detail::partial_derivative(top, i);
    bool zero_mod_p = true;
    for (const Term& t : d.terms)
      if (t.coeff % p != 0) zero_mod_p = false;
    if (zero_mod_p) return false;
    partials.push_back(std::move(d));
  }
  for (int ext = 1; ext <= 2; ++ext) {
    const FieldSpec field = FieldSpec::build(p, ext);
    const std::uint64_t q = field.q();
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
      if (total > budget / q) throw SizeExceeded("smoothness screen exceeds the budget");
      total *= q;
    }
    std::vector<FieldElement> xs(n, field.zero());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      if (idx != 0) {  // skip the origin
        bool all_vanish = true;
        for (const Polynomial& d : partials) {
          if (!field.is_zero(eval_field(d, xs, field))) {
            all_vanish = false;
            break;
          }
        }
        if (all_vanish) return false;
      }
      for (int i = 0; i < n; ++i) {
        if (field.next_element(xs[i])) break;
      }
    }
  }
  return true;
}

}  // namespace detail

/// Checks |S(f)| <= (d-1)^n p^{n/2} after screening the top-degree part of f
/// for smoothness over F_p and F_{p^2}. The screen is a desk-scale sufficient
/// check, not a proof; when it fails the bound is not asserted.
inline DeligneSumResult deligne_sum_check(const Polynomial& f, std::int64_t p,
                                          std::uint64_t budget = kDefaultBudget) {
  if (!is_prime(p)) throw CompositeModulus(std::to_string(p) + " is not prime");
  const int n = f.num_vars;
  // Degree and top part are those of f mod p; integer terms divisible by p
  // are invisible to the sum.
  Polynomial reduced;
  {
    std::vector<Term> kept;
    for (const Term& t : f.terms)
      if (t.coeff % p != 0) kept.push_back(t);
    reduced = make_polynomial(n, kept);
  }
  const int d = total_degree(reduced);
  if (reduced.terms.empty() || d < 1 || d >= p)
    throw HypothesisNotMet("the bound requires 1 <= deg(f mod p) < p");
  Polynomial top;
  {
    std::vector<Term> top_terms;
    for (const Term& t : reduced.terms)
      if (total_degree(t) == d) top_terms.push_back(t);
    top = make_polynomial(n, top_terms);
  }
  if (!detail::smoothness_screen(top, p, budget))
    throw SmoothnessUnverified(
        "top-degree part fails the smoothness screen over F_p / F_{p^2}");
  DeligneSumResult result;
  result.abs_sum = std::abs(exp_sum(f, p, budget));
  result.bound = std::pow(static_cast<double>(d - 1), n) *
                 std::pow(static_cast<double>(p), n / 2.0);
  result.ok = result.abs_sum <= result.bound + 1e-6;
  return result;
}

}  // namespace zetalab
