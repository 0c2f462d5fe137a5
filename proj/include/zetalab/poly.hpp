#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/ffield.hpp"

namespace zetalab {

/// One monomial: coeff * prod_i x_i^{exps[i]}.
struct Term {
  std::int64_t coeff;
  std::vector<std::uint32_t> exps;

  bool operator==(const Term&) const = default;
};

enum class Ambient { affine, projective };

/// Multivariate polynomial with integer coefficients in canonical form:
/// like terms combined, zero terms dropped, exponent vectors sorted in
/// descending lexicographic order.
struct Polynomial {
  int num_vars = 0;
  std::vector<Term> terms;

  bool operator==(const Polynomial&) const = default;
};

inline Polynomial make_polynomial(int num_vars, const std::vector<Term>& raw) {
  if (num_vars < 1) throw OutOfRange("a polynomial needs at least one variable");
  std::map<std::vector<std::uint32_t>, std::int64_t> combined;
  for (const Term& t : raw) {
    if (t.exps.size() != static_cast<std::size_t>(num_vars))
      throw OutOfRange("exponent vector length does not match the variable count");
    combined[t.exps] += t.coeff;
  }
  Polynomial poly;
  poly.num_vars = num_vars;
  for (auto it = combined.rbegin(); it != combined.rend(); ++it)
    if (it->second != 0) poly.terms.push_back(Term{it->second, it->first});
  return poly;
}

inline int total_degree(const Term& t) {
  int d = 0;
  for (auto e : t.exps) d += static_cast<int>(e);
  return d;
}

inline int total_degree(const Polynomial& poly) {
  int d = 0;
  for (const Term& t : poly.terms) d = std::max(d, total_degree(t));
  return d;
}

inline bool is_homogeneous(const Polynomial& poly) {
  if (poly.terms.empty()) return true;
  const int d = total_degree(poly.terms.front());
  for (const Term& t : poly.terms)
    if (total_degree(t) != d) return false;
  return true;
}

/// System of polynomials cutting out a variety in A^m or P^{m-1}.
/// Invariants enforced at construction: canonical nonzero polynomials,
/// homogeneous throughout if projective.
struct PolySystem {
  int num_vars = 0;
  Ambient ambient = Ambient::affine;
  std::vector<Polynomial> polys;
  std::vector<std::string> var_names;  // optional; defaults applied by printers
};

inline PolySystem make_system(int num_vars, Ambient ambient,
                              const std::vector<Polynomial>& polys,
                              std::vector<std::string> var_names = {}) {
  if (num_vars < 1) throw OutOfRange("a system needs at least one variable");
  PolySystem sys;
  sys.num_vars = num_vars;
  sys.ambient = ambient;
  sys.var_names = std::move(var_names);
  for (const Polynomial& raw : polys) {
    Polynomial poly = make_polynomial(num_vars, raw.terms);
    if (poly.terms.empty())
      throw UsageError("system contains an identically zero polynomial");
    if (ambient == Ambient::projective && !is_homogeneous(poly))
      throw NotHomogeneous("projective systems require homogeneous polynomials");
    sys.polys.push_back(std::move(poly));
  }
  return sys;
}

/// Evaluation over the prime field: coordinates are residues in [0, p).
inline std::int64_t eval_mod_p(const Polynomial& poly,
                               const std::vector<std::int64_t>& xs, std::int64_t p) {
  std::int64_t sum = 0;
  for (const Term& t : poly.terms) {
    std::int64_t v = t.coeff % p;
    if (v < 0) v += p;
    for (int i = 0; i < poly.num_vars && v != 0; ++i) {
      std::uint32_t e = t.exps[i];
      if (e == 0) continue;
      std::int64_t base = xs[i];
      std::int64_t pw = 1;
      while (e != 0) {
        if (e & 1) pw = (pw * base) % p;
        base = (base * base) % p;
        e >>= 1;
      }
      v = (v * pw) % p;
    }
    sum = (sum + v) % p;
  }
  return sum;
}

/// Evaluation over an extension field.
inline FieldElement eval_field(const Polynomial& poly,
                               const std::vector<FieldElement>& xs,
                               const FieldSpec& field) {
  FieldElement sum = field.zero();
  for (const Term& t : poly.terms) {
    FieldElement v = field.from_int(t.coeff);
    for (int i = 0; i < poly.num_vars; ++i) {
      if (t.exps[i] == 0) continue;
      if (field.is_zero(v)) break;
      v = field.mul(v, field.pow(xs[i], t.exps[i]));
    }
    sum = field.add(sum, v);
  }
  return sum;
}

// --- univariate polynomials over F_p (constant-first coefficient lists) ---

inline std::vector<std::int64_t> upoly_reduce(const std::vector<std::int64_t>& f,
                                              std::int64_t p) {
  std::vector<std::int64_t> r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    r[i] = f[i] % p;
    if (r[i] < 0) r[i] += p;
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

inline std::vector<std::int64_t> upoly_derivative(const std::vector<std::int64_t>& f,
                                                  std::int64_t p) {
  std::vector<std::int64_t> d;
  for (std::size_t i = 1; i < f.size(); ++i)
    d.push_back((static_cast<std::int64_t>(i % p) * f[i]) % p);
  while (!d.empty() && d.back() == 0) d.pop_back();
  return d;
}

inline std::int64_t inv_mod_p(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, base = a % p, e = p - 2;
  if (base < 0) base += p;
  if (base == 0) throw DivisionByZero("inverse of zero mod p");
  while (e != 0) {
    if (e & 1) r = (r * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  return r;
}

/// Monic gcd over F_p by the Euclidean algorithm.
inline std::vector<std::int64_t> upoly_gcd(std::vector<std::int64_t> a,
                                           std::vector<std::int64_t> b,
                                           std::int64_t p) {
  a = upoly_reduce(a, p);
  b = upoly_reduce(b, p);
  while (!b.empty()) {
    // a mod b
    const std::int64_t lead_inv = inv_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
      const std::int64_t c = (a.back() * lead_inv) % p;
      if (c != 0) {
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
          a[shift + i] = (a[shift + i] - c * b[i]) % p;
          if (a[shift + i] < 0) a[shift + i] += p;
        }
      }
      a.pop_back();
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.size() < b.size()) break;
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    const std::int64_t lead_inv = inv_mod_p(a.back(), p);
    for (auto& c : a) c = (c * lead_inv) % p;
  }
  return a;
}

/// Hyperelliptic model y^2 = f(x) over F_p, p odd; f squarefree mod p.
struct CurveSpec {
  std::vector<std::int64_t> f;   // integer coefficients, constant term first
  std::int64_t p = 0;
  std::vector<std::int64_t> fp;  // f reduced mod p, trimmed (derived)
};

inline int genus(const CurveSpec& curve) {
  return (static_cast<int>(curve.fp.size()) - 2) / 2;  // floor((deg f - 1)/2)
}

inline CurveSpec make_curve(const std::vector<std::int64_t>& f, std::int64_t p) {
  if (p == 2) throw EvenPrime("the model y^2 = f(x) requires odd characteristic");
  if (!is_prime(p)) throw CompositeModulus(std::to_string(p) + " is not prime");
  CurveSpec curve;
  curve.f = f;
  curve.p = p;
  curve.fp = upoly_reduce(f, p);
  if (curve.fp.size() < 2)
    throw OutOfRange("f must have degree >= 1 after reduction mod p");
  const auto g = upoly_gcd(curve.fp, upoly_derivative(curve.fp, p), p);
  if (g.size() > 1)
    throw NotSquarefree("f has a repeated root mod " + std::to_string(p));
  return curve;
}

}  // namespace zetalab
