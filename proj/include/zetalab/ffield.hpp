#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"

namespace zetalab {

/// Policy bounds. These are defaults, not hard constants: enumeration entry
/// points accept an explicit limit, and the CLI threads its configured budget
/// through to them.
inline constexpr std::int64_t kMaxPrime = std::int64_t{1} << 31;
inline constexpr std::uint64_t kEnumLimit = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kMaxCardinality = std::uint64_t{1} << 62;
inline constexpr int kMaxModulusDegree = 32;

inline bool is_prime(std::int64_t m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  for (std::int64_t d = 3; d * d <= m; d += 2)
    if (m % d == 0) return false;
  return true;
}

/// Element of F_{p^n}: coefficient vector of length n, entry i is the
/// coefficient of x^i, each reduced into [0, p).
struct FieldElement {
  std::vector<std::int32_t> c;
  bool operator==(const FieldElement&) const = default;
};

/// F_{p^n} realized as F_p[x] modulo the lexicographically smallest monic
/// irreducible of degree n (coefficient tuples ordered as base-p integers,
/// constant term least significant). Deterministic across runs.
class FieldSpec {
public:
  static FieldSpec build(std::int64_t p, int n) {
    if (p >= kMaxPrime)
      throw SizeExceeded("p = " + std::to_string(p) + " exceeds policy bound 2^31");
    if (!is_prime(p))
      throw CompositeModulus(std::to_string(p) + " is not prime");
    if (n < 1) throw OutOfRange("extension degree must be >= 1");
    if (n > kMaxModulusDegree)
      throw SizeExceeded("extension degree " + std::to_string(n) + " exceeds policy bound " +
                         std::to_string(kMaxModulusDegree));
    FieldSpec spec;
    spec.p_ = p;
    spec.n_ = n;
    spec.q_ = 1;
    for (int i = 0; i < n; ++i) {
      if (spec.q_ > kMaxCardinality / static_cast<std::uint64_t>(p))
        throw SizeExceeded("p^n overflows the configured integer width");
      spec.q_ *= static_cast<std::uint64_t>(p);
    }
    spec.small_ = (p <= (std::int64_t{1} << 26));
    spec.mod_ = find_modulus(p, n);
    return spec;
  }

  std::int64_t p() const { return p_; }
  int n() const { return n_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::int32_t>& modulus() const { return mod_; }

  FieldElement zero() const { return FieldElement{std::vector<std::int32_t>(n_, 0)}; }

  FieldElement one() const {
    FieldElement e = zero();
    e.c[0] = 1;
    return e;
  }

  /// Embeds an integer into the prime subfield.
  FieldElement from_int(std::int64_t v) const {
    FieldElement e = zero();
    std::int64_t r = v % p_;
    if (r < 0) r += p_;
    e.c[0] = static_cast<std::int32_t>(r);
    return e;
  }

  /// Canonicalizes an arbitrary coefficient list (reduced mod p, padded or
  /// reduced by the modulus to length n).
  FieldElement element(const std::vector<std::int64_t>& coeffs) const {
    FieldElement e = zero();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      std::int64_t r = coeffs[i] % p_;
      if (r < 0) r += p_;
      if (i < static_cast<std::size_t>(n_)) {
        e.c[i] = static_cast<std::int32_t>(r);
      } else if (r != 0) {
        // reduce x^i by the modulus: x^n = -(lower part)
        FieldElement xi = monomial(i);
        FieldElement t = mul(xi, from_int(r));
        e = add(e, t);
      }
    }
    return e;
  }

  bool is_zero(const FieldElement& a) const {
    for (auto v : a.c)
      if (v != 0) return false;
    return true;
  }

  /// Base-p integer value of the coefficient vector; doubles as the
  /// enumeration position.
  std::uint64_t index(const FieldElement& a) const {
    std::uint64_t idx = 0;
    for (int i = n_ - 1; i >= 0; --i)
      idx = idx * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(a.c[i]);
    return idx;
  }

  FieldElement from_index(std::uint64_t idx) const {
    FieldElement e = zero();
    for (int i = 0; i < n_ && idx != 0; ++i) {
      e.c[i] = static_cast<std::int32_t>(idx % static_cast<std::uint64_t>(p_));
      idx /= static_cast<std::uint64_t>(p_);
    }
    return e;
  }

  /// Odometer step in base-p counting order; returns false when the counter
  /// wraps past the last element (leaving it at zero).
  bool next_element(FieldElement& e) const {
    for (int i = 0; i < n_; ++i) {
      if (++e.c[i] < p_) return true;
      e.c[i] = 0;
    }
    return false;
  }

  FieldElement add(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = a;
    for (int i = 0; i < n_; ++i) {
      r.c[i] += b.c[i];
      if (r.c[i] >= p_) r.c[i] -= static_cast<std::int32_t>(p_);
    }
    return r;
  }

  FieldElement sub(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = a;
    for (int i = 0; i < n_; ++i) {
      r.c[i] -= b.c[i];
      if (r.c[i] < 0) r.c[i] += static_cast<std::int32_t>(p_);
    }
    return r;
  }

  FieldElement neg(const FieldElement& a) const { return sub(zero(), a); }

  void add_inplace(FieldElement& a, const FieldElement& b) const {
    for (int i = 0; i < n_; ++i) {
      a.c[i] += b.c[i];
      if (a.c[i] >= p_) a.c[i] -= static_cast<std::int32_t>(p_);
    }
  }

  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = zero();
    mul_into(a, b, r);
    return r;
  }

  /// Multiplication writing into a preallocated result (no heap traffic when
  /// `out` already has length n); safe to alias with either operand.
  void mul_into(const FieldElement& a, const FieldElement& b, FieldElement& out) const {
    if (n_ == 1) {
      std::int64_t v = (static_cast<std::int64_t>(a.c[0]) * b.c[0]) % p_;
      out.c.assign(1, static_cast<std::int32_t>(v));
      return;
    }
    std::int64_t acc[2 * kMaxModulusDegree] = {0};
    const int n = n_;
    if (small_) {
      for (int i = 0; i < n; ++i) {
        const std::int64_t ai = a.c[i];
        if (ai == 0) continue;
        for (int j = 0; j < n; ++j) acc[i + j] += ai * b.c[j];
      }
    } else {
      for (int i = 0; i < n; ++i) {
        const std::int64_t ai = a.c[i];
        if (ai == 0) continue;
        for (int j = 0; j < n; ++j) acc[i + j] += (ai * b.c[j]) % p_;
      }
    }
    // Reduce by the monic modulus from the top down.
    for (int k = 2 * n - 2; k >= n; --k) {
      std::int64_t c = acc[k] % p_;
      if (c < 0) c += p_;
      if (c == 0) continue;
      if (small_) {
        for (int j = 0; j < n; ++j) acc[k - n + j] -= c * mod_[j];
      } else {
        for (int j = 0; j < n; ++j) acc[k - n + j] -= (c * mod_[j]) % p_;
      }
    }
    out.c.resize(n);
    for (int i = 0; i < n; ++i) {
      std::int64_t v = acc[i] % p_;
      if (v < 0) v += p_;
      out.c[i] = static_cast<std::int32_t>(v);
    }
  }

  FieldElement pow(const FieldElement& a, std::uint64_t k) const {
    FieldElement base = a;
    FieldElement r = one();
    while (k != 0) {
      if (k & 1) mul_into(r, base, r);
      mul_into(base, base, base);
      k >>= 1;
    }
    return r;
  }

  FieldElement inv(const FieldElement& a) const {
    if (is_zero(a)) throw DivisionByZero("inverse of zero");
    return pow(a, q_ - 2);
  }

  FieldElement div(const FieldElement& a, const FieldElement& b) const {
    return mul(a, inv(b));
  }

  /// a -> a^p, the base-field Frobenius generating Gal(F_{p^n}/F_p).
  FieldElement frobenius(const FieldElement& a) const {
    return pow(a, static_cast<std::uint64_t>(p_));
  }

  /// Absolute trace Tr(a) = a + a^p + ... + a^{p^{n-1}}, a residue in [0, p).
  std::int64_t trace(const FieldElement& a) const {
    FieldElement s = a;
    FieldElement t = a;
    for (int i = 1; i < n_; ++i) {
      t = frobenius(t);
      s = add(s, t);
    }
    return s.c[0];
  }

  /// Enumeration-least element of multiplicative order q-1; order certified
  /// by g^{(q-1)/l} != 1 for each prime l dividing q-1.
  FieldElement generator(std::uint64_t limit = kEnumLimit) const {
    if (q_ > limit)
      throw SizeExceeded("generator search requires q <= " + std::to_string(limit));
    std::vector<std::uint64_t> primes;
    std::uint64_t m = q_ - 1;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
      if (m % d == 0) {
        primes.push_back(d);
        while (m % d == 0) m /= d;
      }
    }
    if (m > 1) primes.push_back(m);
    const FieldElement unit = one();
    for (std::uint64_t idx = 1; idx < q_; ++idx) {
      FieldElement g = from_index(idx);
      bool ok = true;
      for (std::uint64_t l : primes) {
        if (pow(g, (q_ - 1) / l) == unit) {
          ok = false;
          break;
        }
      }
      if (ok) return g;
    }
    throw InconsistentCounts("no generator found; field construction is broken");
  }

private:
  FieldSpec() = default;

  FieldElement monomial(std::size_t i) const {
    // x^i reduced, computed by repeated multiplication by x.
    if (i == 0) return one();
    if (n_ == 1) return zero();  // the degree-1 modulus is x itself
    FieldElement x = zero();
    x.c[1] = 1;
    FieldElement r = one();
    for (std::size_t j = 0; j < i; ++j) r = mul(r, x);
    return r;
  }

  // Remainder of a monic candidate modulo a monic divisor, over F_p.
  static bool divides(const std::vector<std::int32_t>& divisor,
                      std::vector<std::int32_t> rem, std::int64_t p) {
    const int dd = static_cast<int>(divisor.size()) - 1;
    for (int k = static_cast<int>(rem.size()) - 1; k >= dd; --k) {
      const std::int64_t c = rem[k];
      if (c == 0) continue;
      for (int j = 0; j < dd; ++j) {
        std::int64_t v = (rem[k - dd + j] - c * divisor[j]) % p;
        if (v < 0) v += p;
        rem[k - dd + j] = static_cast<std::int32_t>(v);
      }
      rem[k] = 0;
    }
    for (int j = 0; j < dd; ++j)
      if (rem[j] != 0) return false;
    return true;
  }

  static std::vector<std::int32_t> find_modulus(std::int64_t p, int n) {
    if (n == 1) return {0, 1};  // x itself
    // Candidates x^n + lower, lower part swept in base-p order; irreducibility
    // by trial division against every monic divisor of degree <= n/2.
    std::vector<std::int32_t> cand(n + 1, 0);
    cand[n] = 1;
    for (std::uint64_t k = 0;; ++k) {
      std::uint64_t t = k;
      for (int i = 0; i < n; ++i) {
        cand[i] = static_cast<std::int32_t>(t % static_cast<std::uint64_t>(p));
        t /= static_cast<std::uint64_t>(p);
      }
      if (t != 0)
        throw InconsistentCounts("irreducible search exhausted; unreachable for prime p");
      bool irreducible = true;
      for (int d = 1; irreducible && 2 * d <= n; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
        std::vector<std::int32_t> divisor(d + 1, 0);
        divisor[d] = 1;
        for (std::uint64_t j = 0; j < count; ++j) {
          std::uint64_t u = j;
          for (int i = 0; i < d; ++i) {
            divisor[i] = static_cast<std::int32_t>(u % static_cast<std::uint64_t>(p));
            u /= static_cast<std::uint64_t>(p);
          }
          if (divides(divisor, cand, p)) {
            irreducible = false;
            break;
          }
        }
      }
      if (irreducible) return cand;
    }
  }

  std::int64_t p_ = 0;
  int n_ = 0;
  std::uint64_t q_ = 0;
  bool small_ = true;
  std::vector<std::int32_t> mod_;
};

/// All q elements in base-p counting order. Bounded by `limit`; use
/// FieldSpec::next_element directly for streaming enumeration.
inline std::vector<FieldElement> enumerate(const FieldSpec& spec,
                                           std::uint64_t limit = kEnumLimit) {
  if (spec.q() > limit)
    throw SizeExceeded("enumeration of q = " + std::to_string(spec.q()) +
                       " elements exceeds limit " + std::to_string(limit));
  std::vector<FieldElement> out;
  out.reserve(static_cast<std::size_t>(spec.q()));
  FieldElement e = spec.zero();
  do {
    out.push_back(e);
  } while (spec.next_element(e));
  return out;
}

/// Legendre symbol (a/p) in {-1, 0, +1}, via Euler's criterion.
inline int legendre(std::int64_t a, std::int64_t p) {
  if (p == 2) throw EvenPrime("Legendre symbol requires an odd prime");
  if (!is_prime(p)) throw CompositeModulus(std::to_string(p) + " is not prime");
  std::int64_t base = a % p;
  if (base < 0) base += p;
  if (base == 0) return 0;
  std::int64_t r = 1;
  std::int64_t e = (p - 1) / 2;
  while (e != 0) {
    if (e & 1) r = (r * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace zetalab
