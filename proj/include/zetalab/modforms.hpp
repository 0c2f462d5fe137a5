#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/exact.hpp"
#include "zetalab/ffield.hpp"

namespace zetalab {

inline constexpr int kMaxTauOrder = 100000;

/// tau(1..B), exact. Index 0 is unused.
struct QExpansion {
  int B = 0;
  std::vector<Int> tau;
};

/// Delta = q prod (1-q^n)^24: the eta factor is the sparse pentagonal series
/// sum_k (-1)^k q^{k(3k-1)/2}, multiplied in 24 times over dense exact
/// coefficients; tau(n) is then the coefficient of q^{n-1} in the product.
inline QExpansion delta_expand(int B) {
  if (B < 1) throw OutOfRange("truncation order must be >= 1");
  if (B > kMaxTauOrder)
    throw SizeExceeded("B = " + std::to_string(B) + " exceeds policy bound " +
                       std::to_string(kMaxTauOrder));
  const int M = B - 1;
  std::vector<std::pair<int, int>> pentagonal;  // (exponent, sign)
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t e1 = k * (3 * k - 1) / 2;
    const std::int64_t e2 = k * (3 * k + 1) / 2;
    if (e1 > M && e2 > M) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    if (k == 0) {
      pentagonal.emplace_back(0, 1);
      continue;
    }
    if (e1 <= M) pentagonal.emplace_back(static_cast<int>(e1), sign);
    if (e2 <= M) pentagonal.emplace_back(static_cast<int>(e2), sign);
  }
  std::vector<Int> acc(M + 1, Int(0));
  acc[0] = 1;
  std::vector<Int> next(M + 1, Int(0));
  for (int rep = 0; rep < 24; ++rep) {
    for (auto& v : next) v = 0;
    for (const auto& [e, sign] : pentagonal) {
      if (sign > 0) {
        for (int j = 0; j + e <= M; ++j) next[j + e] += acc[j];
      } else {
        for (int j = 0; j + e <= M; ++j) next[j + e] -= acc[j];
      }
    }
    std::swap(acc, next);
  }
  QExpansion exp;
  exp.B = B;
  exp.tau.assign(B + 1, Int(0));
  for (int n = 1; n <= B; ++n) exp.tau[n] = acc[n - 1];
  return exp;
}

/// Exact identity check with both sides reported.
struct TauIdentity {
  Int lhs;
  Int rhs;
  bool ok = false;
};

/// tau(m) tau(n) = tau(mn) for coprime m, n.
inline TauIdentity multiplicativity_check(const QExpansion& exp, std::int64_t m,
                                          std::int64_t n) {
  if (m < 1 || n < 1 || m > exp.B || n > exp.B || m * n > exp.B)
    throw OutOfRange("need 1 <= m, n and mn <= B");
  std::int64_t a = m, b = n;
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  if (a != 1) throw NotCoprime("gcd(m, n) = " + std::to_string(a));
  TauIdentity r;
  r.lhs = exp.tau[m] * exp.tau[n];
  r.rhs = exp.tau[m * n];
  r.ok = r.lhs == r.rhs;
  return r;
}

/// tau(p^{k+1}) = tau(p) tau(p^k) - p^11 tau(p^{k-1}), from the local Euler
/// factor 1 - tau(p) p^{-s} + p^{11-2s}.
inline TauIdentity euler_recursion_check(const QExpansion& exp, std::int64_t p, int k) {
  if (!is_prime(p)) throw CompositeModulus(std::to_string(p) + " is not prime");
  if (k < 1) throw OutOfRange("k must be >= 1");
  std::int64_t pk1 = 1;
  for (int i = 0; i <= k; ++i) {
    if (pk1 > exp.B / p) throw OutOfRange("p^{k+1} exceeds B");
    pk1 *= p;
  }
  Int p11 = 1;
  for (int i = 0; i < 11; ++i) p11 *= p;
  TauIdentity r;
  r.lhs = exp.tau[pk1];
  r.rhs = exp.tau[p] * exp.tau[pk1 / p] - p11 * exp.tau[pk1 / (p * p)];
  r.ok = r.lhs == r.rhs;
  return r;
}

/// tau(p)^2 < 4 p^11, exactly; the normalized trace tau(p)/(2 p^{11/2}) is
/// reporting-only.
struct TauBound {
  bool ok = false;
  double normalized = 0;
};

inline TauBound deligne_tau_check(const QExpansion& exp, std::int64_t p) {
  if (!is_prime(p)) throw CompositeModulus(std::to_string(p) + " is not prime");
  if (p > exp.B) throw OutOfRange("p exceeds B");
  Int p11 = 1;
  for (int i = 0; i < 11; ++i) p11 *= p;
  TauBound r;
  r.ok = exp.tau[p] * exp.tau[p] < Int(4) * p11;
  r.normalized = exp.tau[p].convert_to<double>() /
                 (2.0 * std::pow(static_cast<double>(p), 5.5));
  return r;
}

/// Roots of X^2 - tau(p) X + p^11: a conjugate pair of modulus p^{11/2}
/// whenever the Deligne bound holds.
inline std::pair<std::complex<double>, std::complex<double>> local_roots(
    const QExpansion& exp, std::int64_t p) {
  const TauBound bound = deligne_tau_check(exp, p);
  if (!bound.ok)
    throw BoundViolated("tau(p)^2 >= 4 p^11: local roots are real and split");
  Int p11 = 1;
  for (int i = 0; i < 11; ++i) p11 *= p;
  const double tau_p = exp.tau[p].convert_to<double>();
  const Int disc = Int(4) * p11 - exp.tau[p] * exp.tau[p];
  const double im = std::sqrt(disc.convert_to<double>()) / 2.0;
  const std::complex<double> alpha{tau_p / 2.0, im};
  return {alpha, std::conj(alpha)};
}

}  // namespace zetalab
