#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace zetalab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Dense polynomial over Z, constant term first, no trailing zeros.
using IntPoly = std::vector<Int>;
using RatPoly = std::vector<Rat>;

inline void poly_trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int poly_degree(const IntPoly& f) { return static_cast<int>(f.size()) - 1; }

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  poly_trim(r);
  return r;
}

inline IntPoly poly_scale(const IntPoly& a, const Int& c) {
  if (c == 0) return {};
  IntPoly r = a;
  for (auto& v : r) v *= c;
  return r;
}

inline bool poly_equal(const IntPoly& a, const IntPoly& b) {
  IntPoly x = a, y = b;
  poly_trim(x);
  poly_trim(y);
  return x == y;
}

inline Rat rat_pow(const Rat& base, int e) {
  Rat r = 1;
  Rat b = base;
  int k = e;
  if (k < 0) {
    b = Rat(1) / b;
    k = -k;
  }
  while (k != 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

/// Degree of the monic gcd over Q (0 means coprime); classical Euclid with
/// exact rational arithmetic, adequate at desk-scale degrees.
inline int poly_gcd_degree(const IntPoly& fa, const IntPoly& fb) {
  RatPoly a(fa.begin(), fa.end()), b(fb.begin(), fb.end());
  auto trim = [](RatPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    while (a.size() >= b.size()) {
      const Rat c = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
      a.pop_back();
      trim(a);
      if (a.size() < b.size()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

inline void ratpoly_trim(RatPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

/// Remainder of a by b over Q (b nonzero).
inline RatPoly ratpoly_mod(RatPoly a, const RatPoly& b) {
  ratpoly_trim(a);
  while (a.size() >= b.size()) {
    const Rat c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    ratpoly_trim(a);
  }
  return a;
}

/// Quotient a / b over Q; sets `exact` to false when the remainder is nonzero.
inline RatPoly ratpoly_div(RatPoly a, const RatPoly& b, bool& exact) {
  ratpoly_trim(a);
  exact = true;
  if (a.size() < b.size()) {
    exact = a.empty();
    return {};
  }
  RatPoly quot(a.size() - b.size() + 1, Rat(0));
  while (a.size() >= b.size()) {
    const Rat c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    quot[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    ratpoly_trim(a);
  }
  if (!a.empty()) exact = false;
  return quot;
}

/// Monic gcd over Q.
inline RatPoly ratpoly_gcd(RatPoly a, RatPoly b) {
  ratpoly_trim(a);
  ratpoly_trim(b);
  while (!b.empty()) {
    RatPoly r = ratpoly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rat inv = Rat(1) / a.back();
    for (auto& c : a) c *= inv;
  }
  return a;
}

/// Binomial coefficient with arbitrary-precision arithmetic.
inline Int binomial(const Int& n, std::uint64_t k) {
  Int r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= n - Int(i);
    r /= Int(i + 1);
  }
  return r;
}

/// Solves A x = rhs over Q by Gaussian elimination. Free variables are set
/// to zero (deterministic). Returns false when the system is inconsistent.
inline bool solve_rational(std::vector<std::vector<Rat>> A, std::vector<Rat> rhs,
                           std::vector<Rat>& solution) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows == 0 ? 0 : A[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && A[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(A[pivot], A[r]);
    std::swap(rhs[pivot], rhs[r]);
    const Rat inv = Rat(1) / A[r][c];
    for (std::size_t j = c; j < cols; ++j) A[r][j] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      const Rat factor = A[i][c];
      for (std::size_t j = c; j < cols; ++j) A[i][j] -= factor * A[r][j];
      rhs[i] -= factor * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) return false;
  solution.assign(cols, Rat(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) solution[pivot_col[i]] = rhs[i];
  return true;
}

}  // namespace zetalab
