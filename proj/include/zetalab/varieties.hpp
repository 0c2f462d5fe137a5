#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/ffield.hpp"
#include "zetalab/poly.hpp"

namespace zetalab {

/// Default limit on the number of points enumerated by a single count.
/// Overridable per call; the CLI threads ZETALAB_BUDGET / --budget here.
inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// N_1..N_B for one system over the extension tower of a base field.
struct PointCountSeries {
  std::uint64_t q = 0;  // cardinality of the base field k_1
  int num_vars = 0;
  Ambient ambient = Ambient::affine;
  std::vector<std::uint64_t> counts;  // counts[i] = N_{i+1}
};

namespace detail {

inline std::uint64_t pow_checked(std::uint64_t base, int e, const char* what) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (base != 0 && r > kMaxCardinality / base)
      throw SizeExceeded(std::string(what) + " overflows the configured integer width");
    r *= base;
  }
  return r;
}

inline std::uint64_t ambient_affine_count(std::uint64_t q, int m) {
  return pow_checked(q, m, "q^m");
}

inline std::uint64_t ambient_projective_count(std::uint64_t q, int m) {
  return (pow_checked(q, m, "q^m") - 1) / (q - 1);
}

}  // namespace detail

/// Counts m-tuples with enumeration index in [begin, end) annihilating every
/// polynomial. The tuple index is sum_i index(x_i) q^i; partitioning [0, q^m)
/// into ranges and adding the partial counts reproduces the full count.
inline std::uint64_t count_affine_range(const PolySystem& sys, const FieldSpec& field,
                                        std::uint64_t begin, std::uint64_t end,
                                        std::uint64_t budget = kDefaultBudget) {
  if (sys.ambient != Ambient::affine)
    throw UsageError("count_affine requires an affine system");
  const int m = sys.num_vars;
  const std::uint64_t q = field.q();
  const std::uint64_t total = detail::ambient_affine_count(q, m);
  if (begin > end || end > total) throw OutOfRange("range outside [0, q^m)");
  if (end - begin > budget)
    throw SizeExceeded("enumerating " + std::to_string(end - begin) +
                       " points exceeds the budget of " + std::to_string(budget));
  std::uint64_t count = 0;
  if (field.n() == 1) {
    const std::int64_t p = field.p();
    std::vector<std::int64_t> xs(m);
    std::uint64_t t = begin;
    for (int i = 0; i < m; ++i) {
      xs[i] = static_cast<std::int64_t>(t % q);
      t /= q;
    }
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      bool on_variety = true;
      for (const Polynomial& poly : sys.polys) {
        if (eval_mod_p(poly, xs, p) != 0) {
          on_variety = false;
          break;
        }
      }
      count += on_variety ? 1 : 0;
      for (int i = 0; i < m; ++i) {
        if (++xs[i] < p) break;
        xs[i] = 0;
      }
    }
  } else {
    std::vector<FieldElement> xs(m);
    std::uint64_t t = begin;
    for (int i = 0; i < m; ++i) {
      xs[i] = field.from_index(t % q);
      t /= q;
    }
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      bool on_variety = true;
      for (const Polynomial& poly : sys.polys) {
        if (!field.is_zero(eval_field(poly, xs, field))) {
          on_variety = false;
          break;
        }
      }
      count += on_variety ? 1 : 0;
      for (int i = 0; i < m; ++i) {
        if (field.next_element(xs[i])) break;
      }
    }
  }
  return count;
}

/// Exact number of affine points over the given field. The whole space
/// (empty system) is counted in closed form; everything else is exhaustive.
inline std::uint64_t count_affine(const PolySystem& sys, const FieldSpec& field,
                                  std::uint64_t budget = kDefaultBudget) {
  if (sys.ambient != Ambient::affine)
    throw UsageError("count_affine requires an affine system");
  const std::uint64_t total = detail::ambient_affine_count(field.q(), sys.num_vars);
  if (sys.polys.empty()) return total;
  return count_affine_range(sys, field, 0, total, budget);
}

/// Exact number of projective points, enumerating canonical representatives
/// (first nonzero coordinate scaled to 1).
inline std::uint64_t count_projective(const PolySystem& sys, const FieldSpec& field,
                                      std::uint64_t budget = kDefaultBudget) {
  if (sys.ambient != Ambient::projective)
    throw UsageError("count_projective requires a projective system");
  for (const Polynomial& poly : sys.polys)
    if (!is_homogeneous(poly))
      throw NotHomogeneous("projective counting requires homogeneous polynomials");
  const int m = sys.num_vars;
  const std::uint64_t q = field.q();
  const std::uint64_t total = detail::ambient_projective_count(q, m);
  if (sys.polys.empty()) return total;
  if (total > budget)
    throw SizeExceeded("enumerating " + std::to_string(total) +
                       " representatives exceeds the budget of " + std::to_string(budget));
  std::uint64_t count = 0;
  std::vector<FieldElement> xs(m, field.zero());
  const bool prime = field.n() == 1;
  std::vector<std::int64_t> pxs(m, 0);
  for (int lead = 0; lead < m; ++lead) {
    // Representatives [0, ..., 0, 1, *, ..., *] with the 1 at position `lead`.
    for (int i = 0; i < m; ++i) xs[i] = field.zero();
    xs[lead] = field.one();
    const int free_vars = m - 1 - lead;
    const std::uint64_t block = detail::pow_checked(q, free_vars, "q^m");
    for (std::uint64_t j = 0; j < block; ++j) {
      bool on_variety = true;
      if (prime) {
        for (int i = 0; i < m; ++i) pxs[i] = xs[i].c[0];
        for (const Polynomial& poly : sys.polys) {
          if (eval_mod_p(poly, pxs, field.p()) != 0) {
            on_variety = false;
            break;
          }
        }
      } else {
        for (const Polynomial& poly : sys.polys) {
          if (!field.is_zero(eval_field(poly, xs, field))) {
            on_variety = false;
            break;
          }
        }
      }
      count += on_variety ? 1 : 0;
      for (int i = lead + 1; i < m; ++i) {
        if (field.next_element(xs[i])) break;
      }
    }
  }
  return count;
}

/// Number of x with f(x) a nonzero square (2 points), zero (1 point), or a
/// nonsquare (0 points), via a squares table; the quadratic character
/// convention chi(0) = 0 makes this sum_x (1 + chi(f(x))).
inline std::uint64_t hyperelliptic_affine_count(const std::vector<std::int64_t>& f,
                                                const FieldSpec& field,
                                                std::uint64_t budget = kDefaultBudget) {
  const std::uint64_t q = field.q();
  if (q > budget)
    throw SizeExceeded("enumerating " + std::to_string(q) +
                       " abscissae exceeds the budget of " + std::to_string(budget));
  const auto fp = upoly_reduce(f, field.p());
  // Mark squares: indices of z^2 as z sweeps the field.
  std::vector<bool> square(q, false);
  {
    FieldElement z = field.zero();
    FieldElement z2 = field.zero();
    do {
      field.mul_into(z, z, z2);
      square[field.index(z2)] = true;
    } while (field.next_element(z));
  }
  std::vector<FieldElement> coeff;
  coeff.reserve(fp.size());
  for (std::int64_t c : fp) coeff.push_back(field.from_int(c));
  std::uint64_t count = 0;
  FieldElement x = field.zero();
  FieldElement v = field.zero();
  do {
    v = coeff.empty() ? field.zero() : coeff.back();
    for (int k = static_cast<int>(coeff.size()) - 2; k >= 0; --k) {
      field.mul_into(v, x, v);
      field.add_inplace(v, coeff[k]);
    }
    if (field.is_zero(v)) {
      count += 1;
    } else if (square[field.index(v)]) {
      count += 2;
    }
  } while (field.next_element(x));
  return count;
}

/// Points at infinity of the smooth model: 1 for odd deg f; for even deg f,
/// 2 when the leading coefficient is a square in the field, else 0.
inline int hyperelliptic_infinity_count(const CurveSpec& curve, const FieldSpec& field) {
  const int deg = static_cast<int>(curve.fp.size()) - 1;
  if (deg % 2 == 1) return 1;
  const FieldElement lc = field.from_int(curve.fp.back());
  return field.pow(lc, (field.q() - 1) / 2) == field.one() ? 2 : 0;
}

/// Smooth-model point count of y^2 = f(x) over an extension of F_p.
inline std::uint64_t count_hyperelliptic(const CurveSpec& curve, const FieldSpec& field,
                                         std::uint64_t budget = kDefaultBudget) {
  if (field.p() != curve.p)
    throw UsageError("field characteristic does not match the curve");
  const auto g = upoly_gcd(curve.fp, upoly_derivative(curve.fp, curve.p), curve.p);
  if (g.size() > 1)
    throw NotSquarefree("f has a repeated root mod " + std::to_string(curve.p));
  return hyperelliptic_affine_count(curve.fp, field, budget) +
         static_cast<std::uint64_t>(hyperelliptic_infinity_count(curve, field));
}

namespace detail {

inline std::uint64_t pow_saturating(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (base != 0 && r > kMaxCardinality / base) return ~std::uint64_t{0};
    r *= base;
  }
  return r;
}

inline void validate_series(const PointCountSeries& series) {
  const std::uint64_t sat = ~std::uint64_t{0};
  for (std::size_t i = 0; i < series.counts.size(); ++i) {
    const std::uint64_t qn = pow_saturating(series.q, static_cast<int>(i + 1));
    if (qn == sat) continue;  // ambient bound beyond integer width, trivially satisfied
    std::uint64_t bound = pow_saturating(qn, series.num_vars);
    if (bound == sat) continue;
    if (series.ambient == Ambient::projective) bound = (bound - 1) / (qn - 1);
    if (series.counts[i] > bound)
      throw InconsistentCounts("N_" + std::to_string(i + 1) +
                               " exceeds the ambient point count");
  }
}

}  // namespace detail

/// N_1..N_B of a polynomial system over the tower k_1 = base, k_2, ..., k_B.
inline PointCountSeries n_series(const PolySystem& sys, const FieldSpec& base, int B,
                                 std::uint64_t budget = kDefaultBudget) {
  if (B < 1) throw OutOfRange("series depth must be >= 1");
  PointCountSeries series;
  series.q = base.q();
  series.num_vars = sys.num_vars;
  series.ambient = sys.ambient;
  for (int k = 1; k <= B; ++k) {
    const FieldSpec ext = FieldSpec::build(base.p(), base.n() * k);
    series.counts.push_back(sys.ambient == Ambient::affine
                                ? count_affine(sys, ext, budget)
                                : count_projective(sys, ext, budget));
  }
  detail::validate_series(series);
  return series;
}

/// N_1..N_B of the smooth model of y^2 = f(x) over F_p, ..., F_{p^B}.
inline PointCountSeries n_series(const CurveSpec& curve, int B,
                                 std::uint64_t budget = kDefaultBudget) {
  if (B < 1) throw OutOfRange("series depth must be >= 1");
  PointCountSeries series;
  series.q = static_cast<std::uint64_t>(curve.p);
  series.num_vars = 3;  // plane model bound: N <= #P^2(F_{q^n})
  series.ambient = Ambient::projective;
  for (int k = 1; k <= B; ++k) {
    const FieldSpec ext = FieldSpec::build(curve.p, k);
    series.counts.push_back(count_hyperelliptic(curve, ext, budget));
  }
  detail::validate_series(series);
  return series;
}

namespace detail {

inline int moebius(int k) {
  int mu = 1;
  for (int d = 2; d * d <= k; ++d) {
    if (k % d == 0) {
      k /= d;
      if (k % d == 0) return 0;
      mu = -mu;
    }
  }
  if (k > 1) mu = -mu;
  return mu;
}

}  // namespace detail

/// Closed-point counts a_1..a_B by Moebius inversion:
/// a_d = (1/d) sum_{e | d} mu(d/e) N_e. Each a_d must come out a nonnegative
/// integer; anything else signals an inconsistent series.
inline std::vector<std::uint64_t> closed_point_counts(const PointCountSeries& series) {
  const int B = static_cast<int>(series.counts.size());
  std::vector<std::uint64_t> out;
  out.reserve(B);
  for (int d = 1; d <= B; ++d) {
    __int128 sum = 0;
    for (int e = 1; e <= d; ++e) {
      if (d % e != 0) continue;
      sum += static_cast<__int128>(detail::moebius(d / e)) *
             static_cast<__int128>(series.counts[e - 1]);
    }
    if (sum < 0 || sum % d != 0)
      throw InconsistentCounts("a_" + std::to_string(d) +
                               " is not a nonnegative integer");
    out.push_back(static_cast<std::uint64_t>(sum / d));
  }
  return out;
}

}  // namespace zetalab
