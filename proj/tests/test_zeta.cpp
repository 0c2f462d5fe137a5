#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "zetalab/varieties.hpp"
#include "zetalab/zeta.hpp"

using namespace zetalab;

namespace {
PointCountSeries series_of(std::uint64_t q, std::vector<std::uint64_t> counts,
                           int num_vars = 1, Ambient ambient = Ambient::affine) {
  PointCountSeries s;
  s.q = q;
  s.num_vars = num_vars;
  s.ambient = ambient;
  s.counts = std::move(counts);
  return s;
}

IntPoly ipoly(std::vector<long> v) { return IntPoly(v.begin(), v.end()); }
}  // namespace

TEST_CASE("zeta truncation solves the exp recurrence exactly") {
  REQUIRE(zeta_truncate(series_of(2, {2, 4, 8})).coeffs == ipoly({1, 2, 4, 8}));
  REQUIRE(zeta_truncate(series_of(2, {3, 5}, 2, Ambient::projective)).coeffs ==
          ipoly({1, 3, 7}));
  REQUIRE(zeta_truncate(series_of(2, {0, 0})).coeffs == ipoly({1, 0, 0}));
  REQUIRE(zeta_truncate(series_of(2, {3, 9, 9, 9, 33}, 3, Ambient::projective)).coeffs ==
          ipoly({1, 3, 9, 21, 45, 93}));
  REQUIRE_THROWS_AS(zeta_truncate(series_of(2, {1, 0})), NonIntegralCoefficient);
}

TEST_CASE("expand regenerates Taylor coefficients from a rational function") {
  ZetaRational Z;
  Z.num = ipoly({1, 0, 2});
  Z.den = ipoly({1, -3, 2});  // (1-t)(1-2t)
  REQUIRE(expand(Z, 5) == ipoly({1, 3, 9, 21, 45, 93}));
}

TEST_CASE("pade reconstruction recovers known zeta functions") {
  ZetaSeries a1;
  a1.q = 2;
  a1.coeffs = ipoly({1, 2, 4, 8});
  const ZetaRational Za = pade_reconstruct(a1, 0, 1);
  REQUIRE(Za.num == ipoly({1}));
  REQUIRE(Za.den == ipoly({1, -2}));

  ZetaSeries p1;
  p1.q = 2;
  p1.coeffs = ipoly({1, 3, 7, 15});
  const ZetaRational Zp = pade_reconstruct(p1, 0, 2);
  REQUIRE(Zp.num == ipoly({1}));
  REQUIRE(Zp.den == ipoly({1, -3, 2}));

  ZetaSeries ell;
  ell.q = 2;
  ell.coeffs = ipoly({1, 3, 9, 21, 45, 93, 189, 381});
  const ZetaRational Ze = pade_reconstruct(ell, 2, 2);
  REQUIRE(Ze.num == ipoly({1, 0, 2}));
  REQUIRE(Ze.den == ipoly({1, -3, 2}));
  // the auto search needs the two-coefficient verification margin
  const ZetaRational Zauto = pade_auto(ell);
  REQUIRE(Zauto.num == Ze.num);
  REQUIRE(Zauto.den == Ze.den);
}

TEST_CASE("pade preconditions and failures") {
  ZetaSeries zs;
  zs.q = 2;
  zs.coeffs = ipoly({1, 3, 7});
  REQUIRE_THROWS_AS(pade_reconstruct(zs, 2, 2), InsufficientTerms);
  REQUIRE_THROWS_AS(pade_reconstruct(zs, -1, 1), OutOfRange);
  ZetaSeries bad;
  bad.q = 2;
  bad.coeffs = ipoly({1, 2, 3, 6});  // not a (0,1) or (1,0) function
  REQUIRE_THROWS_AS(pade_reconstruct(bad, 0, 1), ReconstructionFailed);
  REQUIRE_THROWS_AS(pade_auto(bad), ReconstructionFailed);
}

TEST_CASE("make_zeta_rational reduces to lowest integral terms") {
  // (1 - t^2)/(1 - t) = 1 + t
  const ZetaRational Z =
      make_zeta_rational(RatPoly{1, 0, -1}, RatPoly{1, -1});
  REQUIRE(Z.num == ipoly({1, 1}));
  REQUIRE(Z.den == ipoly({1}));
  REQUIRE_THROWS_AS(make_zeta_rational(RatPoly{1}, RatPoly{2}), ReconstructionFailed);
  REQUIRE_THROWS_AS(make_zeta_rational(RatPoly{2, 1}, RatPoly{1}), ReconstructionFailed);
  REQUIRE_THROWS_AS(make_zeta_rational(RatPoly{1}, RatPoly{0, 1}), ReconstructionFailed);
}

TEST_CASE("functional equation signs match the classical cases") {
  ZetaRational point;  // Z = 1/(1-t), d = 0, chi = 1
  point.num = ipoly({1});
  point.den = ipoly({1, -1});
  REQUIRE(verify_functional_equation(point, 2, 0, 1) == -1);

  ZetaRational line;  // P^1 over F_2: chi = 2
  line.num = ipoly({1});
  line.den = ipoly({1, -3, 2});
  REQUIRE(verify_functional_equation(line, 2, 1, 2) == 1);

  ZetaRational ell;  // supersingular elliptic over F_2: chi = 0
  ell.num = ipoly({1, 0, 2});
  ell.den = ipoly({1, -3, 2});
  REQUIRE(verify_functional_equation(ell, 2, 1, 0) == 1);

  REQUIRE_THROWS_AS(verify_functional_equation(ell, 2, 1, 2), NoFunctionalEquation);
}

TEST_CASE("epsilon for P^d alternates as (-1)^(d+1)") {
  for (std::uint64_t q : {2ull, 3ull}) {
    for (int d = 1; d <= 3; ++d) {
      ZetaRational Z;
      Z.num = ipoly({1});
      Z.den = ipoly({1});
      Int qi = 1;
      for (int i = 0; i <= d; ++i) {
        Z.den = poly_mul(Z.den, IntPoly{Int(1), -qi});
        qi *= Int(q);
      }
      const int chi = d + 1;
      REQUIRE(verify_functional_equation(Z, q, d, chi) == (d % 2 == 0 ? -1 : 1));
    }
  }
}

TEST_CASE("rh_check certifies root moduli and symmetry") {
  const RhReport good = rh_check(ipoly({1, 0, 2}), 2, 1);
  REQUIRE(good.pass());
  REQUIRE(good.moduli.size() == 2);
  REQUIRE(good.moduli[0] == Catch::Approx(std::sqrt(2.0)).epsilon(1e-9));
  REQUIRE(good.symmetry_checked);
  REQUIRE(good.symmetry_ok);
  REQUIRE(good.symmetry_sign == 1);

  // weight 2: inverse root q with target q^{2/2}
  const RhReport w2 = rh_check(ipoly({1, -2}), 2, 2);
  REQUIRE(w2.pass());
  REQUIRE(w2.moduli[0] == Catch::Approx(2.0).epsilon(1e-9));

  const RhReport badmod = rh_check(ipoly({1, -3}), 2, 1);
  REQUIRE_FALSE(badmod.pass());
  REQUIRE_FALSE(badmod.moduli_ok);
  REQUIRE(badmod.residual_ok);

  const RhReport g2 = rh_check(ipoly({1, 0, -10, 0, 25}), 5, 1);
  REQUIRE(g2.pass());
  for (double m : g2.moduli)
    REQUIRE(m == Catch::Approx(std::sqrt(5.0)).epsilon(1e-9));

  REQUIRE_THROWS_AS(rh_check(ipoly({2, 1}), 2, 1), UsageError);
  IntPoly too_big(26, Int(0));
  too_big[0] = 1;
  too_big[25] = 1;
  REQUIRE_THROWS_AS(rh_check(too_big, 2, 1), DegreeExceeded);
}

TEST_CASE("degree-0 numerator passes rh vacuously") {
  const RhReport r = rh_check(ipoly({1}), 5, 1);
  REQUIRE(r.pass());
  REQUIRE(r.moduli.empty());
}

TEST_CASE("schmidt divisor check extracts the genus-2 numerator") {
  const PointCountSeries s = n_series(make_curve({0, -1, 0, 0, 0, 1}, 5), 6);
  const SchmidtResult res = schmidt_divisor_check(s, 2);
  REQUIRE(res.numerator == ipoly({1, 0, -10, 0, 25}));
  REQUIRE(res.closed_points.size() == 6);
  REQUIRE_THROWS_AS(schmidt_divisor_check(series_of(5, {6, 6, 126, 526, 3126}), 2),
                    InsufficientTerms);
  REQUIRE_THROWS_AS(schmidt_divisor_check(s, -1), OutOfRange);
}

TEST_CASE("schmidt rejects a series whose zeta has positive genus at g = 0") {
  const PointCountSeries ell =
      series_of(2, {3, 9, 9, 9, 33}, 3, Ambient::projective);
  REQUIRE_THROWS_AS(schmidt_divisor_check(ell, 0), DegreeViolation);
  REQUIRE_NOTHROW(schmidt_divisor_check(ell, 1));
}

TEST_CASE("hasse-weil bound is decided exactly") {
  REQUIRE(hasse_weil_check(3, 2, 1).ok);
  REQUIRE(hasse_weil_check(9, 4, 1).ok);   // |9-5| = 4 = 2*1*sqrt(4), boundary
  REQUIRE_FALSE(hasse_weil_check(8, 2, 1).ok);
  REQUIRE(hasse_weil_check(8, 2, 1).slack > 0);
  REQUIRE(hasse_weil_check(3, 2, 1).slack < 0);
  const HasseResult genus0 = hasse_weil_check(3, 2, 0);
  REQUIRE(genus0.ok);
  REQUIRE(genus0.normalized_trace == 0.0);
  const HasseResult neg = hasse_weil_check(6, 7, 1);
  REQUIRE(neg.ok);
  REQUIRE(neg.normalized_trace < 0);
}

TEST_CASE("lang-weil report flags outliers only") {
  const LangWeilReport quiet =
      lang_weil_report({{5, 25}, {7, 49}, {11, 121}}, 2, 2);
  for (const auto& row : quiet.rows) {
    REQUIRE(row.deviation == 0.0);
    REQUIRE_FALSE(row.flagged);
  }
  const LangWeilReport loud = lang_weil_report({{5, 60}}, 2, 2);
  REQUIRE(loud.rows[0].flagged);
  REQUIRE(loud.c1 == 0.0);
}

TEST_CASE("curve pipeline produces all-true verdicts on smooth models") {
  const WeilReport e7 = curve_weil_report(make_curve({0, -1, 0, 1}, 7));
  REQUIRE(e7.verdicts.all());
  REQUIRE(e7.g == 1);
  REQUIRE(e7.B == 4);
  REQUIRE(e7.counts[0] == 8);
  REQUIRE(e7.num == ipoly({1, 0, 7}));
  REQUIRE(e7.den == ipoly({1, -8, 7}));
  REQUIRE(e7.epsilon == 1);
  REQUIRE(e7.failure.empty());

  const WeilReport g2 = curve_weil_report(make_curve({2, 1, 0, 0, 0, 1}, 7));
  REQUIRE(g2.verdicts.all());
  REQUIRE(g2.g == 2);
  REQUIRE(g2.num == ipoly({1, 2, 0, 14, 49}));

  const WeilReport g3 = curve_weil_report(make_curve({0, -1, 0, 0, 0, 1}, 3));
  REQUIRE(g3.verdicts.all());
  REQUIRE(g3.num == ipoly({1, 0, -2, 0, 9}));
}

TEST_CASE("zeta round trip: reconstruct then re-expand exactly") {
  for (const auto& [p, f] :
       std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>>{
           {5, {0, -1, 0, 0, 0, 1}}, {3, {0, -1, 0, 1}}, {7, {0, -1, 0, 1}}}) {
    const CurveSpec curve = make_curve(f, p);
    const int B = 2 * genus(curve) + 2;
    const PointCountSeries s = n_series(curve, B);
    const ZetaSeries zs = zeta_truncate(s);
    const SchmidtResult res = schmidt_divisor_check(s, genus(curve));
    ZetaRational Z;
    Z.num = res.numerator;
    Z.den = IntPoly{Int(1), -Int(s.q) - 1, Int(s.q)};
    REQUIRE(expand(Z, B) == zs.coeffs);
  }
}
