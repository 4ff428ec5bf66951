#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eds/integer.hpp"
#include "eds/poly.hpp"
#include "eds/real.hpp"

using namespace eds;

namespace {

PolyQ poly(std::initializer_list<long> coeffs_low_first) {
  std::vector<Rational> c;
  for (long v : coeffs_low_first) c.emplace_back(v);
  return PolyQ(std::move(c));
}

std::mt19937_64 rng(0x5eed5eedULL);

Rational random_rational(long span) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, span);
  return Rational(Integer(num(rng)), Integer(den(rng)));
}

PolyQ random_poly(int max_deg, long span) {
  std::uniform_int_distribution<int> d(0, max_deg);
  int deg = d(rng);
  std::vector<Rational> c;
  for (int i = 0; i <= deg; ++i) c.push_back(random_rational(span));
  return PolyQ(std::move(c));
}

}  // namespace

TEST_CASE("integer decimal round trip and canonical zero") {
  CHECK(Integer("-123456789012345678901234567890").str() == "-123456789012345678901234567890");
  CHECK(Integer(0).str() == "0");
  CHECK(Integer("-0").str() == "0");
  CHECK(Integer("-0").sign() == 0);
  CHECK(!Integer::parse("12a3").has_value());
  CHECK(!Integer::parse("").has_value());
  CHECK(Integer("007").str() == "7");
}

TEST_CASE("integer digit counts are exact") {
  CHECK(Integer(0).digits10() == 1);
  CHECK(Integer(9).digits10() == 1);
  CHECK(Integer(10).digits10() == 2);
  CHECK(Integer(-999).digits10() == 3);
  CHECK(Integer::pow(10, 284).digits10() == 285);
  CHECK((Integer::pow(10, 285) - Integer(1)).digits10() == 285);
}

TEST_CASE("rational reduction and structural equality") {
  Rational r(Integer(4), Integer(-6));
  CHECK(r.num() == Integer(-2));
  CHECK(r.den() == Integer(3));
  CHECK(Rational("-5927/1000").str() == "-5927/1000");
  CHECK(Rational("10/5").str() == "2");
  CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), Error);

  // construction from (a,b) equals construction from (ka,kb), k != 0
  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<long> d(-40, 40);
    long a = d(rng), b = d(rng), k = d(rng);
    if (b == 0 || k == 0) continue;
    CHECK(Rational(Integer(a), Integer(b)) == Rational(Integer(k * a), Integer(k * b)));
  }
}

TEST_CASE("poly_divrem_exact on the worked examples") {
  // (x^2 - 1) / (x - 1) = x + 1
  auto dr = poly_divrem_exact(poly({-1, 0, 1}), poly({-1, 1}));
  CHECK(dr.quotient == poly({1, 1}));
  CHECK(dr.remainder.is_zero());

  // oracle: expand (x^2-4x-4)(x^2-8x-8) and divide it back
  PolyQ a = poly({-4, -4, 1}), b = poly({-8, -8, 1});
  PolyQ prod = a * b;
  CHECK(prod == poly({32, 64, 20, -12, 1}));
  auto dr2 = poly_divrem_exact(prod, a);
  CHECK(dr2.quotient == b);
  CHECK(dr2.remainder.is_zero());

  // degree(dividend) < degree(divisor)
  auto dr3 = poly_divrem_exact(poly({1, 1}), poly({0, 0, 1}));
  CHECK(dr3.quotient.is_zero());
  CHECK(dr3.remainder == poly({1, 1}));

  CHECK_THROWS_AS(poly_divrem_exact(poly({1, 1}), PolyQ()), Error);
}

TEST_CASE("poly divrem round trip on random pairs") {
  for (int i = 0; i < 300; ++i) {
    PolyQ f = random_poly(6, 20);
    PolyQ g = random_poly(4, 20);
    if (g.is_zero()) continue;
    auto dr = poly_divrem_exact(f * g, g);
    CHECK(dr.quotient == f);
    CHECK(dr.remainder.is_zero());
    // generic divrem invariant
    PolyQ h = random_poly(5, 20);
    if (h.is_zero()) continue;
    auto dr2 = poly_divrem_exact(f, h);
    CHECK(f == h * dr2.quotient + dr2.remainder);
    CHECK(dr2.remainder.degree() < h.degree());
  }
}

TEST_CASE("poly gcd and squarefree part") {
  PolyQ a = poly({-4, -4, 1});
  PolyQ b = poly({-8, -8, 1});
  CHECK(poly_gcd(a * b, a * a) == a.monic());
  CHECK(squarefree_part(a * a * b).monic() == (a * b).monic());
  CHECK(poly_gcd(a, b).degree() == 0);
}

TEST_CASE("nearest_rational convergents") {
  CHECK(nearest_rational(Real::from_string("0.3333333333", 192), Integer(100)) ==
        Rational(Integer(1), Integer(3)));
  CHECK(nearest_rational(Real::from_string("3.14159265358979", 192), Integer(1000)) ==
        Rational(Integer(355), Integer(113)));
  CHECK(nearest_rational(Real::from_string("5.0", 192), Integer(10)) == Rational(5));
  CHECK(nearest_rational(Rational(Integer(-22), Integer(7)), Integer(3)) == Rational(-3));
  CHECK(nearest_rational(Rational(Integer(22), Integer(7)), Integer(100)) ==
        Rational(Integer(22), Integer(7)));

  // reconstruction: p/q evaluated to >= 2*digits(q)+5 digits recovers p/q
  for (int i = 0; i < 100; ++i) {
    std::uniform_int_distribution<long> d(1, 99999);
    long p = d(rng), q = d(rng);
    Rational exact((Integer(p)), Integer(q));
    size_t digits = 2 * exact.den().digits10() + 5;
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(double(digits) * 3.33) + 16;
    Real approx(exact, prec);
    CHECK(nearest_rational(approx, exact.den()) == exact);
  }
}

TEST_CASE("real exact rational round trip and big log") {
  Real x(Rational(Integer(355), Integer(113)), 256);
  Rational back = x.to_rational_exact();
  CHECK((back - Rational(Integer(355), Integer(113))).abs() <
        Rational(Integer(1), Integer::pow(10, 60)));

  // log of 10^100 to 30 significant digits
  Real lg = Real::log_abs(Integer::pow(10, 100), 192);
  Real expect = Real(100.0, 192) * Real(10.0, 192).log();
  CHECK((lg - expect).abs().to_double() < 1e-40);
}

TEST_CASE("rational map normalization and composition") {
  // (x^2-1)/(x-1) reduces to x+1
  XRationalMap m(poly({-1, 0, 1}), poly({-1, 1}));
  CHECK(m.num() == poly({1, 1}));
  CHECK(m.den() == poly({1}));

  XRationalMap f(poly({0, 0, 1}), poly({1}));   // x^2
  XRationalMap g(poly({1, 1}), poly({0, 1}));   // (x+1)/x
  XRationalMap fg = XRationalMap::compose(f, g);
  Rational at2 = fg.apply(Rational(2));
  CHECK(at2 == Rational(Integer(9), Integer(4)));
  CHECK_THROWS_AS(g.apply(Rational(0)), Error);
}
