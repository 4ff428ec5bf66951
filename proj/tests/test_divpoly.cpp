#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eds/divpoly.hpp"

using namespace eds;

namespace {
WeierstrassCurve curve26() { return WeierstrassCurve(0, 0, 0, 0, 26); }
WeierstrassCurve curve_ex1() { return WeierstrassCurve(0, -1, 0, -4, -2); }

PolyQ poly(std::initializer_list<long> coeffs_low_first) {
  std::vector<Rational> c;
  for (long v : coeffs_low_first) c.emplace_back(v);
  return PolyQ(std::move(c));
}
}  // namespace

TEST_CASE("multiplication-by-one is the identity pair") {
  DivisionPolyPair p = division_polynomials(curve26(), 1);
  CHECK(p.phi == PolyQ::x());
  CHECK(p.psi_squared == PolyQ::constant(1));
  CHECK_THROWS_AS(division_polynomials(curve26(), 0), Error);
}

TEST_CASE("duplication pair on the worked curves") {
  // psi_2^2 = 4x^3 + 104; phi_2 = x^4 - b4 x^2 - 2 b6 x - b8 = x^4 - 208x,
  // cross-checked below against the group-law doubling at x = -1.
  DivisionPolyPair p = division_polynomials(curve26(), 2);
  CHECK(p.psi_squared == poly({104, 0, 0, 4}));
  CHECK(p.phi == poly({0, -208, 0, 0, 1}));
  CHECK(p.phi.eval(Rational(-1)) / p.psi_squared.eval(Rational(-1)) ==
        scalar_mul(curve26(), 2, CurvePoint(-1, 5)).x());

  DivisionPolyPair q = division_polynomials(curve_ex1(), 2);
  CHECK(q.phi == poly({8, 16, 8, 0, 1}));
}

TEST_CASE("x_multiple equals the group-law oracle") {
  WeierstrassCurve c = curve26();
  CurvePoint Q(-1, 5);
  CHECK(x_multiple(c, Rational(-1), 1) == Rational(-1));
  CHECK(x_multiple(c, Rational(-1), 2) == Rational(Integer(209), Integer(100)));

  // triple via chord-tangent: 2Q + Q
  CurvePoint triple = point_add(c, scalar_mul(c, 2, Q), Q);
  CHECK(x_multiple(c, Rational(-1), 3) == triple.x());
  CHECK(triple.x() == Rational(Integer(1089919), Integer(95481)));
  CHECK(Integer(95481) == Integer(309) * Integer(309));

  for (int n = 1; n <= 20; ++n)
    CHECK(x_multiple(c, Rational(-1), n) == scalar_mul(c, n, Q).x());

  WeierstrassCurve c2 = curve_ex1();
  CurvePoint Q2(3, 2);
  REQUIRE(on_curve(c2, Q2));
  for (int n = 1; n <= 20; ++n)
    CHECK(x_multiple(c2, Rational(3), n) == scalar_mul(c2, n, Q2).x());

  WeierstrassCurve c3 = WeierstrassCurve::parse("[1,-1,1,4,6]");
  CurvePoint Q3(0, 2);
  for (int n = 1; n <= 12; ++n) {
    CurvePoint nQ = scalar_mul(c3, n, Q3);
    if (nQ.is_infinity())
      CHECK_THROWS_AS(x_multiple(c3, Rational(0), n), Error);
    else
      CHECK(x_multiple(c3, Rational(0), n) == nQ.x());
  }
}

TEST_CASE("division polynomial degrees are exact") {
  for (const auto& c : {curve26(), curve_ex1(), WeierstrassCurve::parse("[1,0,1,-36,-70]")}) {
    DivisionPolynomials ctx(c);
    for (int n = 1; n <= 12; ++n) {
      DivisionPolyPair p = ctx.pair(n);
      CHECK(p.phi.degree() == long(n) * n);
      CHECK(p.psi_squared.degree() == long(n) * n - 1);
      CHECK(p.phi.leading() == Rational(1));
    }
  }
}

TEST_CASE("phi and psi^2 are coprime") {
  DivisionPolynomials ctx(curve_ex1());
  for (int n = 2; n <= 8; ++n) {
    DivisionPolyPair p = ctx.pair(n);
    CHECK(poly_gcd(p.phi, p.psi_squared).degree() == 0);
  }
}

TEST_CASE("psi values at a point and the Ward recurrence") {
  WeierstrassCurve c = curve26();
  PsiValueSeq seq = psi_at_point(c, CurvePoint(-1, 5), 30);
  CHECK(seq.integral);
  CHECK(seq.integer_value(1) == Integer(1));
  CHECK(seq.integer_value(2) == Integer(10));  // 2y + a1 x + a3 = 2y
  CHECK(seq.integer_value(3).abs() == Integer(309));

  // Ward instance at (n,k) = (3,2): psi5 psi1 = psi2 psi4 psi2^2 - psi1 psi3 psi3^2
  auto v = [&](int n) { return n == 0 ? Rational(0) : Rational(seq.integer_value(n)); };
  CHECK(v(5) * v(1) == v(2) * v(4) * v(2) * v(2) - v(1) * v(3) * v(3) * v(3));

  // full recurrence for n > k >= 1, n + k <= 30
  for (int n = 2; n + 1 <= 30; ++n)
    for (int k = 1; k < n && n + k <= 30; ++k)
      CHECK(v(n + k) * v(n - k) ==
            v(n - 1) * v(n + 1) * v(k) * v(k) - v(k - 1) * v(k + 1) * v(n) * v(n));
}

TEST_CASE("torsion x-coordinates are detected") {
  WeierstrassCurve c = WeierstrassCurve::parse("[0,1,1,-7,5]");
  CHECK(is_torsion_x(c, Rational(1)));    // order-3 point
  CHECK(!is_torsion_x(c, Rational(-1)));  // generator
  CHECK(is_torsion_x(curve_ex1(), Rational(-1)));  // 2-torsion x
  CHECK(!is_torsion_x(curve26(), Rational(-1)));
}

TEST_CASE("psi_at_point flags non-integral input") {
  // scale y^2 = x^3 + 26 point through a non-integral x: use 2Q
  WeierstrassCurve c = curve26();
  CurvePoint twoQ = scalar_mul(c, 2, CurvePoint(-1, 5));
  PsiValueSeq seq = psi_at_point(c, twoQ, 6);
  CHECK(!seq.integral);
}
