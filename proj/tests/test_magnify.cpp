#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eds/divpoly.hpp"
#include "eds/magnify.hpp"
#include "eds/tables.hpp"

using namespace eds;

namespace {
PolyQ poly(std::initializer_list<long> coeffs_low_first) {
  std::vector<Rational> c;
  for (long v : coeffs_low_first) c.emplace_back(v);
  return PolyQ(std::move(c));
}
}  // namespace

TEST_CASE("preimage polynomial construction") {
  WeierstrassCurve e(0, -1, 0, -4, -2);
  PreimagePoly p = preimage_poly(e, Rational(3), 2);
  CHECK(p.poly == poly({32, 64, 20, -12, 1}));
  CHECK(p.poly.degree() == 4);

  // Q = (-1, 5) is by construction a preimage of x(2Q) = 209/100
  WeierstrassCurve c26(0, 0, 0, 0, 26);
  PreimagePoly q = preimage_poly(c26, Rational(Integer(209), Integer(100)), 2);
  CHECK(q.poly.degree() == 4);
  CHECK(q.poly.eval(Rational(-1)).is_zero());

  CHECK_THROWS_AS(preimage_poly(e, Rational(3), 1), Error);
}

TEST_CASE("every rational preimage root multiplies back to x(Q)") {
  WeierstrassCurve c26(0, 0, 0, 0, 26);
  for (int m : {2, 3}) {
    Rational xq = x_multiple(c26, Rational(-1), m);
    PreimagePoly p = preimage_poly(c26, xq, m);
    auto roots = rational_roots(p.poly);
    bool found_generator = false;
    for (const Rational& r : roots) {
      CHECK(x_multiple(c26, r, m) == xq);
      found_generator = found_generator || r == Rational(-1);
    }
    CHECK(found_generator);
  }
}

TEST_CASE("worked magnification chain, level 2") {
  WeierstrassCurve e(0, -1, 0, -4, -2);
  MagnificationReport rep = magnification_report(e, Rational(3), 2, 2);
  CHECK(rep.magnified);
  CHECK(rep.witness_degree == 2);
  CHECK(rep.level == 2);
  REQUIRE(rep.chain.size() == 2);
  CHECK(rep.chain[0].x_degree == 2);
  CHECK(rep.chain[0].field_degree == 2);  // quadratic witness, y in the same field
  CHECK(rep.chain[1].x_degree == 4);
  CHECK(!rep.coprime_variant);  // gcd(2, 4) != 1

  // level-1 factors sum to m^2 and include x^2-4x-4
  long total = 0;
  bool has_worked_factor = false;
  for (const auto& [f, mult] : rep.level1_factorization.factors) {
    total += f.degree() * mult;
    has_worked_factor = has_worked_factor || f == poly({-4, -4, 1});
  }
  CHECK(total == 4);
  CHECK(has_worked_factor);
}

TEST_CASE("table-one style rows certify level 2") {
  MagnificationReport r1 = magnification_report(WeierstrassCurve(1, -1, 1, 4, 6), Rational(0), 2, 2);
  CHECK(r1.level == 2);

  // doubly magnified in one step: times 2 and times 3
  WeierstrassCurve c(1, 0, 1, -36, -70);
  MagnificationReport r2 = magnification_report(c, Rational(-5), 2, 1);
  CHECK(r2.magnified);
  MagnificationReport r3 = magnification_report(c, Rational(-5), 3, 1);
  CHECK(r3.magnified);
}

TEST_CASE("rationally magnified points raise the coprime-variant flag") {
  // x(2Q) for Q = (-1,5): the preimage polynomial has the rational root -1,
  // a witness of field degree 1, and gcd(1, 4) = 1
  WeierstrassCurve c26(0, 0, 0, 0, 26);
  Rational xq = x_multiple(c26, Rational(-1), 2);
  MagnificationReport rep = magnification_report(c26, xq, 2, 1);
  CHECK(rep.magnified);
  CHECK(rep.witness_degree == 1);
  CHECK(rep.coprime_variant);
}

TEST_CASE("depth handling") {
  WeierstrassCurve e(0, -1, 0, -4, -2);
  MagnificationReport d1 = magnification_report(e, Rational(3), 2, 1);
  CHECK(d1.level == 1);
  CHECK(d1.depth_used == 1);
  // m = 3 caps at depth 2
  MagnificationReport d3 = magnification_report(WeierstrassCurve(0, 1, 1, -7, 5), Rational(-1), 3, 3);
  CHECK(d3.depth_used == 2);
  CHECK_THROWS_AS(magnification_report(e, Rational(3), 2, 0), Error);
  // torsion x(Q) is rejected
  CHECK_THROWS_AS(magnification_report(WeierstrassCurve(0, 1, 1, -7, 5), Rational(1), 3, 1), Error);
}

TEST_CASE("isogeny routes for the worked rank-one curve") {
  WeierstrassCurve c(0, 1, 1, -7, 5);
  auto routes = isogeny_magnification_check(c, CurvePoint(-1, 3), 3);
  REQUIRE(routes.size() == 1);
  CHECK(routes[0].has_rational_preimage);
  CHECK(routes[0].has_quadratic_preimage);

  // no rational 2-kernel on y^2 = x^3 + 26: empty report, not an error
  auto none = isogeny_magnification_check(WeierstrassCurve(0, 0, 0, 0, 26), CurvePoint(-1, 5), 2);
  CHECK(none.empty());

  CHECK_THROWS_AS(isogeny_magnification_check(c, CurvePoint(1, 0), 3), Error);  // torsion Q
}

TEST_CASE("quadratic witness plus rational two-torsion forces a rational route") {
  // whenever the doubling preimage polynomial has an irreducible quadratic
  // factor and the curve has a rational 2-torsion point, some 2-isogeny route
  // carries a rational preimage
  for (const TableRow& row : load_rows("1")) {
    if (row.ms.at(0) != 2) continue;
    PreimagePoly p = preimage_poly(row.curve, row.x, 2);
    Factorization fac = factor_over_Q(p.poly);
    bool has_quadratic = false;
    for (const auto& [f, mult] : fac.factors) has_quadratic = has_quadratic || f.degree() == 2;
    auto kernels = rational_kernels(row.curve, 2);
    if (!has_quadratic || kernels.empty()) continue;
    auto routes = isogeny_magnification_check(row.curve, row.point(), 2);
    bool any_rational = false;
    for (const auto& r : routes) any_rational = any_rational || r.has_rational_preimage;
    CHECK(any_rational);
  }
}
