#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eds/factor.hpp"
#include "eds/magnify.hpp"

using namespace eds;

namespace {

PolyQ poly(std::initializer_list<long> coeffs_low_first) {
  std::vector<Rational> c;
  for (long v : coeffs_low_first) c.emplace_back(v);
  return PolyQ(std::move(c));
}

std::mt19937_64 rng(0xFAC70ULL);

}  // namespace

TEST_CASE("rational roots of the worked polynomials") {
  auto r1 = rational_roots(poly({-2, -4, -1, 1}));  // x^3 - x^2 - 4x - 2
  REQUIRE(r1.size() == 1);
  CHECK(r1[0] == Rational(-1));

  CHECK(rational_roots(poly({-4, -4, 1})).empty());  // x^2 - 4x - 4: irrational roots

  auto r2 = rational_roots(poly({0, -1, 1}));  // x(x-1)
  REQUIRE(r2.size() == 2);
  CHECK(r2[0] == Rational(0));
  CHECK(r2[1] == Rational(1));

  // multiplicity and non-integer roots: (2x-3)^2 (x+5)
  PolyQ f = poly({-3, 2}) * poly({-3, 2}) * poly({5, 1});
  auto r3 = rational_roots(f);
  REQUIRE(r3.size() == 3);
  CHECK(r3[0] == Rational(-5));
  CHECK(r3[1] == Rational(Integer(3), Integer(2)));
  CHECK(r3[2] == Rational(Integer(3), Integer(2)));

  CHECK_THROWS_AS(rational_roots(PolyQ()), Error);
}

TEST_CASE("rational roots with huge constant terms use verified reconstruction") {
  // (x - 12345678901234567) * (x^2 + x + 1) has a constant term whose divisor
  // list would be unusable if it failed to factor quickly
  PolyQ big = poly({0, 1}) - PolyQ::constant(Rational(Integer("12345678901234567")));
  PolyQ f = big * poly({1, 1, 1});
  auto roots = rational_roots(f);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == Rational(Integer("12345678901234567")));
}

TEST_CASE("factorization of the worked quartic") {
  Factorization f = factor_over_Q(poly({32, 64, 20, -12, 1}));
  REQUIRE(f.factors.size() == 2);
  CHECK(f.content == Rational(1));
  // canonical order: degree, then coefficients from the top
  CHECK(f.factors[0].first == poly({-8, -8, 1}));
  CHECK(f.factors[1].first == poly({-4, -4, 1}));
  CHECK(f.product() == poly({32, 64, 20, -12, 1}));
}

TEST_CASE("irreducible inputs come back whole") {
  Factorization f = factor_over_Q(poly({1, 0, 1}));
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0].first == poly({1, 0, 1}));
  CHECK(f.factors[0].second == 1);
}

TEST_CASE("the degree-16 preimage polynomial contains the worked quartic") {
  WeierstrassCurve c(0, -1, 0, -4, -2);
  PreimagePoly p = preimage_poly(c, Rational(3), 4);
  REQUIRE(p.poly.degree() == 16);
  Factorization f = factor_over_Q(p.poly);
  bool found = false;
  for (const auto& [g, m] : f.factors) found = found || g == poly({-8, -16, -24, -16, 1});
  CHECK(found);
  long total = 0;
  for (const auto& [g, m] : f.factors) total += g.degree() * m;
  CHECK(total == 16);
}

TEST_CASE("multiplicities and content") {
  PolyQ a = poly({-4, -4, 1});
  PolyQ f = Rational(Integer(3), Integer(7)) * a * a * poly({-1, 1});
  Factorization fac = factor_over_Q(f);
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.content == Rational(Integer(3), Integer(7)));
  CHECK(fac.factors[0].first == poly({-1, 1}));
  CHECK(fac.factors[0].second == 1);
  CHECK(fac.factors[1].first == a);
  CHECK(fac.factors[1].second == 2);
  CHECK(fac.product() == f);
}

TEST_CASE("random irreducible quadratic/cubic products split exactly") {
  std::uniform_int_distribution<long> coeff(-50, 50);
  std::uniform_int_distribution<int> degree_pick(2, 3);
  int done = 0;
  while (done < 60) {
    auto random_irreducible = [&](int deg) -> std::optional<PolyQ> {
      std::vector<Rational> c;
      for (int i = 0; i < deg; ++i) c.emplace_back(coeff(rng));
      c.emplace_back(1);  // monic keeps the comparison simple
      PolyQ f(std::move(c));
      if (f.degree() != deg) return std::nullopt;
      if (!rational_roots(f).empty()) return std::nullopt;  // deg<=3: irreducible iff rootless
      return f;
    };
    auto q1 = random_irreducible(degree_pick(rng));
    auto q2 = random_irreducible(degree_pick(rng));
    if (!q1 || !q2 || *q1 == *q2) continue;
    Factorization f = factor_over_Q(*q1 * *q2);
    REQUIRE(f.factors.size() == 2);
    bool match = (f.factors[0].first == *q1 && f.factors[1].first == *q2) ||
                 (f.factors[0].first == *q2 && f.factors[1].first == *q1);
    CHECK(match);
    ++done;
  }
}

TEST_CASE("determinism: identical input, identical output") {
  PolyQ f = poly({32, 64, 20, -12, 1}) * poly({1, 0, 1}) * poly({-3, 1});
  Factorization a = factor_over_Q(f);
  Factorization b = factor_over_Q(f);
  REQUIRE(a.factors.size() == b.factors.size());
  for (size_t i = 0; i < a.factors.size(); ++i) {
    CHECK(a.factors[i].first == b.factors[i].first);
    CHECK(a.factors[i].second == b.factors[i].second);
  }
}

TEST_CASE("all-real root sets still factor") {
  // minimal polynomial of sqrt(2)+sqrt(3): degree 4, irreducible, four real
  // roots (the hard case for conjugate clustering)
  PolyQ sd = poly({1, 0, -10, 0, 1});
  Factorization f = factor_over_Q(sd);
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0].first == sd);

  Factorization g = factor_over_Q(sd * poly({-2, 0, 1}));
  REQUIRE(g.factors.size() == 2);
  CHECK(g.factors[0].first == poly({-2, 0, 1}));
  CHECK(g.factors[1].first == sd);
}
