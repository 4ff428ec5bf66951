// Magnified-point detection: preimage polynomials for mR = Q, their
// factorizations, chain certification across levels, and the isogeny-route
// check of rational preimages under dual isogenies.
#pragma once

#include <optional>
#include <vector>

#include "eds/curve.hpp"
#include "eds/factor.hpp"
#include "eds/velu.hpp"

namespace eds {

struct PreimagePoly {
  int m = 2;
  Rational xQ;
  PolyQ poly;  // primitive integer polynomial of degree m^2
};

// Primitive numerator of phi_m(x) - xQ * psi_m^2(x); its roots are exactly
// the x-coordinates of the points R with mR = +-Q.
PreimagePoly preimage_poly(const WeierstrassCurve& curve, const Rational& xQ, int m);

struct WitnessStep {
  int level = 1;
  int multiplier = 2;    // the per-step multiplier is always m
  PolyQ factor;          // irreducible factor carrying x(witness)
  int x_degree = 1;      // degree of the minimal polynomial of x(witness)
  // [Q(witness):Q] when decidable (x_degree <= 2); for larger x-degrees the
  // x-degree alone is reported and field_degree stays empty
  std::optional<int> field_degree;
};

struct MagnificationReport {
  bool magnified = false;
  int witness_degree = 0;  // minimal factor degree below m^2 at level 1
  int level = 0;           // chain depth certified (0 = not detected)
  int depth_used = 1;
  std::vector<WitnessStep> chain;  // minimal-degree witness per level
  bool coprime_variant = false;    // some witness field degree coprime to m^2
  // observed factor-degree ladder: degrees of the factors examined per level
  std::vector<std::vector<int>> factor_degrees;
  Factorization level1_factorization;
};

// Level 1 factors the degree-m^2 preimage polynomial.  Level l >= 2 searches
// for factors h with deg h a proper multiple of a previous witness degree d
// and deg h / d < m^2; for m = 2 at level 2 the full degree-16 preimage
// polynomial is factored, elsewhere the composed polynomial
// numerator(g(phi_m/psi_m^2)) of degree d*m^2 is factored instead (every
// factor found that way divides the full preimage polynomial).
MagnificationReport magnification_report(const WeierstrassCurve& curve, const Rational& xQ,
                                         int m, int depth);

struct IsogenyRoute {
  KernelSpec kernel;
  WeierstrassCurve source_of_dual;  // the curve F the preimages live on
  XRationalMap dual_map;            // F -> E, the isogeny mapping onto Q
  std::vector<Rational> rational_point_preimages;   // x with y rational on F
  std::vector<Rational> quadratic_y_preimages;      // x rational, y quadratic
  std::vector<PolyQ> quadratic_x_preimages;         // x-degree 2 factors
  std::vector<PolyQ> higher_degree_factors;
  bool has_rational_preimage = false;
  bool has_quadratic_preimage = false;  // a preimage generating a quadratic field
};

// For each rational m-kernel of the curve: build sigma: E -> F, recover the
// dual F -> E, factor numerator(dual(x) - x(Q)), and classify the preimages
// of Q by the field they generate.
std::vector<IsogenyRoute> isogeny_magnification_check(const WeierstrassCurve& curve,
                                                      const CurvePoint& Q, int m);

}  // namespace eds
