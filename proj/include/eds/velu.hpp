// Velu's formulas: isogenous curve and x-coordinate map from a rational
// kernel, dual x-map recovery by exact linear algebra, and preimages.
#pragma once

#include <optional>
#include <vector>

#include "eds/curve.hpp"
#include "eds/factor.hpp"
#include "eds/poly.hpp"

namespace eds {

struct KernelSpec {
  int m = 2;          // prime degree
  PolyQ kernel_poly;  // monic; roots are the x-coordinates of the non-trivial
                      // kernel points; degree 1 for m=2, (m-1)/2 for odd m
  std::optional<CurvePoint> torsion_witness;  // rational kernel point, if any
};

struct IsogenyData {
  WeierstrassCurve source;
  WeierstrassCurve target;
  int degree = 2;
  XRationalMap x_map;  // x-coordinate action source -> target
  Rational t, u, w;    // Velu sums
  KernelSpec kernel;
};

// All kernels of rational m-isogenies from the curve (m in {2,3,5,7}).
// Empty when the curve has no rational m-kernel.
std::vector<KernelSpec> rational_kernels(const WeierstrassCurve& curve, int m);

// Isogeny with the given kernel; the target curve is
// [a1, a2, a3, a4 - 5t, a6 - b2 t - 7w].
IsogenyData velu_isogeny(const WeierstrassCurve& curve, const KernelSpec& kernel);

// The unique degree-m map X^ with X^ o X(sigma) = phi_m/psi_m^2 on the source
// curve, found by equating coefficients and verified exactly.
XRationalMap dual_x_map(const IsogenyData& sigma);

struct PreimageSplit {
  std::vector<Rational> rational_roots;   // with multiplicity
  std::vector<PolyQ> irreducible_factors; // degree >= 2, with multiplicity
};

// Factorization of numerator(map(x) - x_target).
PreimageSplit preimages_x(const XRationalMap& map, const Rational& x_target);

// True when a + b*theta is a square in Q(theta), theta a root of the monic
// irreducible quadratic x^2 + px + q (used to decide whether y lifts into the
// x-field of a quadratic preimage).
bool square_in_quadratic_field(const Rational& a, const Rational& b, const Rational& p,
                               const Rational& q);

}  // namespace eds
