// Division polynomials phi_n / psi_n^2 in x alone, the x-coordinate action of
// multiplication maps, and the psi_n(Q) value sequence.
//
// Everything is stored in terms of the x-only polynomials
//   f_n = psi_n        (n odd)
//   f_n = psi_n/psi_2  (n even)
// together with F = psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6, so algebraic
// points whose y-coordinate is irrational work throughout.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "eds/curve.hpp"
#include "eds/poly.hpp"

namespace eds {

struct DivisionPolyPair {
  int n = 1;
  PolyQ phi;          // monic, degree n^2
  PolyQ psi_squared;  // degree n^2 - 1
};

// Memoized per-curve context; create one per thread of work.
class DivisionPolynomials {
 public:
  explicit DivisionPolynomials(WeierstrassCurve curve);

  const WeierstrassCurve& curve() const { return curve_; }
  const PolyQ& psi2_squared() const { return F_; }

  // x-only polynomial f_n as above (n >= 0)
  const PolyQ& f(int n);

  // phi_n and psi_n^2 with x(nP) = phi_n(x(P)) / psi_n^2(x(P))
  DivisionPolyPair pair(int n);

  // x-coordinate of the multiplication map as a reduced rational map
  XRationalMap x_multiplication_map(int n);

 private:
  WeierstrassCurve curve_;
  PolyQ F_;   // psi_2^2
  PolyQ F2_;  // F^2
  std::map<int, PolyQ> memo_;
};

DivisionPolyPair division_polynomials(const WeierstrassCurve& curve, int n);

// x(nQ) from x(Q) by the f-value recurrences (no polynomial expansion).
// Throws TorsionHit when psi_n^2(x0) = 0, i.e. nQ is at infinity.
Rational x_multiple(const WeierstrassCurve& curve, const Rational& x0, int n);

// True iff psi_n^2(x0) = 0 for some 1 <= n <= max_n (the point with this
// x-coordinate is torsion of small order over its field of definition).
bool is_torsion_x(const WeierstrassCurve& curve, const Rational& x0, int max_n = 18);

struct PsiValueSeq {
  WeierstrassCurve curve;
  CurvePoint base;
  // values[i] = psi_{i+1}(Q), as exact rationals (integral for integral Q)
  std::vector<Rational> values;
  std::vector<int> zero_indices;  // n with psi_n(Q) = 0 (torsion multiples)
  bool integral = true;

  Integer integer_value(int n) const;  // requires integral
};

// psi_1(Q) .. psi_{n_max}(Q) by the two-term recurrences seeded from
// psi_1..psi_4.  Q must be affine and rational; non-integral coordinates are
// flagged, torsion zeros are reported rather than raised.
PsiValueSeq psi_at_point(const WeierstrassCurve& curve, const CurvePoint& Q, int n_max);

}  // namespace eds
