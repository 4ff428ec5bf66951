// Elliptic curves in general Weierstrass form over Q:
//   y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6
// with exact chord-tangent arithmetic, invariants, bad primes, and rational
// torsion.  Values are immutable; all operations are pure.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "eds/integer.hpp"
#include "eds/poly.hpp"

namespace eds {

struct CurveInvariants {
  Rational b2, b4, b6, b8;
  Rational discriminant;
  std::set<Integer> bad_primes;  // primes dividing the discriminant (integral models)
};

class WeierstrassCurve {
 public:
  WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6);

  // "[a1,a2,a3,a4,a6]" with integer entries, as printed in the tables.
  static WeierstrassCurve parse(std::string_view text);
  std::string str() const;

  const Rational& a1() const { return a1_; }
  const Rational& a2() const { return a2_; }
  const Rational& a3() const { return a3_; }
  const Rational& a4() const { return a4_; }
  const Rational& a6() const { return a6_; }

  const Rational& b2() const { return b2_; }
  const Rational& b4() const { return b4_; }
  const Rational& b6() const { return b6_; }
  const Rational& b8() const { return b8_; }
  const Rational& discriminant() const { return disc_; }

  bool is_integral() const;

  // 4x^3 + b2 x^2 + 2 b4 x + b6, the square of the 2-division polynomial.
  PolyQ two_division_poly() const;
  // y solutions over Q for given x, if any (0, 1, or 2 values).
  std::vector<Rational> lift_y(const Rational& x) const;

  friend bool operator==(const WeierstrassCurve& a, const WeierstrassCurve& b) {
    return a.a1_ == b.a1_ && a.a2_ == b.a2_ && a.a3_ == b.a3_ && a.a4_ == b.a4_ &&
           a.a6_ == b.a6_;
  }

 private:
  Rational a1_, a2_, a3_, a4_, a6_;
  Rational b2_, b4_, b6_, b8_, disc_;
};

class CurvePoint {
 public:
  CurvePoint() : inf_(true) {}  // point at infinity
  CurvePoint(Rational x, Rational y) : inf_(false), x_(std::move(x)), y_(std::move(y)) {}
  static CurvePoint infinity() { return CurvePoint(); }

  bool is_infinity() const { return inf_; }
  const Rational& x() const;
  const Rational& y() const;
  std::string str() const;

  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.x_ == b.x_ && a.y_ == b.y_;
  }

 private:
  bool inf_;
  Rational x_, y_;
};

bool on_curve(const WeierstrassCurve& curve, const CurvePoint& P);

// Invariants plus the bad-prime set; requires an integral model for the
// bad primes and rejects singular curves.
CurveInvariants invariants(const WeierstrassCurve& curve);

CurvePoint point_negate(const WeierstrassCurve& curve, const CurvePoint& P);
CurvePoint point_add(const WeierstrassCurve& curve, const CurvePoint& P, const CurvePoint& Q);
CurvePoint scalar_mul(const WeierstrassCurve& curve, const Integer& n, const CurvePoint& P);

// Exact order of P if it is torsion (<= 12 over Q by Mazur), else nullopt.
std::optional<int> torsion_order(const WeierstrassCurve& curve, const CurvePoint& P);

// Order of the full rational torsion subgroup E(Q)_tors.
int torsion_subgroup_order(const WeierstrassCurve& curve);

// All affine rational torsion points (the subgroup minus the identity).
std::vector<CurvePoint> rational_torsion_points(const WeierstrassCurve& curve);

}  // namespace eds
