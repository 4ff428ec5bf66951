#include "eds/curve.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "eds/classify.hpp"
#include "eds/divpoly.hpp"
#include "eds/factor.hpp"

namespace eds {

WeierstrassCurve::WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4,
                                   Rational a6)
    : a1_(std::move(a1)),
      a2_(std::move(a2)),
      a3_(std::move(a3)),
      a4_(std::move(a4)),
      a6_(std::move(a6)) {
  // b2 = a1^2+4a2, b4 = 2a4+a1a3, b6 = a3^2+4a6, b8 = (b2*b6-b4^2)/4
  b2_ = a1_ * a1_ + Rational(4) * a2_;
  b4_ = Rational(2) * a4_ + a1_ * a3_;
  b6_ = a3_ * a3_ + Rational(4) * a6_;
  b8_ = (b2_ * b6_ - b4_ * b4_) / Rational(4);
  disc_ = -(b2_ * b2_ * b8_) - Rational(8) * b4_ * b4_ * b4_ - Rational(27) * b6_ * b6_ +
          Rational(9) * b2_ * b4_ * b6_;
  if (disc_.is_zero()) fail(ErrorCode::SingularCurve, "singular curve " + str());
}

WeierstrassCurve WeierstrassCurve::parse(std::string_view text) {
  std::string s(text);
  std::erase_if(s, [](char c) { return c == ' ' || c == '\t'; });
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    fail(ErrorCode::InvalidInput, "curve must look like [a1,a2,a3,a4,a6]: '" + std::string(text) + "'");
  std::vector<Rational> a;
  std::stringstream ss(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = Rational::parse(item);
    if (!v) fail(ErrorCode::InvalidInput, "bad curve coefficient '" + item + "'");
    a.push_back(*v);
  }
  if (a.size() != 5) fail(ErrorCode::InvalidInput, "curve needs exactly 5 coefficients");
  return WeierstrassCurve(a[0], a[1], a[2], a[3], a[4]);
}

std::string WeierstrassCurve::str() const {
  return "[" + a1_.str() + "," + a2_.str() + "," + a3_.str() + "," + a4_.str() + "," +
         a6_.str() + "]";
}

bool WeierstrassCurve::is_integral() const {
  return a1_.is_integer() && a2_.is_integer() && a3_.is_integer() && a4_.is_integer() &&
         a6_.is_integer();
}

PolyQ WeierstrassCurve::two_division_poly() const {
  return PolyQ({b6_, Rational(2) * b4_, b2_, Rational(4)});
}

std::vector<Rational> WeierstrassCurve::lift_y(const Rational& x) const {
  // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
  Rational b = a1_ * x + a3_;
  Rational rhs = ((x + a2_) * x + a4_) * x + a6_;
  Rational disc = b * b + Rational(4) * rhs;  // = psi2^2(x)
  if (disc.sign() < 0) return {};
  if (disc.is_zero()) return {-b / Rational(2)};
  if (!disc.num().is_perfect_square() || !disc.den().is_perfect_square()) return {};
  Rational root(disc.num().isqrt(), disc.den().isqrt());
  return {(-b + root) / Rational(2), (-b - root) / Rational(2)};
}

const Rational& CurvePoint::x() const {
  if (inf_) fail(ErrorCode::Internal, "x() of the point at infinity");
  return x_;
}
const Rational& CurvePoint::y() const {
  if (inf_) fail(ErrorCode::Internal, "y() of the point at infinity");
  return y_;
}

std::string CurvePoint::str() const {
  if (inf_) return "O";
  return "(" + x_.str() + ", " + y_.str() + ")";
}

bool on_curve(const WeierstrassCurve& c, const CurvePoint& P) {
  if (P.is_infinity()) return true;
  const Rational &x = P.x(), &y = P.y();
  Rational lhs = y * y + c.a1() * x * y + c.a3() * y;
  Rational rhs = ((x + c.a2()) * x + c.a4()) * x + c.a6();
  return lhs == rhs;
}

// ---- bad primes -------------------------------------------------------

CurveInvariants invariants(const WeierstrassCurve& c) {
  if (!c.is_integral())
    fail(ErrorCode::NonIntegralModel,
         "bad-prime extraction requires an integral model, got " + c.str());
  CurveInvariants inv{c.b2(), c.b4(), c.b6(), c.b8(), c.discriminant(), {}};
  inv.bad_primes = prime_divisors(c.discriminant().num());
  return inv;
}

// ---- group law --------------------------------------------------------

CurvePoint point_negate(const WeierstrassCurve& c, const CurvePoint& P) {
  if (P.is_infinity()) return P;
  return CurvePoint(P.x(), -P.y() - c.a1() * P.x() - c.a3());
}

namespace {

// chord-tangent addition without the on-curve precondition checks
CurvePoint add_unchecked(const WeierstrassCurve& c, const CurvePoint& P, const CurvePoint& Q) {
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  const Rational &x1 = P.x(), &y1 = P.y(), &x2 = Q.x(), &y2 = Q.y();
  Rational lambda, nu;
  if (x1 == x2) {
    if (y2 == -y1 - c.a1() * x1 - c.a3()) return CurvePoint::infinity();
    // same point: tangent line
    Rational den = Rational(2) * y1 + c.a1() * x1 + c.a3();
    lambda = (Rational(3) * x1 * x1 + Rational(2) * c.a2() * x1 + c.a4() - c.a1() * y1) / den;
    nu = (-(x1 * x1 * x1) + c.a4() * x1 + Rational(2) * c.a6() - c.a3() * y1) / den;
  } else {
    lambda = (y2 - y1) / (x2 - x1);
    nu = (y1 * x2 - y2 * x1) / (x2 - x1);
  }
  Rational x3 = lambda * lambda + c.a1() * lambda - c.a2() - x1 - x2;
  Rational y3 = -(lambda + c.a1()) * x3 - nu - c.a3();
  return CurvePoint(std::move(x3), std::move(y3));
}

}  // namespace

CurvePoint point_add(const WeierstrassCurve& c, const CurvePoint& P, const CurvePoint& Q) {
  if (!on_curve(c, P)) fail(ErrorCode::PointNotOnCurve, P.str() + " not on " + c.str());
  if (!on_curve(c, Q)) fail(ErrorCode::PointNotOnCurve, Q.str() + " not on " + c.str());
  return add_unchecked(c, P, Q);
}

CurvePoint scalar_mul(const WeierstrassCurve& c, const Integer& n, const CurvePoint& P) {
  if (!on_curve(c, P)) fail(ErrorCode::PointNotOnCurve, P.str() + " not on " + c.str());
  if (n.is_zero() || P.is_infinity()) return CurvePoint::infinity();
  CurvePoint base = n.sign() < 0 ? point_negate(c, P) : P;
  Integer k = n.abs();
  CurvePoint acc = CurvePoint::infinity();
  for (size_t i = k.bit_length(); i-- > 0;) {
    acc = add_unchecked(c, acc, acc);
    if (mpz_tstbit(k.raw(), i)) acc = add_unchecked(c, acc, base);
  }
  return acc;
}

std::optional<int> torsion_order(const WeierstrassCurve& c, const CurvePoint& P) {
  if (!on_curve(c, P)) fail(ErrorCode::PointNotOnCurve, P.str() + " not on " + c.str());
  if (P.is_infinity()) return 1;
  CurvePoint acc = P;
  for (int k = 2; k <= 12; ++k) {
    acc = add_unchecked(c, acc, P);
    if (acc.is_infinity()) return k;
  }
  return std::nullopt;  // beyond Mazur's bound over Q
}

// ---- rational torsion subgroup ----------------------------------------

namespace {

// #E(F_p) by direct count (odd p of good reduction); bounds the torsion order.
long count_points_mod_p(const WeierstrassCurve& c, long p) {
  auto red = [&](const Rational& r) {
    long v = mpz_fdiv_ui(r.num().raw(), (unsigned long)p);
    return v;
  };
  long a1 = red(c.a1()), a2 = red(c.a2()), a3 = red(c.a3()), a4 = red(c.a4()), a6 = red(c.a6());
  // chi table of squares mod p
  std::vector<int> is_sq(static_cast<size_t>(p), 0);
  for (long t = 0; t < p; ++t) is_sq[static_cast<size_t>(t * t % p)] = 1;
  long count = 1;  // infinity
  for (long x = 0; x < p; ++x) {
    long rhs = (((x + a2) % p * x + a4) % p * x + a6) % p;
    long b = (a1 * x + a3) % p;
    long disc = ((b * b + 4 * rhs) % p + p) % p;
    if (disc == 0)
      count += 1;
    else
      count += is_sq[static_cast<size_t>(disc)] ? 2 : 0;
  }
  return count;
}

}  // namespace

std::vector<CurvePoint> rational_torsion_points(const WeierstrassCurve& c) {
  if (!c.is_integral())
    fail(ErrorCode::NonIntegralModel, "torsion scan requires an integral model");

  // reduction mod good odd primes bounds the order
  long bound = 0;
  int used = 0;
  for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    if (c.discriminant().num().divisible_by(Integer(p))) continue;
    bound = bound == 0 ? count_points_mod_p(c, p) : std::gcd(bound, count_points_mod_p(c, p));
    if (++used == 4 || bound == 1) break;
  }

  std::vector<CurvePoint> pts;
  auto push_unique = [&](const CurvePoint& P) {
    if (std::find(pts.begin(), pts.end(), P) == pts.end()) pts.push_back(P);
  };

  if (bound == 1) return pts;

  // order-2 points: roots of the 2-division cubic with 2y + a1 x + a3 = 0
  if (bound == 0 || bound % 2 == 0) {
    for (const Rational& x : rational_roots(c.two_division_poly())) {
      CurvePoint P(x, -(c.a1() * x + c.a3()) / Rational(2));
      if (on_curve(c, P)) push_unique(P);
    }
  }

  DivisionPolynomials ctx(c);
  for (int n : {3, 4, 5, 6, 7, 8, 9, 10, 12}) {
    if (bound != 0 && bound % n != 0) continue;
    for (const Rational& x : rational_roots(ctx.f(n))) {
      for (const Rational& y : c.lift_y(x)) {
        CurvePoint P(x, y);
        if (on_curve(c, P) && torsion_order(c, P)) push_unique(P);
      }
    }
  }
  return pts;
}

int torsion_subgroup_order(const WeierstrassCurve& c) {
  int order = static_cast<int>(rational_torsion_points(c).size()) + 1;
  // Mazur's list, with 16 for Z/2 x Z/8
  static const std::set<int> mazur{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16};
  if (!mazur.count(order))
    fail(ErrorCode::Internal, "torsion order " + std::to_string(order) + " violates Mazur's bound");
  return order;
}

}  // namespace eds
