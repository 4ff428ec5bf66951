#include "eds/divpoly.hpp"

namespace eds {

namespace {

PolyQ f3_poly(const WeierstrassCurve& c) {
  // 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8
  return PolyQ({c.b8(), Rational(3) * c.b6(), Rational(3) * c.b4(), c.b2(), Rational(3)});
}

PolyQ f4_poly(const WeierstrassCurve& c) {
  // 2x^6 + b2 x^5 + 5 b4 x^4 + 10 b6 x^3 + 10 b8 x^2 + (b2 b8 - b4 b6) x + (b4 b8 - b6^2)
  return PolyQ({c.b4() * c.b8() - c.b6() * c.b6(), c.b2() * c.b8() - c.b4() * c.b6(),
                Rational(10) * c.b8(), Rational(10) * c.b6(), Rational(5) * c.b4(), c.b2(),
                Rational(2)});
}

}  // namespace

DivisionPolynomials::DivisionPolynomials(WeierstrassCurve curve)
    : curve_(std::move(curve)), F_(curve_.two_division_poly()), F2_(F_ * F_) {
  memo_[0] = PolyQ();
  memo_[1] = PolyQ::constant(1);
  memo_[2] = PolyQ::constant(1);
  memo_[3] = f3_poly(curve_);
  memo_[4] = f4_poly(curve_);
}

const PolyQ& DivisionPolynomials::f(int n) {
  if (n < 0) fail(ErrorCode::InvalidInput, "division polynomial index must be >= 0");
  auto it = memo_.find(n);
  if (it != memo_.end()) return it->second;
  PolyQ value;
  int m = n / 2;
  if (n % 2 == 0) {
    // f_{2m} = f_m (f_{m+2} f_{m-1}^2 - f_{m-2} f_{m+1}^2)
    value = f(m) * (f(m + 2) * (f(m - 1) * f(m - 1)) - f(m - 2) * (f(m + 1) * f(m + 1)));
  } else if (m % 2 == 0) {
    // f_{2m+1} = F^2 f_{m+2} f_m^3 - f_{m-1} f_{m+1}^3, m even
    value = F2_ * f(m + 2) * f(m).pow(3) - f(m - 1) * f(m + 1).pow(3);
  } else {
    // f_{2m+1} = f_{m+2} f_m^3 - F^2 f_{m-1} f_{m+1}^3, m odd
    value = f(m + 2) * f(m).pow(3) - F2_ * f(m - 1) * f(m + 1).pow(3);
  }
  return memo_.emplace(n, std::move(value)).first->second;
}

DivisionPolyPair DivisionPolynomials::pair(int n) {
  if (n < 1) fail(ErrorCode::InvalidInput, "division_polynomials needs n >= 1");
  DivisionPolyPair out;
  out.n = n;
  const PolyQ& fn = f(n);
  if (n % 2 == 1) {
    out.psi_squared = fn * fn;
    out.phi = PolyQ::x() * out.psi_squared - F_ * f(n + 1) * f(n - 1);
  } else {
    out.psi_squared = F_ * fn * fn;
    out.phi = PolyQ::x() * out.psi_squared - f(n + 1) * f(n - 1);
  }
  if (out.phi.degree() != static_cast<long>(n) * n ||
      out.psi_squared.degree() != static_cast<long>(n) * n - 1 ||
      out.phi.leading() != Rational(1))
    fail(ErrorCode::Internal, "division polynomial degree bookkeeping failed");
  return out;
}

XRationalMap DivisionPolynomials::x_multiplication_map(int n) {
  DivisionPolyPair p = pair(n);
  return XRationalMap(p.phi, p.psi_squared);
}

DivisionPolyPair division_polynomials(const WeierstrassCurve& curve, int n) {
  DivisionPolynomials ctx(curve);
  return ctx.pair(n);
}

namespace {

// f_k(x0) for k = 0..n_hi by the same recurrences, on values.
std::vector<Rational> f_values(const WeierstrassCurve& c, const Rational& x0, int n_hi) {
  std::vector<Rational> v(static_cast<size_t>(std::max(n_hi, 4)) + 1, Rational(0));
  Rational F = c.two_division_poly().eval(x0);
  Rational F2 = F * F;
  v[1] = Rational(1);
  if (n_hi >= 2) v[2] = Rational(1);
  if (n_hi >= 3) v[3] = f3_poly(c).eval(x0);
  if (n_hi >= 4) v[4] = f4_poly(c).eval(x0);
  for (int n = 5; n <= n_hi; ++n) {
    int m = n / 2;
    if (n % 2 == 0)
      v[n] = v[m] * (v[m + 2] * v[m - 1] * v[m - 1] - v[m - 2] * v[m + 1] * v[m + 1]);
    else if (m % 2 == 0)
      v[n] = F2 * v[m + 2] * v[m] * v[m] * v[m] - v[m - 1] * v[m + 1] * v[m + 1] * v[m + 1];
    else
      v[n] = v[m + 2] * v[m] * v[m] * v[m] - F2 * v[m - 1] * v[m + 1] * v[m + 1] * v[m + 1];
  }
  return v;
}

}  // namespace

Rational x_multiple(const WeierstrassCurve& curve, const Rational& x0, int n) {
  if (n == 0) fail(ErrorCode::InvalidInput, "x_multiple needs n != 0");
  if (n < 0) n = -n;  // x(-P) on the multiplication-by-n picture: x(nQ) = x(-nQ)
  if (n == 1) return x0;
  auto v = f_values(curve, x0, n + 1);
  Rational F = curve.two_division_poly().eval(x0);
  Rational num, den;
  if (n % 2 == 1) {
    den = v[n] * v[n];
    num = x0 * den - F * v[n + 1] * v[n - 1];
  } else {
    den = F * v[n] * v[n];
    num = x0 * den - v[n + 1] * v[n - 1];
  }
  if (den.is_zero())
    fail(ErrorCode::TorsionHit,
         "psi_" + std::to_string(n) + "^2 vanishes at x = " + x0.str() + " (nQ at infinity)");
  return num / den;
}

bool is_torsion_x(const WeierstrassCurve& curve, const Rational& x0, int max_n) {
  auto v = f_values(curve, x0, max_n + 1);
  Rational F = curve.two_division_poly().eval(x0);
  if (F.is_zero()) return true;
  for (int n = 2; n <= max_n; ++n)
    if (v[n].is_zero()) return true;
  return false;
}

Integer PsiValueSeq::integer_value(int n) const {
  if (n < 1 || n > static_cast<int>(values.size()))
    fail(ErrorCode::InvalidInput, "psi index out of range");
  const Rational& v = values[static_cast<size_t>(n - 1)];
  if (!v.is_integer()) fail(ErrorCode::InvalidInput, "psi value is not integral");
  return v.num();
}

PsiValueSeq psi_at_point(const WeierstrassCurve& curve, const CurvePoint& Q, int n_max) {
  if (Q.is_infinity()) fail(ErrorCode::InvalidInput, "psi_at_point needs an affine point");
  if (!on_curve(curve, Q)) fail(ErrorCode::PointNotOnCurve, Q.str() + " not on " + curve.str());
  if (n_max < 1) fail(ErrorCode::InvalidInput, "psi_at_point needs n_max >= 1");

  PsiValueSeq out{curve, Q, {}, {}, true};
  out.integral = Q.x().is_integer() && Q.y().is_integer();

  const Rational& x = Q.x();
  std::vector<Rational> psi(static_cast<size_t>(std::max(n_max, 4)) + 1, Rational(0));
  psi[1] = Rational(1);
  psi[2] = Rational(2) * Q.y() + curve.a1() * x + curve.a3();
  psi[3] = f3_poly(curve).eval(x);
  psi[4] = psi[2] * f4_poly(curve).eval(x);
  bool two_torsion = psi[2].is_zero();
  // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
  // psi_{2m}   = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2) / psi_2
  for (int n = 5; n <= n_max; ++n) {
    int m = n / 2;
    if (n % 2 == 1) {
      psi[n] = psi[m + 2] * psi[m] * psi[m] * psi[m] - psi[m - 1] * psi[m + 1] * psi[m + 1] * psi[m + 1];
    } else if (two_torsion) {
      psi[n] = Rational(0);  // 2 | n and Q has order 2
    } else {
      psi[n] = psi[m] * (psi[m + 2] * psi[m - 1] * psi[m - 1] - psi[m - 2] * psi[m + 1] * psi[m + 1]) /
               psi[2];
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    out.values.push_back(psi[static_cast<size_t>(n)]);
    if (psi[static_cast<size_t>(n)].is_zero()) out.zero_indices.push_back(n);
    if (!psi[static_cast<size_t>(n)].is_integer()) out.integral = false;
  }
  return out;
}

}  // namespace eds
