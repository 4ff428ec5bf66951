#include "eds/poly.hpp"

#include <ostream>
#include <sstream>

namespace eds {

const Rational& PolyQ::leading() const {
  if (c_.empty()) fail(ErrorCode::Internal, "leading coefficient of zero polynomial");
  return c_.back();
}

Rational PolyQ::eval(const Rational& x) const {
  Rational acc(0);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

PolyQ operator+(const PolyQ& a, const PolyQ& b) {
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return PolyQ(std::move(out));
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) {
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
  return PolyQ(std::move(out));
}

PolyQ PolyQ::operator-() const {
  std::vector<Rational> out;
  out.reserve(c_.size());
  for (const auto& v : c_) out.push_back(-v);
  return PolyQ(std::move(out));
}

// Schoolbook; degrees in this project stay small enough that anything fancier
// would not pay for itself.
PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return PolyQ();
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      out[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return PolyQ(std::move(out));
}

PolyQ operator*(const Rational& s, const PolyQ& p) {
  if (s.is_zero()) return PolyQ();
  std::vector<Rational> out;
  out.reserve(p.c_.size());
  for (const auto& v : p.c_) out.push_back(s * v);
  return PolyQ(std::move(out));
}

PolyQ PolyQ::pow(unsigned e) const {
  PolyQ acc = PolyQ::constant(1);
  PolyQ base = *this;
  while (e) {
    if (e & 1u) acc = acc * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return acc;
}

PolyQ PolyQ::derivative() const {
  if (c_.size() <= 1) return PolyQ();
  std::vector<Rational> out;
  out.reserve(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) out.push_back(Rational(Integer((long)i)) * c_[i]);
  return PolyQ(std::move(out));
}

PolyQ PolyQ::monic() const {
  if (is_zero()) return *this;
  return leading().inverse() * *this;
}

PolyQ PolyQ::shift_up(size_t k) const {
  if (is_zero()) return PolyQ();
  std::vector<Rational> out(k, Rational(0));
  out.insert(out.end(), c_.begin(), c_.end());
  return PolyQ(std::move(out));
}

ContentSplit PolyQ::primitive_part() const {
  if (is_zero()) return {Rational(0), PolyQ()};
  Integer den_lcm(1);
  for (const auto& v : c_) den_lcm = Integer::lcm(den_lcm, v.den());
  Integer num_gcd(0);
  for (const auto& v : c_)
    if (!v.is_zero()) num_gcd = Integer::gcd(num_gcd, v.num() * Integer::divexact(den_lcm, v.den()));
  Rational content(num_gcd, den_lcm);
  if (leading().sign() < 0) content = -content;
  PolyQ prim = content.inverse() * *this;
  return {content, prim};
}

int PolyQ::compare(const PolyQ& a, const PolyQ& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (size_t i = a.c_.size(); i-- > 0;) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
  }
  return 0;
}

std::string PolyQ::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    const Rational& v = c_[i];
    if (v.is_zero()) continue;
    Rational a = v.abs();
    if (first) {
      if (v.sign() < 0) os << "-";
      first = false;
    } else {
      os << (v.sign() < 0 ? " - " : " + ");
    }
    bool unit = (a == Rational(1));
    if (i == 0 || !unit) os << a.str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const PolyQ& p) { return os << p.str(); }

DivRem poly_divrem_exact(const PolyQ& dividend, const PolyQ& divisor) {
  if (divisor.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  std::vector<Rational> rem(dividend.coeffs());
  long dq = dividend.degree() - divisor.degree();
  if (dq < 0) return {PolyQ(), dividend};
  std::vector<Rational> quo(static_cast<size_t>(dq) + 1, Rational(0));
  Rational lead_inv = divisor.leading().inverse();
  const auto& dc = divisor.coeffs();
  for (long k = dq; k >= 0; --k) {
    Rational q = rem[static_cast<size_t>(k) + dc.size() - 1] * lead_inv;
    if (q.is_zero()) continue;
    quo[static_cast<size_t>(k)] = q;
    for (size_t j = 0; j < dc.size(); ++j) rem[static_cast<size_t>(k) + j] -= q * dc[j];
  }
  return {PolyQ(std::move(quo)), PolyQ(std::move(rem))};
}

bool poly_divides(const PolyQ& divisor, const PolyQ& dividend) {
  if (divisor.is_zero()) return false;
  if (dividend.is_zero()) return true;
  if (divisor.degree() > dividend.degree()) return false;
  return poly_divrem_exact(dividend, divisor).remainder.is_zero();
}

// gcd of primitive integer polynomials via primitive-PRS pseudo-remainders.
static PolyQ primitive_prs_gcd(PolyQ a, PolyQ b) {
  while (!b.is_zero()) {
    // pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b
    long e = a.degree() - b.degree() + 1;
    if (e < 0) e = 0;
    PolyQ scaled = Rational(Integer::pow(b.leading().num(), (unsigned long)e)) * a;
    PolyQ r = poly_divrem_exact(scaled, b).remainder;
    a = b;
    b = r.is_zero() ? PolyQ() : r.primitive_part().primitive;
  }
  return a;
}

PolyQ poly_gcd(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero()) return b.is_zero() ? PolyQ() : b.monic();
  if (b.is_zero()) return a.monic();
  PolyQ pa = a.primitive_part().primitive;
  PolyQ pb = b.primitive_part().primitive;
  if (pa.degree() < pb.degree()) std::swap(pa, pb);
  return primitive_prs_gcd(pa, pb).monic();
}

PolyQ squarefree_part(const PolyQ& f) {
  if (f.degree() <= 1) return f;
  PolyQ g = poly_gcd(f, f.derivative());
  if (g.degree() == 0) return f;
  return poly_divrem_exact(f, g).quotient;
}

PolyQ compose_fraction_numerator(const PolyQ& g, const PolyQ& num, const PolyQ& den) {
  if (g.is_zero()) return PolyQ();
  unsigned d = static_cast<unsigned>(g.degree());
  // Horner in num/den scaled by den^d.
  PolyQ acc = PolyQ::constant(g.coeff(d));
  for (long i = static_cast<long>(d) - 1; i >= 0; --i)
    acc = acc * num + g.coeff(static_cast<size_t>(i)) * den.pow(static_cast<unsigned>(d - i));
  return acc;
}

XRationalMap::XRationalMap(PolyQ num, PolyQ den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorCode::DivisionByZero, "rational map with zero denominator");
  PolyQ g = poly_gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = poly_divrem_exact(num_, g).quotient;
    den_ = poly_divrem_exact(den_, g).quotient;
  }
  Rational lead_inv = den_.leading().inverse();
  num_ = lead_inv * num_;
  den_ = lead_inv * den_;
}

Rational XRationalMap::apply(const Rational& x) const {
  Rational d = den_.eval(x);
  if (d.is_zero())
    fail(ErrorCode::TorsionHit, "x = " + x.str() + " is a pole of the map (image at infinity)");
  return num_.eval(x) / d;
}

XRationalMap XRationalMap::compose(const XRationalMap& outer, const XRationalMap& inner) {
  PolyQ n = compose_fraction_numerator(outer.num_, inner.num_, inner.den_);
  PolyQ d = compose_fraction_numerator(outer.den_, inner.num_, inner.den_);
  long degdiff = outer.num_.degree() - outer.den_.degree();
  // match total degree by the dropped den(inner)^(deg outer) homogenization
  if (degdiff > 0)
    d = d * inner.den_.pow(static_cast<unsigned>(degdiff));
  else if (degdiff < 0)
    n = n * inner.den_.pow(static_cast<unsigned>(-degdiff));
  return XRationalMap(std::move(n), std::move(d));
}

std::string XRationalMap::str(const std::string& var) const {
  if (den_ == PolyQ::constant(1)) return num_.str(var);
  return "(" + num_.str(var) + ") / (" + den_.str(var) + ")";
}

}  // namespace eds
