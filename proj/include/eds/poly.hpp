// Dense univariate polynomials over Q, lowest degree first, and quotients of
// two coprime polynomials (x-coordinate maps of isogenies and multiplication).
//
// The zero polynomial is the empty coefficient list; a non-zero polynomial
// never stores a trailing zero coefficient, so degree() is well defined.
#pragma once

#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "eds/integer.hpp"

namespace eds {

struct ContentSplit;

class PolyQ {
 public:
  PolyQ() = default;
  PolyQ(std::initializer_list<Rational> coeffs_low_first) : c_(coeffs_low_first) { trim(); }
  explicit PolyQ(std::vector<Rational> coeffs_low_first) : c_(std::move(coeffs_low_first)) {
    trim();
  }
  static PolyQ constant(Rational v) { return PolyQ({std::move(v)}); }
  static PolyQ x() { return PolyQ({Rational(0), Rational(1)}); }
  // c1*x + c0
  static PolyQ linear(Rational c1, Rational c0) { return PolyQ({std::move(c0), std::move(c1)}); }

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is -1 by convention
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const Rational& leading() const;
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  Rational eval(const Rational& x) const;

  friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
  PolyQ operator-() const;
  friend PolyQ operator*(const Rational& s, const PolyQ& p);
  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c_ == b.c_; }

  PolyQ pow(unsigned e) const;
  PolyQ derivative() const;
  PolyQ monic() const;
  // multiply by x^k
  PolyQ shift_up(size_t k) const;

  // Primitive integer form: *this == content * primitive, where primitive has
  // coprime integer coefficients and positive leading coefficient.
  ContentSplit primitive_part() const;

  // Canonical ordering: by degree, then leading-first coefficient comparison.
  static int compare(const PolyQ& a, const PolyQ& b);

  std::string str(const std::string& var = "x") const;
  friend std::ostream& operator<<(std::ostream& os, const PolyQ& p);

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

struct ContentSplit {
  Rational content;
  PolyQ primitive;
};

// Exact division with remainder: dividend = divisor*quotient + remainder,
// deg(remainder) < deg(divisor).  Throws on a zero divisor.
struct DivRem {
  PolyQ quotient;
  PolyQ remainder;
};
DivRem poly_divrem_exact(const PolyQ& dividend, const PolyQ& divisor);

// True iff divisor is non-zero and divides dividend exactly.
bool poly_divides(const PolyQ& divisor, const PolyQ& dividend);

// Monic gcd over Q (primitive-PRS underneath to keep coefficients tame).
PolyQ poly_gcd(const PolyQ& a, const PolyQ& b);

// Squarefree part: f / gcd(f, f').
PolyQ squarefree_part(const PolyQ& f);

// Numerator of g(num/den) as a polynomial: sum g_i * num^i * den^(deg g - i).
PolyQ compose_fraction_numerator(const PolyQ& g, const PolyQ& num, const PolyQ& den);

// Quotient num/den of coprime polynomials, denominator monic and non-zero.
class XRationalMap {
 public:
  XRationalMap() : num_(PolyQ::x()), den_(PolyQ::constant(1)) {}
  XRationalMap(PolyQ num, PolyQ den);

  const PolyQ& num() const { return num_; }
  const PolyQ& den() const { return den_; }
  long degree() const { return std::max(num_.degree(), den_.degree()); }

  // Evaluation; throws TorsionHit when x lands on a pole of the map.
  Rational apply(const Rational& x) const;

  // (outer o inner) as a reduced rational map.
  static XRationalMap compose(const XRationalMap& outer, const XRationalMap& inner);

  friend bool operator==(const XRationalMap& a, const XRationalMap& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  std::string str(const std::string& var = "x") const;

 private:
  PolyQ num_;
  PolyQ den_;
};

}  // namespace eds
