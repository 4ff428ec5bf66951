// High-precision reals (MPFR) with caller-chosen precision, a small complex
// type for simultaneous root iteration, and rational reconstruction.
//
// Exactness contract: floats are used only where a final answer is verified
// in exact arithmetic (root clustering) or where the quantity itself is a
// real number (heights); precision then only affects performance.
#pragma once

#include <mpfr.h>

#include <string>

#include "eds/integer.hpp"

namespace eds {

class Real {
 public:
  static constexpr mpfr_prec_t kDefaultPrec = 192;

  explicit Real(mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(r_, prec); mpfr_set_zero(r_, 1); }
  Real(double v, mpfr_prec_t prec) {
    mpfr_init2(r_, prec);
    mpfr_set_d(r_, v, MPFR_RNDN);
  }
  Real(const Integer& v, mpfr_prec_t prec) {
    mpfr_init2(r_, prec);
    mpfr_set_z(r_, v.raw(), MPFR_RNDN);
  }
  Real(const Rational& v, mpfr_prec_t prec) {
    mpfr_init2(r_, prec);
    mpfr_set_z(r_, v.num().raw(), MPFR_RNDN);
    mpfr_div_z(r_, r_, v.den().raw(), MPFR_RNDN);
  }
  static Real from_string(const std::string& decimal, mpfr_prec_t prec);

  Real(const Real& o) {
    mpfr_init2(r_, mpfr_get_prec(o.r_));
    mpfr_set(r_, o.r_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(r_, mpfr_get_prec(o.r_));
    mpfr_swap(r_, o.r_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(r_, mpfr_get_prec(o.r_));
      mpfr_set(r_, o.r_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(r_, o.r_);
    return *this;
  }
  ~Real() { mpfr_clear(r_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(r_); }
  double to_double() const { return mpfr_get_d(r_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(r_); }
  bool is_zero() const { return mpfr_zero_p(r_); }
  std::string str(size_t digits = 30) const;

  friend Real operator+(const Real& a, const Real& b) { return binop(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binop(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binop(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binop(a, b, mpfr_div); }
  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.r_, r_, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& b) { mpfr_add(r_, r_, b.r_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& b) { mpfr_sub(r_, r_, b.r_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& b) { mpfr_mul(r_, r_, b.r_, MPFR_RNDN); return *this; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.r_, b.r_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.r_, b.r_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.r_, b.r_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.r_, b.r_) >= 0; }

  Real abs() const {
    Real r(precision());
    mpfr_abs(r.r_, r_, MPFR_RNDN);
    return r;
  }
  Real sqrt() const {
    Real r(precision());
    mpfr_sqrt(r.r_, r_, MPFR_RNDN);
    return r;
  }
  // natural log; input must be positive
  Real log() const {
    Real r(precision());
    mpfr_log(r.r_, r_, MPFR_RNDN);
    return r;
  }
  Real mul_2exp(long e) const {
    Real r(precision());
    e >= 0 ? mpfr_mul_2ui(r.r_, r_, (unsigned long)e, MPFR_RNDN)
           : mpfr_div_2ui(r.r_, r_, (unsigned long)(-e), MPFR_RNDN);
    return r;
  }

  Integer round_to_integer() const {
    Real t(precision());
    mpfr_round(t.r_, r_);
    Integer z;
    mpfr_get_z(z.raw(), t.r_, MPFR_RNDZ);
    return z;
  }
  // exact value as a rational (mantissa * 2^exponent)
  Rational to_rational_exact() const;

  // natural log of |n|, n != 0, accurate to the working precision
  static Real log_abs(const Integer& n, mpfr_prec_t prec);

  mpfr_srcptr raw() const { return r_; }
  mpfr_ptr raw() { return r_; }

 private:
  using Fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  static Real binop(const Real& a, const Real& b, Fn fn) {
    Real r(std::max(a.precision(), b.precision()));
    fn(r.r_, a.r_, b.r_, MPFR_RNDN);
    return r;
  }
  mpfr_t r_;
};

struct Complex {
  Real re, im;

  explicit Complex(mpfr_prec_t prec = Real::kDefaultPrec) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  friend Complex operator+(const Complex& a, const Complex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real n = b.norm();
    Complex num = a * b.conj();
    return {num.re / n, num.im / n};
  }
  Complex conj() const { return {re, -im}; }
  Real norm() const { return re * re + im * im; }
  Real abs() const {
    Real r(std::max(re.precision(), im.precision()));
    mpfr_hypot(r.raw(), re.raw(), im.raw(), MPFR_RNDN);
    return r;
  }
};

// Best rational approximation of value with denominator <= denominator_bound
// (continued-fraction convergents plus the final semiconvergent).
Rational nearest_rational(const Rational& value, const Integer& denominator_bound);
Rational nearest_rational(const Real& value, const Integer& denominator_bound);

// Floor for every adaptively chosen working precision (EDS_PRECISION_BITS).
mpfr_prec_t min_working_precision();
void set_min_working_precision(mpfr_prec_t bits);

}  // namespace eds
