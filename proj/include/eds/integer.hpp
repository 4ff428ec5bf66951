// Arbitrary-precision integers and reduced rationals on top of GMP.
//
// Integer keeps GMP's canonical sign+magnitude representation (canonical zero).
// Rational is always reduced with a positive denominator, so equality is
// structural.  Both round-trip through decimal strings.
#pragma once

#include <gmp.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eds {

class Error;

class Integer {
 public:
  Integer() { mpz_init(z_); }
  Integer(long v) { mpz_init_set_si(z_, v); }  // NOLINT: implicit by design
  explicit Integer(std::string_view decimal);
  Integer(const Integer& o) { mpz_init_set(z_, o.z_); }
  Integer(Integer&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  Integer& operator=(const Integer& o) {
    if (this != &o) mpz_set(z_, o.z_);
    return *this;
  }
  Integer& operator=(Integer&& o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~Integer() { mpz_clear(z_); }

  static std::optional<Integer> parse(std::string_view decimal);

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Integer& v);

  int sign() const { return mpz_sgn(z_); }
  bool is_zero() const { return mpz_sgn(z_) == 0; }
  bool is_one() const { return mpz_cmp_ui(z_, 1) == 0; }
  bool odd() const { return mpz_odd_p(z_); }
  bool fits_long() const { return mpz_fits_slong_p(z_); }
  long to_long() const { return mpz_get_si(z_); }
  double to_double() const { return mpz_get_d(z_); }

  size_t bit_length() const { return is_zero() ? 0 : mpz_sizeinbase(z_, 2); }
  // Exact count of decimal digits of |n| (1 for zero).
  size_t digits10() const;

  friend Integer operator+(const Integer& a, const Integer& b) {
    Integer r;
    mpz_add(r.z_, a.z_, b.z_);
    return r;
  }
  friend Integer operator-(const Integer& a, const Integer& b) {
    Integer r;
    mpz_sub(r.z_, a.z_, b.z_);
    return r;
  }
  friend Integer operator*(const Integer& a, const Integer& b) {
    Integer r;
    mpz_mul(r.z_, a.z_, b.z_);
    return r;
  }
  Integer operator-() const {
    Integer r;
    mpz_neg(r.z_, z_);
    return r;
  }
  Integer& operator+=(const Integer& b) {
    mpz_add(z_, z_, b.z_);
    return *this;
  }
  Integer& operator-=(const Integer& b) {
    mpz_sub(z_, z_, b.z_);
    return *this;
  }
  Integer& operator*=(const Integer& b) {
    mpz_mul(z_, z_, b.z_);
    return *this;
  }

  friend bool operator==(const Integer& a, const Integer& b) { return mpz_cmp(a.z_, b.z_) == 0; }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    int c = mpz_cmp(a.z_, b.z_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Integer abs() const {
    Integer r;
    mpz_abs(r.z_, z_);
    return r;
  }

  static Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.z_, a.z_, b.z_);
    return r;
  }
  static Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.z_, a.z_, b.z_);
    return r;
  }
  static Integer pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.z_, base.z_, e);
    return r;
  }

  // Quotient/remainder truncated toward zero.
  static std::pair<Integer, Integer> divmod(const Integer& a, const Integer& b);
  // Division known to be exact; throws Error::Internal if it is not.
  static Integer divexact(const Integer& a, const Integer& b);
  bool divisible_by(const Integer& d) const { return mpz_divisible_p(z_, d.z_) != 0; }
  // Non-negative remainder mod m (m > 0).
  static Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.z_, a.z_, m.z_);
    return r;
  }
  static Integer powmod(const Integer& b, const Integer& e, const Integer& m) {
    Integer r;
    mpz_powm(r.z_, b.z_, e.z_, m.z_);
    return r;
  }

  bool is_perfect_square() const { return sign() >= 0 && mpz_perfect_square_p(z_); }
  Integer isqrt() const {
    Integer r;
    mpz_sqrt(r.z_, z_);
    return r;
  }
  // Truncated k-th root; second element tells whether it is exact.
  std::pair<Integer, bool> kth_root(unsigned long k) const {
    Integer r;
    bool exact = mpz_root(r.z_, z_, k) != 0;
    return {r, exact};
  }

  // Divides out the highest power of f; returns the multiplicity.
  unsigned long remove_factor(const Integer& f) {
    Integer self(*this);
    return mpz_remove(z_, self.z_, f.z_);
  }

  mpz_srcptr raw() const { return z_; }
  mpz_ptr raw() { return z_; }

 private:
  mpz_t z_;
};

class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(Integer n) : num_(std::move(n)), den_(1) {}
  Rational(Integer n, Integer d);
  explicit Rational(std::string_view s);

  static std::optional<Rational> parse(std::string_view s);

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_.is_one(); }
  int sign() const { return num_.sign(); }

  // "-5927/1000" form, plain integer when the denominator is 1.
  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Rational& v);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  Rational inverse() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  double to_double() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return (a.num_ * b.den_) <=> (b.num_ * a.den_);
  }

 private:
  void reduce();
  Integer num_;
  Integer den_;  // > 0
};

// Error codes shared across the library.  The CLI maps codes to exit status
// and a machine-parsable diagnostic line.
enum class ErrorCode {
  InvalidInput,
  SingularCurve,
  PointNotOnCurve,
  DivisionByZero,
  TorsionHit,
  NonSquareDenominator,
  BadPrimeRefused,
  BudgetExhausted,
  NonIntegralModel,
  DataError,
  Internal,
};

class Error : public std::exception {
 public:
  Error(ErrorCode code, std::string msg) : code_(code), msg_(std::move(msg)) {}
  const char* what() const noexcept override { return msg_.c_str(); }
  ErrorCode code() const { return code_; }
  static const char* code_name(ErrorCode c);

 private:
  ErrorCode code_;
  std::string msg_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& msg);

}  // namespace eds
