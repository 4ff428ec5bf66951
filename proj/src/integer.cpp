#include "eds/integer.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace eds {

void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

const char* Error::code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput: return "invalid_input";
    case ErrorCode::SingularCurve: return "singular_curve";
    case ErrorCode::PointNotOnCurve: return "point_not_on_curve";
    case ErrorCode::DivisionByZero: return "division_by_zero";
    case ErrorCode::TorsionHit: return "torsion_hit";
    case ErrorCode::NonSquareDenominator: return "non_square_denominator";
    case ErrorCode::BadPrimeRefused: return "bad_prime_refused";
    case ErrorCode::BudgetExhausted: return "budget_exhausted";
    case ErrorCode::NonIntegralModel: return "non_integral_model";
    case ErrorCode::DataError: return "data_error";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

static bool valid_decimal(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer::Integer(std::string_view decimal) {
  mpz_init(z_);
  if (!valid_decimal(decimal) || mpz_set_str(z_, std::string(decimal).c_str(), 10) != 0)
    fail(ErrorCode::InvalidInput, "not a decimal integer: '" + std::string(decimal) + "'");
}

std::optional<Integer> Integer::parse(std::string_view decimal) {
  if (!valid_decimal(decimal)) return std::nullopt;
  return Integer(decimal);
}

std::string Integer::str() const {
  std::string out(mpz_sizeinbase(z_, 10) + 2, '\0');
  mpz_get_str(out.data(), 10, z_);
  out.resize(out.find('\0'));
  return out;
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.str(); }

size_t Integer::digits10() const {
  if (is_zero()) return 1;
  size_t est = mpz_sizeinbase(z_, 10);  // exact or one too high
  if (est == 1) return 1;
  Integer p = Integer::pow(10, est - 1);
  return abs() >= p ? est : est - 1;
}

std::pair<Integer, Integer> Integer::divmod(const Integer& a, const Integer& b) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "integer division by zero");
  Integer q, r;
  mpz_tdiv_qr(q.z_, r.z_, a.z_, b.z_);
  return {q, r};
}

Integer Integer::divexact(const Integer& a, const Integer& b) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "integer division by zero");
  if (!a.divisible_by(b)) fail(ErrorCode::Internal, "divexact: not divisible");
  Integer r;
  mpz_divexact(r.z_, a.z_, b.z_);
  return r;
}

void Rational::reduce() {
  if (den_.is_zero()) fail(ErrorCode::DivisionByZero, "rational with zero denominator");
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  Integer g = Integer::gcd(num_, den_);
  if (!g.is_one()) {
    num_ = Integer::divexact(num_, g);
    den_ = Integer::divexact(den_, g);
  }
}

Rational::Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

Rational::Rational(std::string_view s) {
  auto v = parse(s);
  if (!v) fail(ErrorCode::InvalidInput, "not a rational: '" + std::string(s) + "'");
  *this = *v;
}

std::optional<Rational> Rational::parse(std::string_view s) {
  size_t slash = s.find('/');
  if (slash == std::string_view::npos) {
    auto n = Integer::parse(s);
    if (!n) return std::nullopt;
    return Rational(std::move(*n));
  }
  auto n = Integer::parse(s.substr(0, slash));
  auto d = Integer::parse(s.substr(slash + 1));
  if (!n || !d || d->is_zero()) return std::nullopt;
  return Rational(std::move(*n), std::move(*d));
}

std::string Rational::str() const {
  if (den_.is_one()) return num_.str();
  return num_.str() + "/" + den_.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.str(); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "rational division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}
Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  return Rational(den_, num_);
}

double Rational::to_double() const {
  mpq_t q;
  mpq_init(q);
  mpz_set(mpq_numref(q), num_.raw());
  mpz_set(mpq_denref(q), den_.raw());
  double d = mpq_get_d(q);
  mpq_clear(q);
  return d;
}

}  // namespace eds
