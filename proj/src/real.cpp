#include "eds/real.hpp"

#include <cstdio>
#include <vector>

namespace eds {

Real Real::from_string(const std::string& decimal, mpfr_prec_t prec) {
  Real r(prec);
  if (mpfr_set_str(r.r_, decimal.c_str(), 10, MPFR_RNDN) != 0)
    fail(ErrorCode::InvalidInput, "not a decimal real: '" + decimal + "'");
  return r;
}

std::string Real::str(size_t digits) const {
  char* s = nullptr;
  // %.*Rg keeps the output readable for logs and reports
  if (mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), r_) < 0)
    fail(ErrorCode::Internal, "mpfr_asprintf failed");
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

Rational Real::to_rational_exact() const {
  if (is_zero()) return Rational(0);
  if (!mpfr_number_p(r_)) fail(ErrorCode::InvalidInput, "non-finite real");
  Integer mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.raw(), r_);
  if (e >= 0) return Rational(mant * Integer::pow(2, (unsigned long)e));
  return Rational(mant, Integer::pow(2, (unsigned long)(-e)));
}

Real Real::log_abs(const Integer& n, mpfr_prec_t prec) {
  if (n.is_zero()) fail(ErrorCode::InvalidInput, "log of zero");
  Real r(prec);
  mpfr_set_z(r.raw(), n.raw(), MPFR_RNDN);
  mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);
  mpfr_log(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

Rational nearest_rational(const Rational& value, const Integer& denominator_bound) {
  if (denominator_bound < Integer(1))
    fail(ErrorCode::InvalidInput, "denominator bound must be >= 1");
  if (value.den() <= denominator_bound) return value;

  // Continued-fraction walk: p/q convergents of value.
  Integer p_prev(0), q_prev(1);  // h_{-2}/k_{-2}
  Integer p_cur(1), q_cur(0);    // h_{-1}/k_{-1}
  Integer num = value.num(), den = value.den();
  while (true) {
    auto [a, r] = Integer::divmod(num, den);
    if (r.sign() < 0) {  // floor division for negatives
      a -= Integer(1);
      r += den;
    }
    Integer p_next = a * p_cur + p_prev;
    Integer q_next = a * q_cur + q_prev;
    if (q_next > denominator_bound) {
      // best semiconvergent against the last full convergent
      Integer k = Integer::divexact(denominator_bound - q_prev - Integer::mod(denominator_bound - q_prev, q_cur),
                                    q_cur);
      Rational best(p_cur, q_cur);
      if (k.sign() > 0) {
        Rational semi(k * p_cur + p_prev, k * q_cur + q_prev);
        if ((value - semi).abs() < (value - best).abs()) best = semi;
      }
      return best;
    }
    p_prev = std::move(p_cur);
    q_prev = std::move(q_cur);
    p_cur = std::move(p_next);
    q_cur = std::move(q_next);
    if (r.is_zero()) return Rational(p_cur, q_cur);  // exact
    num = den;
    den = std::move(r);
  }
}

Rational nearest_rational(const Real& value, const Integer& denominator_bound) {
  return nearest_rational(value.to_rational_exact(), denominator_bound);
}

namespace {
mpfr_prec_t g_min_prec = 128;
}

mpfr_prec_t min_working_precision() { return g_min_prec; }
void set_min_working_precision(mpfr_prec_t bits) { g_min_prec = std::max<mpfr_prec_t>(bits, 64); }

}  // namespace eds
