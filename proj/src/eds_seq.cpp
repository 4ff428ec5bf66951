#include "eds/eds_seq.hpp"

#include "eds/classify.hpp"
#include "eds/divpoly.hpp"

namespace eds {

EdsTerm eds_term(const WeierstrassCurve& curve, const Rational& x0, int n) {
  if (n < 1) fail(ErrorCode::InvalidInput, "eds_term needs n >= 1");
  Rational xn = x_multiple(curve, x0, n);
  const Integer& den = xn.den();
  if (den.is_perfect_square()) return EdsTerm{n, xn.num(), den.isqrt(), true};

  // Odd denominator exponents can only sit at primes ramified in the
  // y-field Q(sqrt(psi2^2(x0))); take ceil(ord/2) there, and insist the rest
  // is a genuine square.
  Rational disc = curve.two_division_poly().eval(x0);
  if (disc.is_zero())
    fail(ErrorCode::TorsionHit, "x(Q) is a 2-torsion x-coordinate");
  Integer ram_source = disc.num().abs() * disc.den() * Integer(2);
  Integer rest = den;
  Integer B(1);
  for (const Integer& p : prime_divisors(ram_source)) {
    unsigned long e = rest.remove_factor(p);
    for (unsigned long i = 0; i < (e + 1) / 2; ++i) B *= p;
  }
  if (!rest.is_perfect_square())
    fail(ErrorCode::NonSquareDenominator,
         "denominator of x(" + std::to_string(n) + "Q) = " + xn.str() +
             " has a non-square part away from the ramified primes (invalid input model)");
  B *= rest.isqrt();
  Integer A = xn.num() * Integer::divexact(B * B, den);
  return EdsTerm{n, A, B, false};
}

std::vector<std::optional<EdsTerm>> eds_sequence(const WeierstrassCurve& curve,
                                                 const Rational& x0, int n_max) {
  std::vector<std::optional<EdsTerm>> out;
  out.reserve(static_cast<size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    try {
      out.push_back(eds_term(curve, x0, n));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TorsionHit) throw;
      out.push_back(std::nullopt);
    }
  }
  return out;
}

std::vector<std::pair<int, long>> valuation_profile(const WeierstrassCurve& curve,
                                                    const Rational& x0, const Integer& p,
                                                    int n_max) {
  if (p < Integer(2) || !is_probable_prime(p, 40))
    fail(ErrorCode::InvalidInput, "valuation_profile needs a prime p");
  CurveInvariants inv = invariants(curve);
  if (inv.bad_primes.count(p))
    fail(ErrorCode::BadPrimeRefused,
         p.str() + " is a prime of bad reduction for " + curve.str());
  std::vector<std::pair<int, long>> out;
  for (int n = 1; n <= n_max; ++n) {
    EdsTerm t = eds_term(curve, x0, n);
    out.emplace_back(n, static_cast<long>(t.B.remove_factor(p)));
  }
  return out;
}

SupportSet support_set(const EdsTerm& term, long trial_bound) {
  if (term.B.sign() <= 0) fail(ErrorCode::InvalidInput, "support_set needs B >= 1");
  SupportSet out;
  Integer rest = term.B;
  for (long p : primes_up_to_million()) {
    if (p > trial_bound) break;
    if (Integer(p) * Integer(p) > rest) break;
    if (rest.remove_factor(Integer(p)) > 0) out.primes.insert(Integer(p));
  }
  if (rest.is_one()) {
    out.complete = true;
  } else if (rest <= Integer(trial_bound) * Integer(trial_bound) ||
             is_probable_prime(rest, 64)) {
    out.primes.insert(rest);
    out.complete = true;
  } else {
    out.complete = false;
  }
  return out;
}

}  // namespace eds
