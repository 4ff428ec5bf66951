// Extraction of the elliptic divisibility sequence (A_n, B_n) from x(nQ),
// p-adic valuation profiles, and the support set of a term.
#pragma once

#include <optional>
#include <set>
#include <vector>

#include "eds/curve.hpp"

namespace eds {

struct EdsTerm {
  int n = 0;
  Integer A;
  Integer B;  // > 0, the minimal positive integer with B^2 x(nQ) integral
  // true when the reduced denominator of x(nQ) is B^2 exactly (always, for
  // points with rational y); false only for x-only algebraic points at the
  // finitely many primes ramified in the y-field, where ord_p of the
  // denominator is odd and B carries ceil(ord/2)
  bool denominator_square = true;

  Rational x() const { return Rational(A, B * B); }
};

// x(nQ) reduced, with B_n the square root of the denominator when that is a
// perfect square, else the minimal B with B^2 x(nQ) integral (flagged).
// Throws TorsionHit when nQ is at infinity, and NonSquareDenominator when
// the non-square part cannot come from ramification of the y-field (an
// inconsistent input model).
EdsTerm eds_term(const WeierstrassCurve& curve, const Rational& x0, int n);

// Terms 1..n_max; torsion hits are recorded as absent entries.
std::vector<std::optional<EdsTerm>> eds_sequence(const WeierstrassCurve& curve,
                                                 const Rational& x0, int n_max);

// Exact ord_p(B_n) for n = 1..n_max.  p must be a prime of good reduction;
// bad primes are refused.
std::vector<std::pair<int, long>> valuation_profile(const WeierstrassCurve& curve,
                                                    const Rational& x0, const Integer& p,
                                                    int n_max);

struct SupportSet {
  std::set<Integer> primes;
  bool complete = false;
};

// Primes dividing B found by trial division up to trial_bound; complete when
// the remaining cofactor is 1 or probable prime (then it is included).
SupportSet support_set(const EdsTerm& term, long trial_bound);

}  // namespace eds
