// Factorization of univariate polynomials over Q, sized for degrees <= 256.
//
// Strategy: squarefree reduction, complex roots at adaptive precision, then a
// smallest-first search over conjugation-closed root clusters; every candidate
// factor is verified by exact division, so floating point can only cost time,
// never correctness.
#pragma once

#include <utility>
#include <vector>

#include "eds/poly.hpp"

namespace eds {

struct Factorization {
  Rational content;
  // irreducible, primitive, positive leading coefficient; sorted by
  // (degree, coefficients); multiplicities >= 1
  std::vector<std::pair<PolyQ, int>> factors;

  PolyQ product() const;
};

// All rational roots with multiplicity, each verified by exact evaluation.
std::vector<Rational> rational_roots(const PolyQ& f);

// Complete irreducible factorization over Q; throws BudgetExhausted when the
// subset search or precision ladder is out of room (never a wrong answer).
Factorization factor_over_Q(const PolyQ& f);

struct FactorLimits {
  size_t subset_budget = 30000000;
  int max_precision_growth = 16;  // cap = initial precision x this
};
Factorization factor_over_Q(const PolyQ& f, const FactorLimits& limits);

}  // namespace eds
