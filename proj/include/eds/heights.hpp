// Naive and canonical heights on the x-coordinate, growth diagnostics, and
// the isogeny height relation check.
//
// Normalization: the naive height of a reduced fraction is
// log max(|num|, den), NOT divided by 2, and the canonical height is the
// quadratic limit of that quantity, so every value here is twice what most
// computer algebra systems print.  h^(mQ) = m^2 h^(Q) holds verbatim in this
// normalization.
//
// The canonical height is computed as a sum of per-place duplication series
//   lam(Q) = 4^-J lam(2^J Q) + sum_{j<J} 4^-(j+1) * (1/2) log |psi2^2(x_j)|_v
// evaluated with MPFR reals at the archimedean place and bounded-precision
// p-adics at the finitely many primes dividing den(x) * disc.  The series
// terminates exactly once the orbit enters the kernel of reduction, where
// lam_p = ord_p(B) log p in closed form.
#pragma once

#include <optional>
#include <vector>

#include "eds/curve.hpp"
#include "eds/eds_seq.hpp"
#include "eds/real.hpp"
#include "eds/velu.hpp"

namespace eds {

// log max(|num|, den) of the reduced fraction, >= 30 significant digits.
Real naive_height(const Rational& x, mpfr_prec_t prec = Real::kDefaultPrec);

struct CanonicalHeight {
  Real value;
  bool torsion = false;  // torsion points have canonical height exactly 0
};

// Canonical height of the point with x-coordinate x0 (un-halved normalization).
// tolerance bounds the truncation error of the series; the default working
// precision leaves the result far more accurate than that.
CanonicalHeight canonical_height(const WeierstrassCurve& curve, const Rational& x0,
                                 double tolerance = 1e-10);

struct HeightReport {
  int n = 0;
  Real naive;                // log max(|A_n|, B_n^2)
  Real ratio;                // naive / n^2
  Real archimedean_part;     // log max(1, |x(nQ)|)
  Real nonarchimedean_part;  // log B_n^2
  bool flagged = false;      // archimedean part above the fitted C (log n)^2
};

// Per-n height decomposition for n = 1..n_max; torsion hits are skipped.
std::vector<HeightReport> growth_diagnostics(const WeierstrassCurve& curve, const Rational& x0,
                                             int n_max);

struct IsogenyHeightSample {
  Rational x;
  Real lhs;        // h^(sigma(R))
  Real rhs;        // degree * h^(R)
  Real deviation;  // |lhs - rhs|
};

struct IsogenyHeightReport {
  std::vector<IsogenyHeightSample> samples;
  Real max_deviation;
  bool within_tolerance = false;
};

// Checks h^(sigma(R)) = degree * h^(R) on sample x-coordinates of the source.
IsogenyHeightReport isogeny_height_check(const IsogenyData& sigma,
                                         const std::vector<Rational>& sample_points,
                                         double tolerance);

}  // namespace eds
