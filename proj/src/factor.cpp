#include "eds/factor.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "eds/classify.hpp"
#include "eds/real.hpp"

namespace eds {

PolyQ Factorization::product() const {
  PolyQ acc = PolyQ::constant(content);
  for (const auto& [f, m] : factors) acc = acc * f.pow(static_cast<unsigned>(m));
  return acc;
}

namespace {

// ---- root finding ------------------------------------------------------

size_t max_coeff_bits(const PolyQ& g) {
  size_t bits = 1;
  for (const auto& c : g.coeffs()) bits = std::max(bits, c.num().bit_length());
  return bits;
}

// Starting guesses on annuli from the upper convex hull of (i, log2|c_i|)
// (Bini's strategy); far better than a single circle when root magnitudes
// spread widely.  `offset` rotates the whole configuration between retries.
std::vector<std::complex<double>> hull_start_points(const std::vector<double>& log2c, size_t n,
                                                    double offset) {
  std::vector<size_t> hull;  // indices with finite log2c, upper hull
  for (size_t i = 0; i <= n; ++i) {
    if (!std::isfinite(log2c[i])) continue;
    while (hull.size() >= 2) {
      size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      // keep the hull upper-concave
      double cross = (log2c[b] - log2c[a]) * double(i - a) - (log2c[i] - log2c[a]) * double(b - a);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  std::vector<std::complex<double>> z;
  z.reserve(n);
  for (size_t s = 0; s + 1 < hull.size(); ++s) {
    size_t i1 = hull[s], i2 = hull[s + 1];
    double radius = std::exp2((log2c[i1] - log2c[i2]) / double(i2 - i1));
    radius = std::min(std::max(radius, 1e-40), 1e40);
    size_t count = i2 - i1;
    for (size_t j = 0; j < count; ++j) {
      double th = 2.0 * M_PI * (double(j) / double(count)) + 0.4 * double(s) + offset;
      z.push_back(std::polar(radius, th));
    }
  }
  while (z.size() < n) z.push_back(std::polar(1.0, offset + double(z.size())));
  z.resize(n);
  return z;
}

// Aberth-Ehrlich in double precision; coefficients pre-scaled by the caller.
std::vector<std::complex<double>> aberth_double(const std::vector<double>& c, double offset) {
  size_t n = c.size() - 1;
  std::vector<double> log2c(n + 1);
  for (size_t i = 0; i <= n; ++i)
    log2c[i] = c[i] == 0.0 ? -std::numeric_limits<double>::infinity() : std::log2(std::abs(c[i]));
  auto z = hull_start_points(log2c, n, offset);
  auto eval = [&](std::complex<double> x, std::complex<double>& p, std::complex<double>& dp) {
    p = c[n];
    dp = 0.0;
    for (size_t i = n; i-- > 0;) {
      dp = dp * x + p;
      p = p * x + c[i];
    }
  };
  for (int iter = 0; iter < 1000; ++iter) {
    double worst = 0.0;
    for (size_t k = 0; k < n; ++k) {
      std::complex<double> p, dp;
      eval(z[k], p, dp);
      if (p == 0.0) continue;
      std::complex<double> w = dp / p;
      std::complex<double> s = 0.0;
      for (size_t j = 0; j < n; ++j)
        if (j != k) s += 1.0 / (z[k] - z[j]);
      std::complex<double> denom = w - s;
      if (denom == 0.0) continue;
      std::complex<double> corr = 1.0 / denom;
      z[k] -= corr;
      worst = std::max(worst, std::abs(corr) / (1.0 + std::abs(z[k])));
    }
    if (worst < 1e-14) break;
  }
  return z;
}

struct MpPoly {
  std::vector<Real> c;  // low first
  mpfr_prec_t prec;

  static MpPoly from(const PolyQ& g, mpfr_prec_t prec) {
    MpPoly out{{}, prec};
    out.c.reserve(g.coeffs().size());
    for (const auto& v : g.coeffs()) out.c.emplace_back(v, prec);
    return out;
  }
  void eval(const Complex& x, Complex& p, Complex& dp) const {
    p = Complex(c.back(), Real(0.0, prec));
    dp = Complex(Real(0.0, prec), Real(0.0, prec));
    for (size_t i = c.size() - 1; i-- > 0;) {
      dp = dp * x + p;
      p = p * x;
      p.re += c[i];
    }
  }
};

// Newton refinement; returns false when it fails to contract.
bool polish_root(const MpPoly& P, Complex& z, const Real& eps) {
  for (int it = 0; it < 64; ++it) {
    Complex p, dp;
    P.eval(z, p, dp);
    Real pn = p.abs();
    if (pn < eps) return true;
    Real dn = dp.abs();
    if (dn.is_zero()) return false;
    Complex step = p / dp;
    z = z - step;
    if (step.abs() < eps) {
      P.eval(z, p, dp);
      return p.abs() < eps * Real(1e6, z.re.precision());
    }
  }
  return false;
}

// Full Aberth in mpfr as the fallback when double precision cannot cope.
std::vector<Complex> aberth_mpfr(const MpPoly& P, mpfr_prec_t prec, double offset) {
  size_t n = P.c.size() - 1;
  std::vector<double> log2c(n + 1, -std::numeric_limits<double>::infinity());
  for (size_t i = 0; i <= n; ++i) {
    if (P.c[i].is_zero()) continue;
    log2c[i] = (P.c[i].abs().log() / Real(std::log(2.0), 64)).to_double();
  }
  auto zd = hull_start_points(log2c, n, offset);
  std::vector<Complex> z;
  z.reserve(n);
  for (size_t k = 0; k < n; ++k)
    z.emplace_back(Real(zd[k].real(), prec), Real(zd[k].imag(), prec));
  Real eps(0.0, prec);
  mpfr_set_ui_2exp(eps.raw(), 1, -(prec - 8), MPFR_RNDN);
  for (int iter = 0; iter < 500; ++iter) {
    Real worst(0.0, prec);
    for (size_t k = 0; k < n; ++k) {
      Complex p, dp;
      P.eval(z[k], p, dp);
      if (p.abs().is_zero()) continue;
      Complex w = dp / p;
      Complex s(Real(0.0, prec), Real(0.0, prec));
      for (size_t j = 0; j < n; ++j)
        if (j != k) {
          Complex d = z[k] - z[j];
          Real nn = d.norm();
          if (nn.is_zero()) {  // deterministic nudge apart
            z[k].re += Real(1e-4 * (double(k) + 1.0), prec);
            d = z[k] - z[j];
            nn = d.norm();
          }
          s = s + d.conj() / Complex(nn, Real(0.0, prec));
        }
      Complex denom = w - s;
      if (denom.abs().is_zero()) continue;
      Complex corr = Complex(Real(1.0, prec), Real(0.0, prec)) / denom;
      z[k] = z[k] - corr;
      Real rel = corr.abs() / (Real(1.0, prec) + z[k].abs());
      if (rel > worst) worst = rel;
    }
    if (worst < eps) break;
  }
  return z;
}

// All complex roots of the squarefree primitive g, polished to prec bits.
// Returns empty on failure (caller escalates precision / retries rotated).
std::vector<Complex> find_roots(const PolyQ& g, mpfr_prec_t prec, int attempt = 0) {
  size_t n = static_cast<size_t>(g.degree());
  MpPoly P = MpPoly::from(g, prec);
  // residual tolerance: |g(z)| measured against the coefficient scale at z
  Real scale(0.0, prec);
  for (const auto& c : P.c) scale += c.abs();
  Real eps = scale;
  mpfr_mul_2si(eps.raw(), eps.raw(), -(prec * 2 / 3), MPFR_RNDN);

  // polish and insist on n pairwise-distinct roots (input is squarefree)
  auto polished = [&](std::vector<Complex> cand) -> std::vector<Complex> {
    if (cand.size() != n) return {};
    for (auto& z : cand)
      if (!polish_root(P, z, eps)) return {};
    Real sep(0.0, prec);
    mpfr_set_ui_2exp(sep.raw(), 1, -(prec / 2), MPFR_RNDN);
    for (size_t i = 0; i < cand.size(); ++i)
      for (size_t j = i + 1; j < cand.size(); ++j) {
        Real d = (cand[i] - cand[j]).abs();
        if (d < sep * (Real(1.0, prec) + cand[i].abs())) return {};
      }
    return cand;
  };

  double base = 0.5 + 0.7713 * double(attempt);
  if (max_coeff_bits(g) < 900) {
    std::vector<double> cd;
    cd.reserve(n + 1);
    double scale_exp = 0;
    for (const auto& v : g.coeffs()) scale_exp = std::max(scale_exp, double(v.num().bit_length()));
    for (const auto& v : g.coeffs()) {
      Real r(v, 64);
      r = r.mul_2exp(-long(scale_exp) + 40);
      cd.push_back(r.to_double());
    }
    for (int sub = 0; sub < 3; ++sub) {
      auto zd = aberth_double(cd, base + 0.311 * double(sub));
      std::vector<Complex> cand;
      cand.reserve(n);
      for (auto& w : zd) cand.emplace_back(Real(w.real(), prec), Real(w.imag(), prec));
      auto roots = polished(std::move(cand));
      if (!roots.empty()) return roots;
    }
  }
  for (int sub = 0; sub < 2; ++sub) {
    auto roots = polished(aberth_mpfr(P, prec, base + 0.177 + 0.311 * double(sub)));
    if (!roots.empty()) return roots;
  }
  return {};
}

// ---- cluster search ----------------------------------------------------

struct Unit {
  int degree;                 // 1 (real root) or 2 (conjugate pair)
  std::vector<Real> poly;     // monic real polynomial of that degree, low first
};

// Conjugation-closed clustering; empty on failure.
std::vector<Unit> make_units(std::vector<Complex> roots, mpfr_prec_t prec) {
  Real tol(0.0, prec);
  mpfr_set_ui_2exp(tol.raw(), 1, -(prec / 3), MPFR_RNDN);
  std::vector<Unit> units;
  std::vector<bool> used(roots.size(), false);
  // deterministic order: by (re, im)
  std::vector<size_t> order(roots.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (roots[a].re < roots[b].re) return true;
    if (roots[a].re > roots[b].re) return false;
    return roots[a].im < roots[b].im;
  });
  for (size_t oi = 0; oi < order.size(); ++oi) {
    size_t i = order[oi];
    if (used[i]) continue;
    Real scale = Real(1.0, prec) + roots[i].abs();
    if (roots[i].im.abs() < tol * scale) {
      used[i] = true;
      units.push_back(Unit{1, {-roots[i].re, Real(1.0, prec)}});
      continue;
    }
    // find the conjugate partner
    size_t best = roots.size();
    for (size_t oj = oi + 1; oj < order.size(); ++oj) {
      size_t j = order[oj];
      if (used[j]) continue;
      Real d = (roots[j] - roots[i].conj()).abs();
      if (d < tol * scale) {
        best = j;
        break;
      }
    }
    if (best == roots.size()) return {};  // unmatched complex root
    used[i] = used[best] = true;
    Real re2 = roots[i].re + roots[best].re;
    Real nn = roots[i].abs() * roots[best].abs();
    units.push_back(Unit{2, {nn, -re2, Real(1.0, prec)}});
  }
  return units;
}

std::vector<Real> mul_unit(const std::vector<Real>& a, const Unit& u) {
  std::vector<Real> out(a.size() + static_cast<size_t>(u.degree), Real(a[0].precision()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < u.poly.size(); ++j) out[i + j] += a[i] * u.poly[j];
  return out;
}

// Round lc*candidate to an integer polynomial; nullopt if anything is far
// from an integer.
std::optional<PolyQ> round_candidate(const std::vector<Real>& monic, const Integer& lc,
                                     mpfr_prec_t prec) {
  Real lcr(lc, prec);
  Real quarter(0.25, prec);
  std::vector<Rational> coeffs;
  coeffs.reserve(monic.size());
  for (const auto& c : monic) {
    Real v = c * lcr;
    Integer z = v.round_to_integer();
    if ((v - Real(z, prec)).abs() > quarter) return std::nullopt;
    coeffs.emplace_back(z);
  }
  PolyQ cand(std::move(coeffs));
  if (cand.is_zero() || cand.degree() < 1) return std::nullopt;
  return cand.primitive_part().primitive;
}

struct SearchState {
  const std::vector<Unit>* units;
  const PolyQ* g;
  Integer lc;
  mpfr_prec_t prec;
  size_t budget;
  size_t used = 0;
  PolyQ found;
  std::vector<size_t> found_units;
};

bool dfs(SearchState& st, size_t start, int remaining, const std::vector<Real>& partial,
         std::vector<size_t>& chosen) {
  if (remaining == 0) {
    if (++st.used > st.budget)
      fail(ErrorCode::BudgetExhausted, "factor subset budget exhausted");
    auto cand = round_candidate(partial, st.lc, st.prec);
    if (!cand) return false;
    if (!poly_divides(*cand, *st.g)) return false;
    st.found = *cand;
    st.found_units = chosen;
    return true;
  }
  for (size_t i = start; i < st.units->size(); ++i) {
    const Unit& u = (*st.units)[i];
    if (u.degree > remaining) continue;
    chosen.push_back(i);
    if (dfs(st, i + 1, remaining - u.degree, mul_unit(partial, u), chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

// One irreducible-factor extraction pass over the current units.
bool extract_factor(SearchState& st) {
  int half = static_cast<int>(st.g->degree() / 2);
  std::vector<Real> one{Real(1.0, st.prec)};
  for (int t = 1; t <= half; ++t) {
    std::vector<size_t> chosen;
    if (dfs(st, 0, t, one, chosen)) return true;
  }
  return false;
}

// Irreducible factors of a primitive squarefree integer polynomial.
std::vector<PolyQ> cluster_factor(PolyQ g, const FactorLimits& limits) {
  std::vector<PolyQ> out;
  // x^k factor
  while (!g.is_zero() && g.coeff(0).is_zero()) {
    out.push_back(PolyQ::x());
    g = poly_divrem_exact(g, PolyQ::x()).quotient;
  }
  if (g.degree() < 1) return out;
  if (g.degree() == 1) {
    out.push_back(g.primitive_part().primitive);
    return out;
  }

  mpfr_prec_t initial = std::max<mpfr_prec_t>(
      min_working_precision(), 2 * static_cast<mpfr_prec_t>(max_coeff_bits(g)) + 64);
  int attempt = 0;
  for (mpfr_prec_t prec = initial; prec <= initial * limits.max_precision_growth;
       prec *= 2, ++attempt) {
    auto roots = find_roots(g, prec, attempt);
    if (std::getenv("EDS_FACTOR_DEBUG"))
      fprintf(stderr, "[factor] deg %ld prec %ld roots %zu\n", g.degree(), (long)prec, roots.size());
    if (roots.empty()) continue;
    auto units = make_units(std::move(roots), prec);
    if (std::getenv("EDS_FACTOR_DEBUG"))
      fprintf(stderr, "[factor] units %zu\n", units.size());
    if (units.empty()) continue;

    std::vector<PolyQ> found;
    PolyQ rem = g;
    bool ok = true;
    while (rem.degree() >= 1) {
      SearchState st{&units, &rem, rem.leading().num(), prec, limits.subset_budget, 0, {}, {}};
      if (!extract_factor(st)) {
        // exhausted: remainder is irreducible at this precision
        found.push_back(rem.primitive_part().primitive);
        break;
      }
      found.push_back(st.found);
      rem = poly_divrem_exact(rem, st.found).quotient;
      for (size_t i = st.found_units.size(); i-- > 0;)
        units.erase(units.begin() + static_cast<long>(st.found_units[i]));
      if (rem.degree() >= 1 &&
          2 * static_cast<long>(units.size()) < rem.degree()) {  // unit bookkeeping broke
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    out.insert(out.end(), found.begin(), found.end());
    return out;
  }
  fail(ErrorCode::BudgetExhausted, "factor precision ladder exhausted");
}

}  // namespace

std::vector<Rational> rational_roots(const PolyQ& f) {
  if (f.is_zero()) fail(ErrorCode::InvalidInput, "rational_roots of the zero polynomial");
  if (f.degree() == 0) return {};
  PolyQ g = f.primitive_part().primitive;

  std::vector<Rational> out;
  // strip x^k
  while (g.coeff(0).is_zero() && g.degree() >= 1) {
    out.emplace_back(0);
    g = poly_divrem_exact(g, PolyQ::x()).quotient;
  }
  if (g.degree() >= 1) {
    std::vector<Rational> candidates;
    const Integer c0 = g.coeff(0).num().abs();
    const Integer lc = g.leading().num().abs();

    auto small_divisors = [](const Integer& n, std::vector<Integer>& divs) {
      // divisor list via trial division; false when n does not factor easily
      Integer rest = n;
      std::map<Integer, int> fac;
      for (long p = 2; p < 100000; p = (p == 2 ? 3 : p + 2)) {
        Integer P(p);
        if (P * P > rest) break;
        int e = static_cast<int>(rest.remove_factor(P));
        if (e) fac[P] = e;
      }
      if (!rest.is_one()) {
        // only a prime leftover keeps the divisor list complete
        if (rest.bit_length() > 64 || !is_probable_prime(rest, 40)) return false;
        fac[rest] += 1;
      }
      divs = {Integer(1)};
      for (auto& [p, e] : fac) {
        size_t base = divs.size();
        Integer pk(1);
        for (int i = 1; i <= e; ++i) {
          pk = pk * p;
          for (size_t j = 0; j < base; ++j) {
            divs.push_back(divs[j] * pk);
            if (divs.size() > 20000) return false;
          }
        }
      }
      return true;
    };

    std::vector<Integer> dnum, dden;
    if (small_divisors(c0, dnum) && small_divisors(lc, dden) &&
        dnum.size() * dden.size() <= 40000) {
      for (const Integer& p : dnum)
        for (const Integer& q : dden) {
          candidates.emplace_back(p, q);
          candidates.emplace_back(-p, q);
        }
    } else {
      // verified numeric reconstruction: every rational root is a real root
      PolyQ sf = squarefree_part(g);
      mpfr_prec_t prec = std::max<mpfr_prec_t>(
          std::max<mpfr_prec_t>(192, min_working_precision()),
          2 * static_cast<mpfr_prec_t>(max_coeff_bits(sf)) + 64);
      bool have_roots = false;
      for (int tries = 0; tries < 5 && !have_roots; ++tries, prec *= 2) {
        auto roots = find_roots(sf, prec, tries);
        if (roots.empty()) continue;
        have_roots = true;
        Real tol(0.0, prec);
        mpfr_set_ui_2exp(tol.raw(), 1, -(prec / 3), MPFR_RNDN);
        for (const auto& z : roots) {
          if (z.im.abs() > tol * (Real(1.0, prec) + z.abs())) continue;
          candidates.push_back(nearest_rational(z.re, lc));
        }
      }
      if (!have_roots)
        fail(ErrorCode::BudgetExhausted, "rational_roots: numeric root search failed");
    }

    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const Rational& r : candidates) {
      while (g.degree() >= 1 && g.eval(r).is_zero()) {
        out.push_back(r);
        g = poly_divrem_exact(g, PolyQ::linear(Rational(1), -r)).quotient;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Factorization factor_over_Q(const PolyQ& f) { return factor_over_Q(f, FactorLimits{}); }

Factorization factor_over_Q(const PolyQ& f, const FactorLimits& limits) {
  if (f.degree() < 1) fail(ErrorCode::InvalidInput, "factor_over_Q needs degree >= 1");
  auto [content, prim] = f.primitive_part();

  PolyQ sf = squarefree_part(prim).primitive_part().primitive;
  std::vector<PolyQ> irr = cluster_factor(sf, limits);

  Factorization out;
  out.content = content;
  PolyQ rest = prim;
  for (const PolyQ& fac : irr) {
    int mult = 0;
    while (poly_divides(fac, rest)) {
      rest = poly_divrem_exact(rest, fac).quotient;
      ++mult;
    }
    if (mult == 0) fail(ErrorCode::Internal, "factor does not divide its source");
    out.factors.emplace_back(fac, mult);
  }
  if (rest.degree() != 0)
    fail(ErrorCode::Internal, "squarefree factor set does not cover the input");
  out.content = out.content * rest.coeff(0);  // leftover unit (+-1)

  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return PolyQ::compare(a.first, b.first) < 0; });
  if (!(out.product() == f)) fail(ErrorCode::Internal, "factorization round-trip failed");
  return out;
}

}  // namespace eds
