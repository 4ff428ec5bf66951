#include "eds/heights.hpp"

#include <algorithm>
#include <cmath>

#include "eds/classify.hpp"
#include "eds/divpoly.hpp"

namespace eds {

Real naive_height(const Rational& x, mpfr_prec_t prec) {
  Integer m = std::max(x.num().abs(), x.den());
  if (m.is_one()) return Real(0.0, prec);
  return Real::log_abs(m, prec);
}

namespace {

Rational phi2_eval(const WeierstrassCurve& c, const Rational& x) {
  // x^4 - b4 x^2 - 2 b6 x - b8
  return ((x * x - c.b4()) * x - Rational(2) * c.b6()) * x - c.b8();
}

// ---- archimedean local series ------------------------------------------

Real lambda_archimedean(const WeierstrassCurve& c, const Rational& x0, mpfr_prec_t prec,
                        int terms) {
  Real b2(c.b2(), prec), b4(c.b4(), prec), b6(c.b6(), prec), b8(c.b8(), prec);
  Real two(2.0, prec), four(4.0, prec), half(0.5, prec), one(1.0, prec);
  Real x(x0, prec);
  Real acc(0.0, prec);
  Real scale = one / four;  // 4^-(j+1)
  for (int j = 0; j < terms; ++j) {
    if (!mpfr_number_p(x.raw())) fail(ErrorCode::Internal, "height orbit left the finite range");
    Real F = ((four * x + b2) * x + two * b4) * x + b6;
    if (F.is_zero()) fail(ErrorCode::Internal, "height orbit hit a 2-torsion x exactly");
    acc += scale * half * F.abs().log();
    Real phi = ((x * x - b4) * x - two * b6) * x - b8;
    x = phi / F;
    scale = scale / four;
  }
  // tail: lambda(2^J Q) ~ (1/2) log max(1, |x_J|)
  Real ax = x.abs();
  if (ax > one) acc += scale * four * half * ax.log();
  return acc;
}

// ---- p-adic local series -------------------------------------------------

struct PadicRetry {};

// p^v * (u + O(p^prec)), u a unit; zero flagged separately
struct Padic {
  bool zero = true;
  long v = 0;
  Integer u = 0;
  long prec = 0;
};

class PadicCtx {
 public:
  PadicCtx(Integer p, long K) : p_(std::move(p)), K_(K), pK_(Integer::pow(p_, (unsigned long)K)) {}

  long K() const { return K_; }

  Padic from_rational(const Rational& r) const {
    if (r.is_zero()) return {};
    Integer num = r.num(), den = r.den();
    long vn = static_cast<long>(num.remove_factor(p_));
    long vd = static_cast<long>(den.remove_factor(p_));
    Integer u = Integer::mod(num * invert(den), pK_);
    return {false, vn - vd, u, K_};
  }

  Padic mul(const Padic& a, const Padic& b) const {
    if (a.zero || b.zero) return {};
    return {false, a.v + b.v, Integer::mod(a.u * b.u, pK_), std::min(a.prec, b.prec)};
  }
  Padic div(const Padic& a, const Padic& b) const {
    if (b.zero) fail(ErrorCode::Internal, "p-adic division by zero");
    if (a.zero) return {};
    return {false, a.v - b.v, Integer::mod(a.u * invert(b.u), pK_), std::min(a.prec, b.prec)};
  }
  Padic add(const Padic& a, const Padic& b) const {
    if (a.zero) return b;
    if (b.zero) return a;
    long vmin = std::min(a.v, b.v);
    long pa = a.prec + (a.v - vmin), pb = b.prec + (b.v - vmin);
    long known = std::min({pa, pb, K_});
    Integer s = Integer::mod(a.u * Integer::pow(p_, (unsigned long)(a.v - vmin)) +
                                 b.u * Integer::pow(p_, (unsigned long)(b.v - vmin)),
                             pK_);
    s = Integer::mod(s, Integer::pow(p_, (unsigned long)known));
    if (s.is_zero()) {
      // cancellation beyond the known precision: either a true zero or a
      // deeper cancellation; retry with more precision either way
      throw PadicRetry{};
    }
    long t = static_cast<long>(s.remove_factor(p_));
    if (known - t < 8) throw PadicRetry{};
    return {false, vmin + t, s, known - t};
  }

  Padic eval(const std::vector<Integer>& coeffs_low_first, const Padic& x) const {
    Padic acc;  // zero
    for (size_t i = coeffs_low_first.size(); i-- > 0;) {
      acc = mul(acc, x);
      acc = add(acc, from_integer(coeffs_low_first[i]));
    }
    return acc;
  }

  Padic from_integer(const Integer& z) const {
    if (z.is_zero()) return {};
    Integer u = z;
    long v = static_cast<long>(u.remove_factor(p_));
    return {false, v, Integer::mod(u, pK_), K_};
  }

 private:
  Integer invert(const Integer& u) const {
    Integer r;
    if (mpz_invert(r.raw(), u.raw(), pK_.raw()) == 0)
      fail(ErrorCode::Internal, "p-adic unit has no inverse");
    return r;
  }
  Integer p_;
  long K_;
  Integer pK_;
};

// Exact rational coefficient c with lambda_p = c * log p (exact when the
// orbit enters the kernel of reduction, else truncated at `terms` with error
// below 4^-terms * (ord_p(disc)+4) log p).
long rational_ord(const Rational& r, const Integer& p) {
  if (r.is_zero()) fail(ErrorCode::Internal, "ord of zero");
  Integer n = r.num(), d = r.den();
  return static_cast<long>(n.remove_factor(p)) - static_cast<long>(d.remove_factor(p));
}

Rational lambda_padic_coefficient(const WeierstrassCurve& c, const Rational& x0,
                                  const Integer& p, int terms) {
  std::vector<Integer> Fc{c.b6().num(), (Rational(2) * c.b4()).num(), c.b2().num(), Integer(4)};
  std::vector<Integer> Pc{(-c.b8()).num(), (Rational(-2) * c.b6()).num(), (-c.b4()).num(),
                          Integer(0), Integer(1)};

  // exact prefix: multiples x(2^j Q) as rationals, so exact zeros (points
  // with x-coordinate 0) never reach the approximate phase
  const int j_exact = 4;
  Rational acc(0);
  Rational scale(Integer(1), Integer(4));  // 4^-(j+1)
  Rational x = x0;
  int j = 0;
  for (; j < std::min(j_exact, terms); ++j) {
    if (!x.is_zero()) {
      long o = rational_ord(x, p);
      // kernel of reduction: lambda = (-o/2) log p, also for the half-integer
      // multiples that primes ramified in the y-field produce
      if (o < 0) return acc + scale * Rational(4) * Rational(Integer(-o), Integer(2));
    }
    Rational F = c.two_division_poly().eval(x);
    if (F.is_zero()) fail(ErrorCode::Internal, "height orbit hit 2-torsion exactly");
    acc += scale * Rational(Integer(-rational_ord(F, p)), Integer(2));
    x = phi2_eval(c, x) / F;
    scale = scale / Rational(4);
  }
  if (j >= terms) return acc;

  // approximate phase, restarted with more p-adic precision on cancellation
  auto run = [&](long K) -> Rational {
    PadicCtx ctx(p, K);
    Padic xa = ctx.from_rational(x);
    Rational acc2 = acc;
    Rational sc = scale;
    for (int i = j; i < terms; ++i) {
      if (!xa.zero && xa.v < 0)
        return acc2 + sc * Rational(4) * Rational(Integer(-xa.v), Integer(2));
      Padic F = ctx.eval(Fc, xa);
      if (F.zero) throw PadicRetry{};  // beyond-precision cancellation
      acc2 += sc * Rational(Integer(-F.v), Integer(2));
      Padic phi = ctx.eval(Pc, xa);
      xa = ctx.div(phi, F);
      sc = sc / Rational(4);
    }
    return acc2;  // truncated; orbit stayed integral with bounded correction
  };

  long ordD = static_cast<long>([&] {
    Integer d = c.discriminant().num();
    return d.remove_factor(p);
  }());
  long K = std::max<long>(64, 24 + 8 * (ordD + 4));
  for (int attempt = 0; attempt < 8; ++attempt, K *= 2) {
    try {
      return run(K);
    } catch (const PadicRetry&) {
      continue;
    }
  }
  fail(ErrorCode::BudgetExhausted, "p-adic precision ladder exhausted at p = " + p.str());
}

std::vector<Integer> height_prime_support(const WeierstrassCurve& c, const Rational& x0) {
  std::set<Integer> primes = invariants(c).bad_primes;
  for (const Integer& q : prime_divisors(x0.den())) primes.insert(q);
  return {primes.begin(), primes.end()};
}

}  // namespace

CanonicalHeight canonical_height(const WeierstrassCurve& curve, const Rational& x0,
                                 double tolerance) {
  if (tolerance <= 0) fail(ErrorCode::InvalidInput, "tolerance must be positive");
  if (!curve.is_integral())
    fail(ErrorCode::NonIntegralModel, "canonical height needs an integral model");
  if (is_torsion_x(curve, x0)) return {Real(0.0, 320), true};

  int terms = std::max(28, static_cast<int>(std::ceil(-std::log(tolerance) / std::log(4.0))) + 8);
  mpfr_prec_t prec = std::max<mpfr_prec_t>(320, min_working_precision());
  Real total = lambda_archimedean(curve, x0, prec, terms);
  for (const Integer& p : height_prime_support(curve, x0)) {
    Rational coef = lambda_padic_coefficient(curve, x0, p, terms);
    if (!coef.is_zero()) total += Real(coef, prec) * Real::log_abs(p, prec);
  }
  Real value = Real(2.0, prec) * total;  // un-halved normalization
  if (value.sign() <= 0)
    fail(ErrorCode::Internal, "canonical height of a non-torsion point must be positive");
  return {value, false};
}

std::vector<HeightReport> growth_diagnostics(const WeierstrassCurve& curve, const Rational& x0,
                                             int n_max) {
  const mpfr_prec_t prec = Real::kDefaultPrec;
  std::vector<HeightReport> out;
  for (const auto& term : eds_sequence(curve, x0, n_max)) {
    if (!term) continue;
    HeightReport r;
    r.n = term->n;
    Real logA = term->A.is_zero() ? Real(0.0, prec) : Real::log_abs(term->A, prec);
    Real logB2 = Real(2.0, prec) * (term->B.is_one() ? Real(0.0, prec) : Real::log_abs(term->B, prec));
    r.nonarchimedean_part = logB2;
    Real diff = logA - logB2;
    r.archimedean_part = (!term->A.is_zero() && diff.sign() > 0) ? diff : Real(0.0, prec);
    r.naive = r.archimedean_part + r.nonarchimedean_part;
    r.ratio = r.naive / Real(double(term->n) * double(term->n), prec);
    out.push_back(std::move(r));
  }
  // fit archimedean_part ~ C (log n)^2 and flag large residuals
  double sw = 0, saw = 0;
  for (const auto& r : out) {
    if (r.n < 2) continue;
    double w = std::pow(std::log(double(r.n)), 2.0);
    sw += w * w;
    saw += r.archimedean_part.to_double() * w;
  }
  if (sw > 0) {
    double C = saw / sw;
    double rss = 0;
    int cnt = 0;
    for (const auto& r : out) {
      if (r.n < 2) continue;
      double w = std::pow(std::log(double(r.n)), 2.0);
      double res = r.archimedean_part.to_double() - C * w;
      rss += res * res;
      ++cnt;
    }
    double sigma = cnt ? std::sqrt(rss / cnt) : 0.0;
    for (auto& r : out) {
      if (r.n < 2) continue;
      double w = std::pow(std::log(double(r.n)), 2.0);
      r.flagged = r.archimedean_part.to_double() > C * w + 3.0 * sigma + 1e-9;
    }
  }
  return out;
}

IsogenyHeightReport isogeny_height_check(const IsogenyData& sigma,
                                         const std::vector<Rational>& sample_points,
                                         double tolerance) {
  IsogenyHeightReport rep;
  rep.max_deviation = Real(0.0, 320);
  Real deg(double(sigma.degree), 320);
  for (const Rational& x : sample_points) {
    IsogenyHeightSample s;
    s.x = x;
    CanonicalHeight hR = canonical_height(sigma.source, x);
    bool image_infinite = false;
    Rational image;
    try {
      image = sigma.x_map.apply(x);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TorsionHit) throw;
      image_infinite = true;  // x is a kernel x-coordinate, so R is torsion
    }
    if (image_infinite) {
      if (!hR.torsion)
        fail(ErrorCode::PointNotOnCurve, "non-torsion sample maps to infinity");
      s.lhs = Real(0.0, 320);
      s.rhs = Real(0.0, 320);
    } else {
      s.lhs = canonical_height(sigma.target, image).value;
      s.rhs = deg * hR.value;
    }
    s.deviation = (s.lhs - s.rhs).abs();
    if (s.deviation > rep.max_deviation) rep.max_deviation = s.deviation;
    rep.samples.push_back(std::move(s));
  }
  rep.within_tolerance = rep.max_deviation.to_double() < tolerance;
  return rep;
}

}  // namespace eds
