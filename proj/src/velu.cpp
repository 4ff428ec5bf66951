#include "eds/velu.hpp"

#include <algorithm>

#include "eds/divpoly.hpp"

namespace eds {

namespace {

// Power sums p_k = sum of roots^k of a monic polynomial, via Newton's
// identities, exact over Q.
std::vector<Rational> power_sums(const PolyQ& monic, int up_to) {
  long d = monic.degree();
  // e_i with sign: monic = x^d - e1 x^(d-1) + e2 x^(d-2) - ...
  std::vector<Rational> e(static_cast<size_t>(d) + 1, Rational(0));
  e[0] = Rational(1);
  for (long i = 1; i <= d; ++i)
    e[static_cast<size_t>(i)] =
        (i % 2 == 0 ? Rational(1) : Rational(-1)) * monic.coeff(static_cast<size_t>(d - i));
  std::vector<Rational> p(static_cast<size_t>(up_to) + 1, Rational(0));
  p[0] = Rational(static_cast<long>(d));
  for (int k = 1; k <= up_to; ++k) {
    Rational acc(0);
    for (int i = 1; i < k && i <= d; ++i)
      acc += (i % 2 == 1 ? Rational(1) : Rational(-1)) * e[static_cast<size_t>(i)] *
             p[static_cast<size_t>(k - i)];
    if (k <= d)
      acc += (k % 2 == 1 ? Rational(1) : Rational(-1)) * Rational(static_cast<long>(k)) *
             e[static_cast<size_t>(k)];
    p[static_cast<size_t>(k)] = acc;
  }
  return p;
}

// sum over kernel roots r of poly_in_root(r), from precomputed power sums
Rational sum_over_roots(const PolyQ& poly_in_root, const std::vector<Rational>& p) {
  Rational acc(0);
  for (size_t j = 0; j < poly_in_root.coeffs().size(); ++j)
    acc += poly_in_root.coeff(j) * p[j];
  return acc;
}

}  // namespace

std::vector<KernelSpec> rational_kernels(const WeierstrassCurve& curve, int m) {
  if (m != 2 && m != 3 && m != 5 && m != 7)
    fail(ErrorCode::InvalidInput, "rational_kernels supports m in {2,3,5,7}");
  std::vector<KernelSpec> out;

  if (m == 2) {
    for (const Rational& x1 : rational_roots(curve.two_division_poly())) {
      KernelSpec k;
      k.m = 2;
      k.kernel_poly = PolyQ::linear(Rational(1), -x1);
      k.torsion_witness = CurvePoint(x1, -(curve.a1() * x1 + curve.a3()) / Rational(2));
      out.push_back(std::move(k));
    }
    return out;
  }

  DivisionPolynomials ctx(curve);
  Factorization fac = factor_over_Q(ctx.f(m));
  int want = (m - 1) / 2;

  // candidate kernel polynomials: products of distinct irreducible factors of
  // psi_m with total degree (m-1)/2 (the x-coordinates of one cyclic kernel
  // need not lie in a single Galois orbit)
  std::vector<PolyQ> irr;
  for (const auto& [f, mult] : fac.factors)
    for (int i = 0; i < mult; ++i) irr.push_back(f);

  std::vector<std::vector<size_t>> subsets;
  std::vector<size_t> cur;
  std::function<void(size_t, int)> rec = [&](size_t start, int remaining) {
    if (remaining == 0) {
      subsets.push_back(cur);
      return;
    }
    for (size_t i = start; i < irr.size(); ++i) {
      if (irr[i].degree() > remaining) continue;
      cur.push_back(i);
      rec(i + 1, remaining - static_cast<int>(irr[i].degree()));
      cur.pop_back();
    }
  };
  rec(0, want);

  for (const auto& subset : subsets) {
    PolyQ kp = PolyQ::constant(1);
    for (size_t i : subset) kp = kp * irr[i];
    kp = kp.monic();
    KernelSpec k;
    k.m = m;
    k.kernel_poly = kp;
    for (const Rational& r : rational_roots(kp)) {
      auto ys = curve.lift_y(r);
      if (!ys.empty()) {
        k.torsion_witness = CurvePoint(r, ys.front());
        break;
      }
    }
    if (m == 3) {
      out.push_back(std::move(k));
      continue;
    }
    // m >= 5: a subset may mix x-coordinates from different kernels; accept
    // only candidates whose isogeny passes the dual composition identity.
    try {
      IsogenyData sigma = velu_isogeny(curve, k);
      dual_x_map(sigma);
      out.push_back(std::move(k));
    } catch (const Error&) {
      // not a cyclic kernel
    }
  }
  std::sort(out.begin(), out.end(), [](const KernelSpec& a, const KernelSpec& b) {
    return PolyQ::compare(a.kernel_poly, b.kernel_poly) < 0;
  });
  return out;
}

IsogenyData velu_isogeny(const WeierstrassCurve& c, const KernelSpec& kernel) {
  const int m = kernel.m;
  IsogenyData out{c, c, m, XRationalMap(), {}, {}, {}, kernel};

  if (m == 2) {
    if (kernel.kernel_poly.degree() != 1)
      fail(ErrorCode::InvalidInput, "m=2 kernel polynomial must be linear");
    Rational x1 = -kernel.kernel_poly.coeff(0) / kernel.kernel_poly.leading();
    if (!c.two_division_poly().eval(x1).is_zero())
      fail(ErrorCode::PointNotOnCurve, "kernel x is not a 2-torsion x-coordinate");
    Rational y1 = -(c.a1() * x1 + c.a3()) / Rational(2);
    Rational t = Rational(3) * x1 * x1 + Rational(2) * c.a2() * x1 + c.a4() - c.a1() * y1;
    Rational u(0);
    Rational w = u + x1 * t;
    out.t = t;
    out.u = u;
    out.w = w;
    out.target = WeierstrassCurve(c.a1(), c.a2(), c.a3(), c.a4() - Rational(5) * t,
                                  c.a6() - c.b2() * t - Rational(7) * w);
    // x + t/(x - x1)
    PolyQ den = kernel.kernel_poly.monic();
    PolyQ num = PolyQ::x() * den + PolyQ::constant(t);
    out.x_map = XRationalMap(num, den);
  } else {
    if (kernel.kernel_poly.degree() != (m - 1) / 2)
      fail(ErrorCode::InvalidInput, "odd-m kernel polynomial has the wrong degree");
    DivisionPolynomials ctx(c);
    if (!poly_divides(kernel.kernel_poly, ctx.f(m)))
      fail(ErrorCode::PointNotOnCurve, "kernel polynomial does not divide psi_m");
    PolyQ kp = kernel.kernel_poly.monic();
    long d = kp.degree();
    auto p = power_sums(kp, static_cast<int>(2 * d + 1));

    // t_k = 6x^2 + b2 x + b4, u_k = 4x^3 + b2 x^2 + 2 b4 x + b6 at kernel x's
    PolyQ T({c.b4(), c.b2(), Rational(6)});
    PolyQ U({c.b6(), Rational(2) * c.b4(), c.b2(), Rational(4)});
    PolyQ XT = PolyQ::x() * T;
    out.t = sum_over_roots(T, p);
    out.u = sum_over_roots(U, p);
    out.w = out.u + sum_over_roots(XT, p);
    out.target = WeierstrassCurve(c.a1(), c.a2(), c.a3(), c.a4() - Rational(5) * out.t,
                                  c.a6() - c.b2() * out.t - Rational(7) * out.w);

    // x(Q) = x + sum_k [ t_k/(x-x_k) + u_k/(x-x_k)^2 ], assembled over kp^2.
    // kp(x)/(x - X) = sum_i h_i(X) x^i via synthetic division in X.
    std::vector<PolyQ> h(static_cast<size_t>(d));
    h[static_cast<size_t>(d - 1)] = PolyQ::constant(1);
    for (long i = d - 1; i >= 1; --i)
      h[static_cast<size_t>(i - 1)] =
          PolyQ::x() * h[static_cast<size_t>(i)] + PolyQ::constant(kp.coeff(static_cast<size_t>(i)));

    std::vector<Rational> nt(static_cast<size_t>(d), Rational(0));
    for (long i = 0; i < d; ++i) nt[static_cast<size_t>(i)] = sum_over_roots(T * h[static_cast<size_t>(i)], p);
    PolyQ NT(std::move(nt));

    std::vector<Rational> mu(static_cast<size_t>(2 * d - 1), Rational(0));
    for (long i = 0; i < d; ++i)
      for (long j = 0; j < d; ++j)
        mu[static_cast<size_t>(i + j)] +=
            sum_over_roots(U * h[static_cast<size_t>(i)] * h[static_cast<size_t>(j)], p);
    PolyQ MU(std::move(mu));

    PolyQ kp2 = kp * kp;
    PolyQ num = PolyQ::x() * kp2 + NT * kp + MU;
    out.x_map = XRationalMap(num, kp2);
  }

  if (out.x_map.degree() != m || out.x_map.num().degree() != m ||
      out.x_map.den().degree() != m - 1)
    fail(ErrorCode::Internal, "isogeny x-map degree bookkeeping failed");
  return out;
}

namespace {

// dense exact nullspace: returns a kernel vector of the column system, or
// empty when the nullity is not 1
std::vector<Rational> nullspace_vector(std::vector<std::vector<Rational>> cols, size_t rows) {
  size_t ncols = cols.size();
  // row-major matrix
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(ncols, Rational(0)));
  for (size_t j = 0; j < ncols; ++j)
    for (size_t i = 0; i < rows && i < cols[j].size(); ++i) a[i][j] = cols[j][i];

  std::vector<long> pivot_col_of_row;
  std::vector<bool> col_is_pivot(ncols, false);
  size_t r = 0;
  for (size_t col = 0; col < ncols && r < rows; ++col) {
    size_t sel = r;
    while (sel < rows && a[sel][col].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    Rational inv = a[r][col].inverse();
    for (size_t j = col; j < ncols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][col].is_zero()) continue;
      Rational f = a[i][col];
      for (size_t j = col; j < ncols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col_of_row.push_back(static_cast<long>(col));
    col_is_pivot[col] = true;
    ++r;
  }
  if (r + 1 != ncols) return {};  // nullity != 1
  size_t free_col = 0;
  while (free_col < ncols && col_is_pivot[free_col]) ++free_col;
  std::vector<Rational> v(ncols, Rational(0));
  v[free_col] = Rational(1);
  for (size_t i = 0; i < r; ++i)
    v[static_cast<size_t>(pivot_col_of_row[i])] = -a[i][free_col];
  return v;
}

}  // namespace

XRationalMap dual_x_map(const IsogenyData& sigma) {
  const int m = sigma.degree;
  const PolyQ& P = sigma.x_map.num();
  const PolyQ& Q = sigma.x_map.den();
  DivisionPolynomials ctx(sigma.source);
  DivisionPolyPair mul = ctx.pair(m);

  // unknowns: N = n_0..n_m, D = d_0..d_{m-1};
  // sum n_i P^i Q^(m-i) psi^2 - Q sum d_i P^i Q^(m-1-i) phi = 0
  std::vector<PolyQ> pq(static_cast<size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) pq[static_cast<size_t>(i)] = P.pow(static_cast<unsigned>(i)) *
                                                            Q.pow(static_cast<unsigned>(m - i));
  size_t rows = 0;
  std::vector<std::vector<Rational>> cols;
  auto add_col = [&](const PolyQ& poly) {
    std::vector<Rational> col(poly.coeffs());
    rows = std::max(rows, col.size());
    cols.push_back(std::move(col));
  };
  for (int i = 0; i <= m; ++i) add_col(pq[static_cast<size_t>(i)] * mul.psi_squared);
  for (int i = 0; i <= m - 1; ++i) add_col(-(pq[static_cast<size_t>(i)] * mul.phi));

  auto v = nullspace_vector(std::move(cols), rows);
  if (v.empty())
    fail(ErrorCode::Internal, "dual x-map linear system is degenerate for degree " +
                                  std::to_string(m));
  std::vector<Rational> ncoef(v.begin(), v.begin() + m + 1);
  std::vector<Rational> dcoef(v.begin() + m + 1, v.end());
  PolyQ N(std::move(ncoef)), D(std::move(dcoef));
  if (N.degree() != m || D.degree() != m - 1)
    fail(ErrorCode::Internal, "dual x-map degree bookkeeping failed");
  XRationalMap dual(N, D);

  // exact composition identity X^ o X = phi_m / psi_m^2
  XRationalMap composed = XRationalMap::compose(dual, sigma.x_map);
  XRationalMap mult(mul.phi, mul.psi_squared);
  if (!(composed == mult))
    fail(ErrorCode::Internal, "dual composition identity failed for degree " + std::to_string(m));
  return dual;
}

PreimageSplit preimages_x(const XRationalMap& map, const Rational& x_target) {
  if (map.degree() < 1) fail(ErrorCode::InvalidInput, "preimages_x needs a nonconstant map");
  PolyQ poly = map.num() - x_target * map.den();
  if (poly.is_zero())
    fail(ErrorCode::InvalidInput, "map(x) - x_target vanishes identically (pole configuration)");
  PreimageSplit out;
  if (poly.degree() == 0) return out;  // no affine preimages
  Factorization fac = factor_over_Q(poly);
  for (const auto& [f, mult] : fac.factors) {
    for (int i = 0; i < mult; ++i) {
      if (f.degree() == 1)
        out.rational_roots.push_back(-f.coeff(0) / f.coeff(1));
      else
        out.irreducible_factors.push_back(f);
    }
  }
  std::sort(out.rational_roots.begin(), out.rational_roots.end());
  return out;
}

bool square_in_quadratic_field(const Rational& a, const Rational& b, const Rational& p,
                               const Rational& q) {
  auto is_square_q = [](const Rational& r) {
    return r.sign() >= 0 && r.num().is_perfect_square() && r.den().is_perfect_square();
  };
  auto sqrt_q = [](const Rational& r) { return Rational(r.num().isqrt(), r.den().isqrt()); };

  // theta = (-p + sqrt(D))/2 with D = p^2 - 4q; a + b*theta = A + B*sqrt(D)
  Rational D = p * p - Rational(4) * q;
  Rational A = a - b * p / Rational(2);
  Rational B = b / Rational(2);
  if (B.is_zero()) {
    if (is_square_q(A)) return true;
    return !D.is_zero() && is_square_q(A / D);
  }
  // (u + v sqrt(D))^2 = u^2 + v^2 D + 2uv sqrt(D)
  Rational N = A * A - B * B * D;
  if (!is_square_q(N)) return false;
  Rational s = sqrt_q(N);
  for (const Rational& sgn : {s, -s}) {
    Rational u2 = (A + sgn) / Rational(2);
    if (!is_square_q(u2) || u2.is_zero()) continue;
    Rational u = sqrt_q(u2);
    Rational v = B / (Rational(2) * u);
    if (u * u + v * v * D == A && Rational(2) * u * v == B) return true;
  }
  return false;
}

}  // namespace eds
