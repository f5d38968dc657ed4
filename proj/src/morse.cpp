// Certified ascent on V and saddle classification.
//
// A step moves the free coordinate of a chart along a segment [S, t1] with t1 exact.
// Lifting: parametric Krawczyk over a tube T ⊇ [S, t1] gives a ball K holding, for every
// free value in T, the unique root of Q(free, ·) near the start. Ascent: with H the
// holomorphic height log-derivative in the chart, H(x(t))·Δ = t^(k−1) Δ^k G(x(t)) where
// G ∈ H^(k)(T)/(k−1)! by the integral remainder; k = 1 for regular steps and k = order
// for saddle exits. Δ^k H^(k)(T, K) inside the quarter sector makes h strictly increase.
#include "acsv/morse.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>

namespace acsv {

namespace detail {

// Polynomial evaluated over boxes by the tighter of Horner and the mean-value form.
struct MVPoly {
  CompiledPoly p, px, py;
  std::vector<std::tuple<int, int, ComplexBall>> terms;
  int deg_x = 0, deg_y = 0;
  MVPoly() = default;
  MVPoly(const SparsePoly& f, long prec)
      : p(f, prec), px(f.derivative(Var::X), prec), py(f.derivative(Var::Y), prec) {
    for (const auto& [m, c] : f.terms()) terms.emplace_back(m.first, m.second, ComplexBall::from(c, prec));
    deg_x = std::max(0, f.degree(Var::X));
    deg_y = std::max(0, f.degree(Var::Y));
  }
  ComplexBall eval(const ComplexBall& X, const ComplexBall& Y) const {
    ComplexBall naive = p.eval(X, Y);
    if (X.is_exact() && Y.is_exact()) return naive;
    const long prec = p.prec();
    ComplexBall mv = p.eval(X.center_ball(), Y.center_ball()) + px.eval(X, Y) * ComplexBall(prec).with_radius(X.rad()) +
                     py.eval(X, Y) * ComplexBall(prec).with_radius(Y.rad());
    return mv.rad() < naive.rad() ? mv : naive;
  }
};

DyadicFloat up_add(const DyadicFloat& a, const DyadicFloat& b) {
  DyadicFloat r(kRadPrec);
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
  return r;
}

DyadicFloat up_mul(const DyadicFloat& a, const DyadicFloat& b) {
  DyadicFloat r(kRadPrec);
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
  return r;
}

DyadicFloat pow2_up(long e) {
  DyadicFloat r(kRadPrec);
  mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
  return r;
}

// Taylor model in one complex parameter u with |u| ≤ r: the set
// {Σ_j c_j u^j + w : c_j ∈ coefficient balls, |w| ≤ e}, truncated at degree d.
// Products keep the low-order parts exact, so cancellation between the terms of a
// polynomial only costs width of order r^(d+1).
struct TM {
  std::vector<ComplexBall> c;
  DyadicFloat e{kRadPrec};
};

struct TMCtx {
  DyadicFloat r;
  long prec;
  int d;

  TM constant(const ComplexBall& v) const {
    TM t{std::vector<ComplexBall>(static_cast<size_t>(d) + 1, ComplexBall(prec)), DyadicFloat(kRadPrec)};
    t.c[0] = v;
    return t;
  }
  TM linear(const ComplexBall& v) const {
    TM t = constant(v);
    if (d >= 1) t.c[1] = ComplexBall::from(Rational(1), prec);
    return t;
  }
  // Upper bound of |Σ_{j≥from} c_j u^j| + e.
  DyadicFloat tail(const TM& f, int from) const {
    DyadicFloat acc = f.e, rp = DyadicFloat(1.0, kRadPrec);
    for (int j = 0; j <= d; ++j) {
      if (j >= from) acc = up_add(acc, up_mul(f.c[static_cast<size_t>(j)].abs_upper(), rp));
      rp = up_mul(rp, r);
    }
    return acc;
  }
  TM add(const TM& f, const TM& g) const {
    TM t = f;
    for (int j = 0; j <= d; ++j) t.c[static_cast<size_t>(j)] = f.c[static_cast<size_t>(j)] + g.c[static_cast<size_t>(j)];
    t.e = up_add(f.e, g.e);
    return t;
  }
  TM scale(const ComplexBall& v, const TM& f) const {
    TM t = f;
    for (auto& x : t.c) x = v * x;
    t.e = up_mul(v.abs_upper(), f.e);
    return t;
  }
  TM mul(const TM& f, const TM& g) const {
    TM t = constant(ComplexBall(prec));
    std::vector<DyadicFloat> rp{DyadicFloat(1.0, kRadPrec)};
    for (int j = 1; j <= 2 * d; ++j) rp.push_back(up_mul(rp.back(), r));
    for (int i = 0; i <= d; ++i) {
      if (f.c[static_cast<size_t>(i)].is_exact() && f.c[static_cast<size_t>(i)].re().is_zero() &&
          f.c[static_cast<size_t>(i)].im().is_zero())
        continue;
      for (int j = 0; j <= d; ++j) {
        if (i + j <= d) {
          t.c[static_cast<size_t>(i + j)] = t.c[static_cast<size_t>(i + j)] + f.c[static_cast<size_t>(i)] * g.c[static_cast<size_t>(j)];
        } else {
          DyadicFloat m = up_mul(f.c[static_cast<size_t>(i)].abs_upper(), g.c[static_cast<size_t>(j)].abs_upper());
          t.e = up_add(t.e, up_mul(m, rp[static_cast<size_t>(i + j)]));
        }
      }
    }
    DyadicFloat bf = tail(f, 0), bg = tail(g, 0);
    t.e = up_add(t.e, up_add(up_mul(up_add(bf, DyadicFloat(kRadPrec)), g.e), up_mul(bg, f.e)));
    return t;
  }
  TM pow(const TM& f, long k) const {
    TM out = constant(ComplexBall::from(Rational(1), prec));
    for (long i = 0; i < k; ++i) out = mul(out, f);
    return out;
  }
  // Series of 1/f to degree d; the error (1 − f·S)/f is bounded through |f| ≥ |c0| − tail.
  TM inv(const TM& f) const {
    DyadicFloat lo = f.c[0].abs_lower(), t1 = tail(f, 1);
    DyadicFloat gap(kRadPrec);
    mpfr_sub(gap.raw(), lo.raw(), t1.raw(), MPFR_RNDD);
    if (gap.sign() <= 0) throw Error(ErrorKind::DivisionByZero, "Taylor model divisor may vanish");
    TM S = constant(acsv::inv(f.c[0]));
    for (int j = 1; j <= d; ++j) {
      ComplexBall acc(prec);
      for (int i = 1; i <= j; ++i) acc = acc + f.c[static_cast<size_t>(i)] * S.c[static_cast<size_t>(j - i)];
      S.c[static_cast<size_t>(j)] = -(acc * S.c[0]);
    }
    TM h = add(constant(ComplexBall::from(Rational(1), prec)), scale(ComplexBall::from(Rational(-1), prec), mul(f, S)));
    DyadicFloat err(kRadPrec);
    mpfr_div(err.raw(), tail(h, 0).raw(), gap.raw(), MPFR_RNDU);
    S.e = up_add(S.e, err);
    return S;
  }
  ComplexBall to_ball(const TM& f) const { return f.c[0].inflate(tail(f, 1)); }
  // Value set at the parameter ball u.
  ComplexBall at(const TM& f, const ComplexBall& u) const {
    ComplexBall acc(prec);
    for (int j = d; j >= 0; --j) acc = acc * u + f.c[static_cast<size_t>(j)];
    return acc.inflate(f.e);
  }
  std::vector<TM> powers(const TM& f, int n) const {
    std::vector<TM> out{constant(ComplexBall::from(Rational(1), prec))};
    for (int j = 1; j <= n; ++j) out.push_back(mul(out.back(), f));
    return out;
  }
  TM eval(const MVPoly& P, const std::vector<TM>& xs, const std::vector<TM>& ys) const {
    TM acc = constant(ComplexBall(prec));
    for (const auto& [i, j, c] : P.terms)
      acc = add(acc, scale(c, mul(xs[static_cast<size_t>(i)], ys[static_cast<size_t>(j)])));
    return acc;
  }
};

// One chart: Q with the free coordinate in the X slot, and the direction with r on the
// free coordinate.
struct ChartData {
  SparsePoly Q, Qx, Qy, B, LB, LQy;
  long r, s, prec;
  MVPoly q, qx, qy, b, qxx, qxy, qyy;
  std::vector<QPoly> dep_coeffs;
  // H^(m) = N[m] / (B^m Qy^(2(m−1))), B = (r+s)·x·y·Qy
  mutable std::vector<SparsePoly> N;
  mutable std::vector<MVPoly> n;

  ChartData(const SparsePoly& Q_, long r_, long s_, long prec_) : Q(Q_), r(r_), s(s_), prec(prec_) {
    Qx = Q.derivative(Var::X);
    Qy = Q.derivative(Var::Y);
    SparsePoly x = SparsePoly::x(), y = SparsePoly::y();
    B = Rational(r + s) * (x * y * Qy);
    LB = along(B);
    LQy = along(Qy);
    q = MVPoly(Q, prec);
    qx = MVPoly(Qx, prec);
    qy = MVPoly(Qy, prec);
    b = MVPoly(B, prec);
    qxx = MVPoly(Qx.derivative(Var::X), prec);
    qxy = MVPoly(Qx.derivative(Var::Y), prec);
    qyy = MVPoly(Qy.derivative(Var::Y), prec);
    dep_coeffs = Q.coeffs_in(Var::Y);
    N.push_back(SparsePoly());  // unused slot 0
    N.push_back(Rational(s) * (x * Qx) - Rational(r) * (y * Qy));
    n.emplace_back();
    n.emplace_back(N[1], prec);
  }

  SparsePoly along(const SparsePoly& F) const { return F.derivative(Var::X) * Qy - F.derivative(Var::Y) * Qx; }

  void ensure(int k) const {
    while (static_cast<int>(N.size()) <= k) {
      const int m = static_cast<int>(N.size()) - 1;
      const SparsePoly& Nm = N.back();
      SparsePoly next = along(Nm) * B * Qy - Rational(m) * (Nm * LB * Qy) - Rational(2 * (m - 1)) * (Nm * B * LQy);
      N.push_back(next);
      n.emplace_back(next, prec);
    }
  }

  // Enclosure of H^(k) over the box; throws DivisionByZero if a denominator may vanish.
  ComplexBall hderiv(int k, const ComplexBall& X, const ComplexBall& Y) const {
    ensure(k);
    ComplexBall den = pow(b.eval(X, Y), k);
    if (k > 1) den = den * pow(qy.eval(X, Y), 2L * (k - 1));
    return n[static_cast<size_t>(k)].eval(X, Y) / den;
  }

  // P over the box T × Y, also as a Taylor model in the free coordinate; keeps the tighter.
  ComplexBall eval_tube(const MVPoly& P, const ComplexBall& T, const ComplexBall& Y) const {
    ComplexBall naive = P.eval(T, Y);
    if (T.is_exact()) return naive;
    try {
      TMCtx A{T.rad(), prec, 1};
      TM Yc = A.constant(Y.center_ball());
      Yc.e = Y.rad();
      ComplexBall af = A.to_ball(A.eval(P, A.powers(A.linear(T.center_ball()), P.deg_x), A.powers(Yc, P.deg_y)));
      return af.rad() < naive.rad() ? af : naive;
    } catch (const Error&) {
      return naive;
    }
  }

  // Validated Taylor model of the dependent root over the tube T = B(tc, r): Newton on
  // truncated series from yc, then a parametric Krawczyk test on B(P(u), ρ). The root
  // found agrees with the branch through yc at u = 0, hence on the whole disc.
  std::optional<TM> dep_model(const TMCtx& A, const ComplexBall& tc, const ComplexBall& yc) const {
    std::vector<TM> xs = A.powers(A.linear(tc), std::max(q.deg_x, 1));
    TM P = A.constant(yc.center_ball());
    for (int it = 0; it < 4; ++it) {
      std::vector<TM> ys = A.powers(P, q.deg_y);
      TM F = A.eval(q, xs, ys), G = A.eval(qy, xs, ys);
      F.e = G.e = DyadicFloat(kRadPrec);
      TM step = A.mul(F, A.inv(G));
      for (int j = 0; j <= A.d; ++j) P.c[static_cast<size_t>(j)] = (P.c[static_cast<size_t>(j)] - step.c[static_cast<size_t>(j)]).center_ball();
    }
    ComplexBall R = A.to_ball(A.eval(q, xs, A.powers(P, q.deg_y)));
    ComplexBall m = acsv::inv(qy.eval(tc, P.c[0]).center_ball()).center_ball();
    DyadicFloat rho = up_add(up_mul(m.abs_upper(), R.abs_upper()), DyadicFloat(0.0, kRadPrec));
    rho = up_add(up_mul(rho, DyadicFloat(2.0, kRadPrec)), up_add((yc - P.c[0]).abs_upper(), pow2_up(-prec)));
    ComplexBall one = ComplexBall::from(Rational(1), prec);
    for (int attempt = 0; attempt < 8; ++attempt, rho = up_mul(rho, DyadicFloat(4.0, kRadPrec))) {
      if (!((yc - P.c[0]).abs_upper() < rho)) continue;
      TM W = P;
      W.e = rho;
      ComplexBall J = A.to_ball(A.eval(qy, xs, A.powers(W, qy.deg_y)));
      DyadicFloat dev = up_add(up_mul(m.abs_upper(), R.abs_upper()), up_mul((one - m * J).abs_upper(), rho));
      if (dev < rho) return W;
    }
    return std::nullopt;
  }

  // H^(k) over the tube T = B(tc, r) from the Taylor model of the dependent root.
  ComplexBall hderiv_tm(int k, const ComplexBall& tc, const ComplexBall& yc, const ComplexBall& T) const {
    TMCtx A{T.rad(), prec, 3};
    std::optional<TM> Y = dep_model(A, tc, yc);
    if (!Y) throw Error(ErrorKind::Inconclusive, "dependent Taylor model not validated");
    return hderiv_tm(k, A, tc, *Y);
  }
  ComplexBall hderiv_tm(int k, const TMCtx& A, const ComplexBall& tc, const TM& Y) const {
    ensure(k);
    const MVPoly& nk = n[static_cast<size_t>(k)];
    std::vector<TM> xs = A.powers(A.linear(tc), std::max({nk.deg_x, b.deg_x, qy.deg_x}));
    std::vector<TM> ys = A.powers(Y, std::max({nk.deg_y, b.deg_y, qy.deg_y}));
    TM den = A.pow(A.eval(b, xs, ys), k);
    if (k > 1) den = A.mul(den, A.pow(A.eval(qy, xs, ys), 2L * (k - 1)));
    return A.to_ball(A.mul(A.eval(nk, xs, ys), A.inv(den)));
  }

  RealBall height(const ComplexBall& X, const ComplexBall& Y) const {
    RealBall rh = RealBall::from(Rational(r) / Rational(r + s), prec), sh = RealBall::from(Rational(s) / Rational(r + s), prec);
    return -(rh * ball_log_abs(X)) - sh * ball_log_abs(Y);
  }

  GPoly dep_poly(const GaussianRational& t) const {
    std::vector<GaussianRational> c;
    for (const auto& qc : dep_coeffs) {
      GaussianRational acc;
      for (int i = qc.degree(); i >= 0; --i) acc = acc * t + GaussianRational(qc.coeff(i));
      c.push_back(acc);
    }
    return GPoly(c);
  }
};

}  // namespace detail

namespace {

using detail::ChartData;
using detail::TM;
using detail::TMCtx;

DyadicFloat half_up(const DyadicFloat& a) {
  DyadicFloat r(kRadPrec);
  mpfr_div_2ui(r.raw(), a.raw(), 1, MPFR_RNDU);
  return r;
}

DyadicFloat add_up(const DyadicFloat& a, const DyadicFloat& b) {
  DyadicFloat r(kRadPrec);
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
  return r;
}

DyadicFloat mul_up(const DyadicFloat& a, double f) {
  DyadicFloat r(kRadPrec);
  mpfr_mul_d(r.raw(), a.raw(), f, MPFR_RNDU);
  return r;
}

DyadicFloat pow2(long e) {
  DyadicFloat r(kRadPrec);
  mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
  return r;
}

// Non-dyadic endpoints get a rounding ball; the tube absorbs it.
ComplexBall exact(const GaussianRational& z, long prec) { return ComplexBall::from(z, prec); }

// Dyadic Gaussian rational near base + delta, rounded on a grid 2^-g with 2^-g ≤ |delta|/512.
GaussianRational snap(const ComplexBall& base, std::complex<double> delta) {
  double m = std::abs(delta);
  if (!(m > 0) || !std::isfinite(m)) throw Error(ErrorKind::Inconclusive, "degenerate step direction");
  long g = std::max(0L, 10L - static_cast<long>(std::floor(std::log2(m))));
  GaussianRational c = base.center();
  auto round_grid = [g](const Rational& v) {
    Rational w = v;
    mpq_mul_2exp(w.get_mpq_t(), w.get_mpq_t(), static_cast<mp_bitcnt_t>(g));
    Integer num = w.get_num(), den = w.get_den();
    Integer k;
    mpz_fdiv_q(k.get_mpz_t(), Integer(2 * num + den).get_mpz_t(), Integer(2 * den).get_mpz_t());
    Rational out(k);
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(g));
    return out;
  };
  return {round_grid(Rational(c.re + Rational(delta.real()))), round_grid(Rational(c.im + Rational(delta.imag())))};
}

// Ball holding the segment from every point of S to t1.
ComplexBall tube(const ComplexBall& S, const GaussianRational& t1, long prec) {
  ComplexBall a = S.center_ball(), b = exact(t1, prec);
  ComplexBall mid = (a + b) * ComplexBall::from(Rational(1, 2), prec);
  ComplexBall c = mid.center_ball();
  DyadicFloat r = add_up((b - c).abs_upper(), (a - c).abs_upper());
  r = add_up(half_up(add_up(r, r)), S.rad());
  return c.with_radius(r);
}

// Parametric Krawczyk: on success K holds, for every free value in T, the unique root of
// Q(free, ·) in a ball that also contains D0.
bool lift_tube(const ChartData& ch, const ComplexBall& S, const ComplexBall& D0, const ComplexBall& T, ComplexBall* K) {
  const long p = ch.prec;
  try {
    ComplexBall s0 = S.center_ball(), d0 = D0.center_ball();
    ComplexBall dy = (-(ch.qx.eval(s0, d0)) / ch.qy.eval(s0, d0)).center_ball();
    ComplexBall c = (d0 + dy * (T.center_ball() - s0)).center_ball();
    ComplexBall m = inv(ch.qy.eval(T.center_ball(), c).center_ball()).center_ball();
    DyadicFloat rho = add_up((c - d0).abs_upper(), D0.rad());
    DyadicFloat slope(kRadPrec);
    mpfr_mul(slope.raw(), dy.abs_upper().raw(), T.rad().raw(), MPFR_RNDU);
    rho = mul_up(add_up(rho, slope), 2.0);
    DyadicFloat floor_rad = mul_up(c.abs_upper(), std::ldexp(1.0, -static_cast<int>(p) + 12));
    rho = add_up(rho, add_up(floor_rad, pow2(-p)));
    ComplexBall one = ComplexBall::from(Rational(1), p);
    ComplexBall q0 = ch.eval_tube(ch.q, T, c);
    for (int attempt = 0; attempt < 4; ++attempt) {
      ComplexBall D = c.with_radius(rho);
      if (D.contains(D0)) {
        ComplexBall unit = ComplexBall(p).with_radius(rho);
        ComplexBall k = c - m * q0 + (one - m * ch.eval_tube(ch.qy, T, D)) * unit;
        if (D.interior_contains(k)) {
          // D holds exactly one root for each free value; Krawczyk images of any ball
          // holding it still hold it, so a few more iterations only tighten
          for (int it = 0; it < 3; ++it) {
            ComplexBall next = c - m * q0 + (one - m * ch.eval_tube(ch.qy, T, k)) * (k - c);
            if (!(next.rad() < k.rad())) break;
            k = next;
          }
          *K = k;
          return true;
        }
      }
      rho = mul_up(rho, 2.0);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DivisionByZero && e.kind() != ErrorKind::Inconclusive) throw;
  }
  return false;
}

// Lift through a validated Taylor model around the tube center. The model's root at
// each free value is unique in B(P(u), ρ); it is the continued branch once D0 sits in
// that ball for every start value.
bool lift_model(const ChartData& ch, const ComplexBall& S, const ComplexBall& D0, const TMCtx& A, const ComplexBall& tc,
                TM* W) {
  try {
    ComplexBall s0 = S.center_ball(), d0 = D0.center_ball();
    ComplexBall dy = (-(ch.qx.eval(s0, d0)) / ch.qy.eval(s0, d0)).center_ball();
    ComplexBall c = (d0 + dy * (tc - s0)).center_ball();
    for (int it = 0; it < 6; ++it) c = (c - ch.q.eval(tc, c) / ch.qy.eval(tc, c)).center_ball();
    std::optional<TM> M = ch.dep_model(A, tc, c);
    if (!M) return false;
    TM P = *M;
    P.e = DyadicFloat(kRadPrec);
    ComplexBall at_start = A.at(P, S - tc);
    if (!((D0 - at_start).abs_upper() < M->e)) return false;
    *W = *M;
    return true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DivisionByZero && e.kind() != ErrorKind::Inconclusive) throw;
  }
  return false;
}

// Tight certified enclosure of the unique root of Q(t1, ·) inside K: Newton on the
// center, then a Krawczyk test on a small ball. Falls back to K.
ComplexBall tighten(const ChartData& ch, const GaussianRational& t1, const ComplexBall& K) {
  const long p = ch.prec;
  ComplexBall t = ComplexBall::from(t1, p), c = K.center_ball();
  DyadicFloat step(kRadPrec);
  try {
    for (int it = 0; it < 40; ++it) {
      ComplexBall d = (ch.q.eval(t, c) / ch.qy.eval(t, c)).center_ball();
      c = (c - d).center_ball();
      step = d.abs_upper();
      if (mul_up(step, std::ldexp(1.0, static_cast<int>(p) - 8)) < c.abs_upper()) break;
    }
    DyadicFloat rho = add_up(mul_up(step, 4.0), add_up(mul_up(c.abs_upper(), std::ldexp(1.0, -static_cast<int>(p) + 6)), pow2(-p)));
    ComplexBall m = inv(ch.qy.eval(t, c).center_ball()).center_ball();
    ComplexBall one = ComplexBall::from(Rational(1), p), qc = ch.q.eval(t, c);
    for (int attempt = 0; attempt < 6; ++attempt) {
      ComplexBall D = c.with_radius(rho);
      ComplexBall k = c - m * qc + (one - m * ch.qy.eval(t, D)) * ComplexBall(p).with_radius(rho);
      // the root in K is the unique root in D when K ⊆ D or k ⊆ K
      if (D.interior_contains(k) && (K.contains(k) || D.contains(K))) return k;
      rho = mul_up(rho, 4.0);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DivisionByZero && e.kind() != ErrorKind::Inconclusive) throw;
  }
  return K;
}

int factorial(int k) {
  int f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Certified step of order k from S (with dependent ball D0) to t1.
bool certify_step(const ChartData& ch, const ComplexBall& S, const ComplexBall& D0, int k, const GaussianRational& t1,
                  ComplexBall* y1, DyadicFloat* gain) {
  const long p = ch.prec;
  ComplexBall T = tube(S, t1, p), K, tc = T.center_ball(), yc;
  TMCtx A{T.rad(), p, 3};
  TM W;
  const bool modelled = lift_model(ch, S, D0, A, tc, &W);
  if (modelled) {
    K = A.to_ball(W);
    yc = tighten(ch, T.center(), A.at(W, ComplexBall(p)));
  } else {
    if (!lift_tube(ch, S, D0, T, &K)) return false;
    yc = tighten(ch, T.center(), K);
  }
  // Enclosures of H^(k) over the tube, cheapest first. Near a saddle, or where the
  // dependent ball is wide, the naive one cancels badly; Taylor forms around the tube
  // center keep the correlation between the coordinates.
  ComplexBall delta = exact(t1, p) - S, dk = pow(delta, k);
  std::optional<ComplexBall> z;
  auto consider = [&](auto&& enclosure) {
    try {
      ComplexBall c = dk * enclosure();
      if (!z || c.rad() < z->rad()) z = c;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DivisionByZero && e.kind() != ErrorKind::Inconclusive) throw;
    }
    return z && ball_in_quarter_sector(*z);
  };
  bool ok = consider([&] { return modelled ? ch.hderiv_tm(k, A, tc, W) : ch.hderiv_tm(k, tc, yc, T); });
  if (!ok) ok = consider([&] { return ch.hderiv(k, T, K); });
  if (!ok) {
    ComplexBall disc = ComplexBall(p).with_radius(T.rad());
    std::optional<ComplexBall> hc, h1;
    try {
      hc = ch.hderiv(k, tc, yc);
      h1 = ch.hderiv(k + 1, tc, yc);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DivisionByZero && e.kind() != ErrorKind::Inconclusive) throw;
    }
    if (hc) {
      ok = consider([&] { return *hc + ch.hderiv(k + 1, T, K) * disc; });
      if (!ok && h1)
        ok = consider([&] {
          return *hc + *h1 * disc + ch.hderiv(k + 2, T, K) * sqr(disc) * ComplexBall::from(Rational(1, 2), p);
        });
    }
  }
  if (!ok) return false;
  DyadicFloat lo = z->real().lower();
  if (lo.sign() <= 0) return false;
  if (gain) {
    *gain = DyadicFloat(kRadPrec);
    mpfr_div_ui(gain->raw(), lo.raw(), static_cast<unsigned long>(factorial(k)), MPFR_RNDD);
  }
  *y1 = tighten(ch, t1, modelled ? A.at(W, exact(t1, p) - tc) : K);
  return true;
}

Var other(Var v) { return v == Var::X ? Var::Y : Var::X; }

}  // namespace

ComplexBall CurvePoint::x(long prec) const { return chart == Var::X ? ComplexBall::from(free, prec) : dep; }
ComplexBall CurvePoint::y(long prec) const { return chart == Var::Y ? ComplexBall::from(free, prec) : dep; }

const char* to_string(Region r) {
  switch (r) {
    case Region::X: return "x";
    case Region::Y: return "y";
    default: return "unclassified";
  }
}

const char* to_string(SaddleClass c) {
  switch (c) {
    case SaddleClass::X: return "x";
    case SaddleClass::Y: return "y";
    case SaddleClass::Mixed: return "mixed";
    default: return "unclassified";
  }
}

MorseEngine::MorseEngine(const SparsePoly& Q, long r, long s, long prec)
    : Q_(Q),
      r_(r),
      s_(s),
      prec_(prec),
      cx_(std::make_shared<detail::ChartData>(Q, r, s, prec)),
      cy_(std::make_shared<detail::ChartData>(Q.swap_vars(), s, r, prec)) {}

RealBall MorseEngine::height(const CurvePoint& z) const { return chart(z.chart).height(ComplexBall::from(z.free, prec_), z.dep); }

CurvePoint MorseEngine::lift_segment(const CurvePoint& from, const GaussianRational& to) const {
  const ChartData& ch = chart(from.chart);
  CurvePoint cur = from;
  std::vector<GaussianRational> todo{to};
  int depth = 0;
  while (!todo.empty()) {
    GaussianRational t1 = todo.back();
    ComplexBall S = exact(cur.free, prec_), T = tube(S, t1, prec_), K;
    if (lift_tube(ch, S, cur.dep, T, &K)) {
      cur = {cur.chart, t1, tighten(ch, t1, K)};
      todo.pop_back();
      continue;
    }
    if (++depth > 2000 || todo.size() > 60) throw Error(ErrorKind::Inconclusive, "continuation failure: step size underflow");
    GaussianRational mid{Rational((cur.free.re + t1.re) / 2), Rational((cur.free.im + t1.im) / 2)};
    todo.push_back(mid);
  }
  return cur;
}

CurvePoint MorseEngine::search(Var c, const ComplexBall& start, const ComplexBall& dep, int k, std::complex<double> v,
                               DyadicFloat* gain) const {
  const ChartData& ch = chart(c);
  auto attempt = [&](double eps, CurvePoint* out, DyadicFloat* g) {
    GaussianRational t1 = snap(start, eps * v);
    ComplexBall y1;
    if (!certify_step(ch, start, dep, k, t1, &y1, g)) return false;
    *out = {c, t1, y1};
    return true;
  };
  double eps = std::ldexp(1.0, -8);
  CurvePoint best;
  DyadicFloat best_gain(kRadPrec);
  if (attempt(eps, &best, &best_gain)) {
    CurvePoint trial;
    DyadicFloat g(kRadPrec);
    while (eps < 64 && attempt(2 * eps, &trial, &g)) {
      eps *= 2;
      best = trial;
      best_gain = g;
    }
  } else {
    do {
      eps /= 2;
      if (eps < std::ldexp(1.0, -60)) throw Error(ErrorKind::Inconclusive, "ascent step size underflow");
    } while (!attempt(eps, &best, &best_gain));
  }
  if (gain) *gain = best_gain;
  return best;
}

CurvePoint MorseEngine::ascend_step(const CurvePoint& z, DyadicFloat* gain) const {
  const ChartData& ch = chart(z.chart);
  ComplexBall S = exact(z.free, prec_);
  ComplexBall h1;
  try {
    h1 = ch.hderiv(1, S, z.dep);
  } catch (const Error&) {
    throw Error(ErrorKind::Inconclusive, "ascent step: height derivative not separated from a pole");
  }
  if (h1.contains_zero()) throw Error(ErrorKind::Inconclusive, "ascent step requested at (or too near) a saddle");
  std::complex<double> v = 1.0 / h1.mid_d();
  return search(z.chart, S, z.dep, 1, v, gain);
}

CurvePoint MorseEngine::maybe_swap(const CurvePoint& z, DyadicFloat* gain, bool force) const {
  const ChartData& ch = chart(z.chart);
  ComplexBall S = exact(z.free, prec_);
  if (!force) {
    DyadicFloat a = ch.qy.eval(S, z.dep).abs_upper(), b = ch.qx.eval(S, z.dep).abs_lower();
    mpfr_div_2ui(b.raw(), b.raw(), 2, MPFR_RNDD);
    if (!(a < b)) return z;
  }
  // ball start in the other chart: the old dependent ball becomes the free coordinate
  Var c = other(z.chart);
  const ChartData& nh = chart(c);
  ComplexBall h1 = nh.hderiv(1, z.dep, S);
  if (h1.contains_zero()) throw Error(ErrorKind::Inconclusive, "chart swap next to a saddle");
  return search(c, z.dep, S, 1, 1.0 / h1.mid_d(), gain);
}

std::vector<CurvePoint> MorseEngine::saddle_exits(const CriticalPoint& sigma, std::vector<DyadicFloat>* gains) const {
  AlgebraicPoint p = refine_to_prec(sigma.point, prec_);
  const ComplexBall &X = p.x.enclosure, &Y = p.y.enclosure;
  const ChartData& chx = chart(Var::X);
  bool use_x = chx.qx.eval(X, Y).abs_lower() <= chx.qy.eval(X, Y).abs_lower();
  Var c = use_x ? Var::X : Var::Y;
  const ComplexBall& S = use_x ? X : Y;
  const ComplexBall& D = use_x ? Y : X;
  const int k = sigma.order_k;
  ComplexBall hk = chart(c).hderiv(k, S, D);
  if (hk.contains_zero()) throw Error(ErrorKind::Inconclusive, "saddle exits: leading derivative not separated from 0");
  std::complex<double> v0 = std::pow(static_cast<double>(factorial(k)) / hk.mid_d(), 1.0 / k);
  std::vector<CurvePoint> out;
  if (gains) gains->clear();
  for (int j = 0; j < k; ++j) {
    std::complex<double> v = v0 * std::polar(1.0, 2 * M_PI * j / k);
    DyadicFloat g(kRadPrec);
    out.push_back(search(c, S, D, k, v, &g));
    if (gains) gains->push_back(g);
  }
  return out;
}

std::pair<DyadicFloat, DyadicFloat> pole_radii(const SparsePoly& Q, const std::vector<CriticalPoint>& cps, long prec) {
  auto radius = [&](const SparsePoly& q, bool use_x) {
    DyadicFloat e(1.0, kRadPrec);
    auto lower = [&](const DyadicFloat& m) {
      DyadicFloat h(kRadPrec);
      mpfr_div_2ui(h.raw(), m.raw(), 1, MPFR_RNDD);
      if (h < e) e = h;
    };
    for (const auto& c : cps) {
      AlgebraicPoint p = refine_to_prec(c.point, prec);
      lower((use_x ? p.x : p.y).enclosure.abs_lower());
    }
    // x-projections of branch points and of points where a branch escapes to infinity
    QPoly disc = resultant_uni(q, q.derivative(Var::Y), Var::Y) * q.coeffs_in(Var::Y).back();
    disc = disc.strip_zero_roots();
    if (disc.degree() > 0)
      for (const auto& a : isolate_roots(squarefree(disc), prec)) lower(a.enclosure.abs_lower());
    if (!(e.sign() > 0)) throw Error(ErrorKind::Inconclusive, "pole neighbourhood radius is not positive");
    return e;
  };
  return {radius(Q, true), radius(Q.swap_vars(), false)};
}

DyadicFloat bypass_radius(const SparsePoly& Q, const std::vector<CriticalPoint>& cps, size_t index, long r, long s,
                          const DyadicFloat& floor, long prec) {
  AlgebraicPoint p = refine_to_prec(cps[index].point, prec);
  ComplexBall x0 = p.x.enclosure.center_ball(), y0 = p.y.enclosure.center_ball();
  ChartData cx(Q, r, s, prec), cy(Q.swap_vars(), s, r, prec);
  DyadicFloat lim = std::min(x0.abs_lower(), y0.abs_lower());
  mpfr_div_2ui(lim.raw(), lim.raw(), 1, MPFR_RNDD);
  auto graph = [&](const ChartData& ch, const ComplexBall& X, const ComplexBall& Y, const DyadicFloat& e) {
    try {
      ComplexBall m = inv(ch.qy.eval(X.center_ball(), Y.center_ball()).center_ball()).center_ball();
      ComplexBall one = ComplexBall::from(Rational(1), prec);
      ComplexBall k = Y.center_ball() - m * ch.q.eval(X, Y.center_ball()) +
                      (one - m * ch.qy.eval(X, Y)) * ComplexBall(prec).with_radius(e);
      return Y.interior_contains(k);
    } catch (const Error&) {
      return false;
    }
  };
  auto ok = [&](const DyadicFloat& e) {
    ComplexBall X = x0.with_radius(e), Y = y0.with_radius(e);
    if (!X.interior_contains(p.x.enclosure) || !Y.interior_contains(p.y.enclosure)) return false;
    if (!graph(cx, X, Y, e) && !graph(cy, Y, X, e)) return false;
    for (size_t j = 0; j < cps.size(); ++j) {
      if (j == index) continue;
      AlgebraicPoint o = refine_to_prec(cps[j].point, prec);
      if (o.x.enclosure.overlaps(X) && o.y.enclosure.overlaps(Y)) return false;
    }
    try {
      return floor < cx.height(X, Y).lower();
    } catch (const Error&) {
      return false;
    }
  };
  DyadicFloat e = add_up(mul_up(std::max(p.x.enclosure.rad(), p.y.enclosure.rad()), 4.0),
                         mul_up(std::max(x0.abs_upper(), y0.abs_upper()), std::ldexp(1.0, -40)));
  DyadicFloat best(kRadPrec);
  int misses = 0;
  for (int it = 0; it < 80 && e < lim; ++it) {
    if (ok(e)) {
      best = e;
      misses = 0;
    } else if (!best.is_zero() || ++misses > 12) {
      break;
    }
    e = mul_up(e, 2.0);
  }
  return best;
}

TerminalResult terminal_check(const CurvePoint& z, const DyadicFloat& eps_x, const DyadicFloat& eps_y,
                              const std::vector<BypassBox>& boxes, long prec) {
  ComplexBall X = z.x(prec), Y = z.y(prec);
  if (X.abs_upper() < eps_x) return {Terminal::X, -1};
  if (Y.abs_upper() < eps_y) return {Terminal::Y, -1};
  for (const auto& b : boxes)
    if (b.x.interior_contains(X) && b.y.interior_contains(Y)) return {Terminal::Inherit, b.saddle};
  return {};
}

std::vector<int> cycle_coefficients(const std::vector<Region>& subclass) {
  const size_t k = subclass.size();
  std::vector<int> out(k);
  for (size_t j = 0; j < k; ++j)
    out[j] = (subclass[j] == Region::Y ? 1 : 0) - (subclass[(j + 1) % k] == Region::Y ? 1 : 0);
  return out;
}

Classification classify_saddles(const SparsePoly& Q, long r, long s, const MorseOptions& opt) {
  DirectionRatio d = DirectionRatio::reduced(r, s);
  Classification res;
  res.r = d.r;
  res.s = d.s;
  res.prec = opt.prec;
  Rational lambda(d.r, d.s);
  for (const auto& set : {bad_directions(Q), bad_directions_y(Q)})
    if (std::find(set.begin(), set.end(), lambda) != set.end())
      throw Error(ErrorKind::Assumption, "direction " + d.to_string() + " is a bad direction: a branch of V escapes at finite height");
  std::vector<CriticalPoint> cps = critical_points(Q, d.r, d.s, opt.prec);
  for (const auto& c : cps) res.saddles.push_back({c, SaddleClass::Unclassified, {}, {}, {}});
  if (cps.empty()) return res;
  std::tie(res.eps_x, res.eps_y) = pole_radii(Q, cps, opt.prec);
  MorseEngine eng(Q, d.r, d.s, opt.prec);

  const int levels = cps.back().level + 1;
  for (int L = 0; L < levels; ++L) {
    if (res.c_star_level) break;
    std::vector<size_t> here;
    for (size_t j = 0; j < cps.size(); ++j)
      if (cps[j].level == L) here.push_back(j);
    // bypass boxes around classified saddles at strictly higher levels
    DyadicFloat floor = cps[here.front()].height.upper();
    for (size_t j : here)
      if (floor < cps[j].height.upper()) floor = cps[j].height.upper();
    std::vector<BypassBox> boxes;
    for (size_t p = 0; p < cps.size(); ++p) {
      if (cps[p].level >= L) continue;
      if (res.saddles[p].cls != SaddleClass::X && res.saddles[p].cls != SaddleClass::Y) continue;
      DyadicFloat e = bypass_radius(Q, cps, p, d.r, d.s, floor, opt.prec);
      if (e.is_zero()) continue;
      AlgebraicPoint ap = refine_to_prec(cps[p].point, opt.prec);
      boxes.push_back({static_cast<int>(p), ap.x.enclosure.center_ball().with_radius(e),
                       ap.y.enclosure.center_ball().with_radius(e)});
    }

    for (size_t j : here) {
      SaddleRecord& rec = res.saddles[j];
      std::vector<DyadicFloat> gains;
      std::vector<CurvePoint> exits = eng.saddle_exits(cps[j], &gains);
      for (size_t i = 0; i < exits.size(); ++i) {
        AscentPath path;
        CurvePoint z = exits[i];
        RealBall hz = eng.height(z);
        DyadicFloat fl(kRadPrec);
        mpfr_add(fl.raw(), cps[j].height.lower().raw(), gains[i].raw(), MPFR_RNDD);
        if (fl < hz.lower()) fl = hz.lower();
        long steps = 0;
        bool just_swapped = false;
        for (;;) {
          if (opt.keep_points || path.points.empty()) {
            path.points.push_back(z);
            path.heights.push_back(hz);
            path.floor.push_back(fl);
          }
          TerminalResult t = terminal_check(z, res.eps_x, res.eps_y, boxes, opt.prec);
          if (t.kind == Terminal::X) {
            path.end = Region::X;
            break;
          }
          if (t.kind == Terminal::Y) {
            path.end = Region::Y;
            break;
          }
          if (t.kind == Terminal::Inherit) {
            path.end = res.saddles[static_cast<size_t>(t.saddle)].cls == SaddleClass::X ? Region::X : Region::Y;
            path.inherited_from = t.saddle;
            break;
          }
          if (++steps > opt.max_steps)
            throw Error(ErrorKind::CapExceeded, "ascent path from saddle " + std::to_string(j) + " exit " +
                                                    std::to_string(i) + " exceeded " + std::to_string(opt.max_steps) +
                                                    " steps; last point x = " + z.x(opt.prec).to_string(10) +
                                                    ", y = " + z.y(opt.prec).to_string(10));
          ++res.total_steps;
          DyadicFloat g(kRadPrec);
          CurvePoint next = just_swapped ? z : eng.maybe_swap(z, &g);
          if (next.chart != z.chart) {
            ++path.chart_swaps;
            just_swapped = true;
          } else {
            just_swapped = false;
            try {
              next = eng.ascend_step(z, &g);
            } catch (const Error& e) {
              if (e.kind() != ErrorKind::Inconclusive) throw;
              // the chart may be the problem: retry from the same point in the other chart
              next = eng.maybe_swap(z, &g, true);
              ++path.chart_swaps;
              just_swapped = true;
            }
          }
          z = next;
          hz = eng.height(z);
          DyadicFloat nf(kRadPrec);
          mpfr_add(nf.raw(), fl.raw(), g.raw(), MPFR_RNDD);
          if (nf < hz.lower()) nf = hz.lower();
          fl = nf;
        }
        path.steps = steps;
        rec.subclass.push_back(path.end);
        rec.paths.push_back(std::move(path));
      }
      bool any_x = false, any_y = false;
      for (Region g : rec.subclass) {
        any_x = any_x || g == Region::X;
        any_y = any_y || g == Region::Y;
      }
      rec.cls = any_x && any_y ? SaddleClass::Mixed : (any_x ? SaddleClass::X : SaddleClass::Y);
      rec.cycle = cycle_coefficients(rec.subclass);
      if (rec.cls == SaddleClass::Mixed && !res.c_star_level) {
        res.c_star_level = L;
        res.c_star = cps[j].height;
      }
    }
  }
  if (res.c_star_level)
    for (size_t j = 0; j < cps.size(); ++j)
      if (cps[j].level == *res.c_star_level && res.saddles[j].cls == SaddleClass::Mixed) res.xi.push_back(j);
  return res;
}

Classification classify_saddles_escalating(const SparsePoly& Q, long r, long s, const MorseOptions& opt) {
  MorseOptions o = opt;
  for (;;) {
    try {
      return classify_saddles(Q, r, s, o);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Inconclusive && e.kind() != ErrorKind::PrecisionExhausted) throw;
      if (o.prec * 2 > opt.max_prec)
        throw Error(ErrorKind::PrecisionExhausted, std::string("precision escalation exhausted: ") + e.what());
      o.prec *= 2;
    }
  }
}

}  // namespace acsv
