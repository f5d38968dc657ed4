#include "acsv/algnum.hpp"

#include <algorithm>
#include <cmath>

namespace acsv {

namespace {

// ---- approximate complex arithmetic for Aberth iterations --------------------

struct Cx {
  DyadicFloat re, im;
  explicit Cx(long p) : re(p), im(p) {}
};

void cx_mul(Cx& r, const Cx& a, const Cx& b) {
  Cx t(r.re.prec());
  mpfr_fmms(t.re.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_fmma(t.im.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
  std::swap(r, t);
}

void cx_add(Cx& r, const Cx& a, const Cx& b) {
  mpfr_add(r.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_add(r.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
}

void cx_sub(Cx& r, const Cx& a, const Cx& b) {
  mpfr_sub(r.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_sub(r.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
}

// false when b == 0
bool cx_div(Cx& r, const Cx& a, const Cx& b) {
  const long p = r.re.prec();
  DyadicFloat n(p);
  mpfr_fmma(n.raw(), b.re.raw(), b.re.raw(), b.im.raw(), b.im.raw(), MPFR_RNDN);
  if (n.is_zero()) return false;
  Cx t(p);
  mpfr_fmma(t.re.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_fmms(t.im.raw(), a.im.raw(), b.re.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_div(t.re.raw(), t.re.raw(), n.raw(), MPFR_RNDN);
  mpfr_div(t.im.raw(), t.im.raw(), n.raw(), MPFR_RNDN);
  std::swap(r, t);
  return true;
}

DyadicFloat cx_abs(const Cx& a) {
  DyadicFloat h(64);
  mpfr_hypot(h.raw(), a.re.raw(), a.im.raw(), MPFR_RNDN);
  return h;
}

Cx cx_from(const GaussianRational& z, long p) {
  Cx c(p);
  mpfr_set_q(c.re.raw(), z.re.get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(c.im.raw(), z.im.get_mpq_t(), MPFR_RNDN);
  return c;
}

Cx cx_reprec(const Cx& z, long p) {
  Cx c(p);
  mpfr_set(c.re.raw(), z.re.raw(), MPFR_RNDN);
  mpfr_set(c.im.raw(), z.im.raw(), MPFR_RNDN);
  return c;
}

// log2 |z| as double (−inf for 0)
double cx_log2abs(const Cx& z) {
  DyadicFloat a = cx_abs(z);
  if (a.is_zero()) return -INFINITY;
  long e;
  double m = mpfr_get_d_2exp(&e, a.raw(), MPFR_RNDN);
  return std::log2(m) + static_cast<double>(e);
}

std::vector<GaussianRational> gauss_coeffs(const QPoly& p) {
  std::vector<GaussianRational> c;
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return c;
}
std::vector<GaussianRational> gauss_coeffs(const GPoly& p) { return p.coeffs(); }

// Simultaneous Aberth iteration. z holds the starting points on entry.
void aberth(const std::vector<GaussianRational>& coeffs, std::vector<Cx>& z, long p, std::vector<double>& last_corr_log2) {
  const size_t n = coeffs.size() - 1;
  std::vector<Cx> a, da;
  for (const auto& c : coeffs) a.push_back(cx_from(c, p));
  for (size_t i = 1; i <= n; ++i) {
    Cx d = cx_from(coeffs[i] * GaussianRational(static_cast<long>(i)), p);
    da.push_back(d);
  }
  last_corr_log2.assign(n, 0.0);
  const int max_iter = 60 + 8 * static_cast<int>(n) + static_cast<int>(p / 8);
  std::vector<bool> done(n, false);
  Cx pv(p), dv(p), w(p), s(p), t(p), one(p), corr(p);
  mpfr_set_ui(one.re.raw(), 1, MPFR_RNDN);
  for (int it = 0; it < max_iter; ++it) {
    bool all_done = true;
    for (size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      // Horner for p and p'
      pv = a[n];
      for (size_t i = n; i-- > 0;) {
        cx_mul(pv, pv, z[k]);
        cx_add(pv, pv, a[i]);
      }
      dv = da[n - 1];
      for (size_t i = n - 1; i-- > 0;) {
        cx_mul(dv, dv, z[k]);
        cx_add(dv, dv, da[i]);
      }
      if (pv.re.is_zero() && pv.im.is_zero()) {
        done[k] = true;
        last_corr_log2[k] = -INFINITY;
        continue;
      }
      if (!cx_div(w, pv, dv)) {
        // derivative vanished: nudge
        mpfr_mul_d(z[k].re.raw(), z[k].re.raw(), 1.0 + 1e-3, MPFR_RNDN);
        mpfr_add_d(z[k].im.raw(), z[k].im.raw(), 1e-3, MPFR_RNDN);
        all_done = false;
        continue;
      }
      mpfr_set_zero(s.re.raw(), 1);
      mpfr_set_zero(s.im.raw(), 1);
      for (size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        cx_sub(t, z[k], z[j]);
        if (!cx_div(t, one, t)) continue;
        cx_add(s, s, t);
      }
      cx_mul(t, w, s);
      cx_sub(t, one, t);
      if (!cx_div(corr, w, t)) corr = w;
      cx_sub(z[k], z[k], corr);
      double lc = cx_log2abs(corr), lz = cx_log2abs(z[k]);
      last_corr_log2[k] = lc;
      double scale = std::isfinite(lz) ? std::max(lz, -static_cast<double>(p)) : -static_cast<double>(p);
      if (lc < scale - static_cast<double>(p) + 6) done[k] = true;
      else all_done = false;
    }
    if (all_done) break;
  }
}

template <class Poly>
ComplexBall kr_step_impl(const Poly& p, const ComplexBall& b) {
  const Poly dp = p.derivative();
  ComplexBall c = b.center_ball();
  ComplexBall pc = poly_eval(p, c), dpc = poly_eval(dp, c);
  if (dpc.contains_zero()) throw Error(ErrorKind::Inconclusive, "P'(c) not certifiably nonzero");
  ComplexBall dpb = poly_eval(dp, b);
  ComplexBall one = ComplexBall::from(Rational(1), b.prec());
  ComplexBall r0 = ComplexBall(b.prec()).with_radius(b.rad());
  return c - pc / dpc + (one - dpb / dpc) * r0;
}

GaussianRational exact_eval(const QPoly& p, const GaussianRational& z) { return to_gaussian(p).eval(z); }
GaussianRational exact_eval(const GPoly& p, const GaussianRational& z) { return p.eval(z); }

template <class Poly>
bool kr_certified_impl(const Poly& p, const ComplexBall& b) {
  if (b.is_exact()) return exact_eval(p, b.center()).is_zero();
  try {
    return b.interior_contains(kr_step_impl(p, b));
  } catch (const Error&) {
    return false;
  }
}

// Roots of p (nonzero constant term, squarefree) as certified balls.
template <class Poly>
std::vector<ComplexBall> isolate_nonzero(const Poly& s, long prec) {
  const int n = s.degree();
  std::vector<ComplexBall> out;
  if (n <= 0) return out;
  const auto coeffs = gauss_coeffs(s);
  long p = std::max(prec, 64L);
  // Starting points on a circle of Fujiwara-bound radius.
  double lead = std::log2(std::max(std::abs(coeffs.back().re.get_d()), std::abs(coeffs.back().im.get_d())));
  double bound = -1e300;
  for (int k = 1; k <= n; ++k) {
    const auto& c = coeffs[static_cast<size_t>(n - k)];
    double m = std::max(std::abs(c.re.get_d()), std::abs(c.im.get_d()));
    if (m == 0) continue;
    bound = std::max(bound, (std::log2(m) - lead) / k);
  }
  double radius = std::exp2(std::min(bound + 1.0, 900.0));
  std::vector<Cx> z;
  for (int k = 0; k < n; ++k) {
    double ang = 2 * M_PI * k / n + 0.4;
    Cx c(p);
    mpfr_set_d(c.re.raw(), radius * std::cos(ang), MPFR_RNDN);
    mpfr_set_d(c.im.raw(), radius * std::sin(ang), MPFR_RNDN);
    z.push_back(std::move(c));
  }
  std::vector<double> corr;
  for (;;) {
    aberth(coeffs, z, p, corr);
    out.clear();
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      // separation from the other approximations
      double sep_log2 = INFINITY;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        Cx d(p);
        cx_sub(d, z[static_cast<size_t>(k)], z[static_cast<size_t>(j)]);
        sep_log2 = std::min(sep_log2, cx_log2abs(d));
      }
      double lz = cx_log2abs(z[static_cast<size_t>(k)]);
      double r_log2 = std::max(corr[static_cast<size_t>(k)] + 3, (std::isfinite(lz) ? lz : 0.0) - static_cast<double>(p) + 24);
      bool found = false;
      for (int tries = 0; tries < 64 && r_log2 < sep_log2 - std::log2(3.0); ++tries, r_log2 += 4) {
        DyadicFloat rad(kRadPrec);
        mpfr_set_ui_2exp(rad.raw(), 1, static_cast<long>(std::ceil(r_log2)), MPFR_RNDU);
        ComplexBall b(z[static_cast<size_t>(k)].re, z[static_cast<size_t>(k)].im, rad);
        if (kr_certified_impl(s, b)) {
          out.push_back(b);
          found = true;
          break;
        }
      }
      if (!found) ok = false;
    }
    if (ok) break;
    if (p * 2 > kMaxPrec) throw Error(ErrorKind::PrecisionExhausted, "root isolation failed at maximum precision");
    p *= 2;
    for (auto& c : z) c = cx_reprec(c, p);
  }
  return out;
}

DyadicFloat pow2(long e) {
  DyadicFloat d(kRadPrec);
  mpfr_set_ui_2exp(d.raw(), 1, e, MPFR_RNDN);
  return d;
}

// Real-centered certified ball around a real root, if the symmetric ball certifies.
bool try_real_ball(const QPoly& p, ComplexBall& b) {
  if (b.im().is_zero()) return true;
  DyadicFloat absim(kRadPrec);
  mpfr_abs(absim.raw(), b.im().raw(), MPFR_RNDU);
  if (b.rad() < absim) return false;  // ball misses the real axis
  DyadicFloat r = b.rad();
  mpfr_add(r.raw(), r.raw(), absim.raw(), MPFR_RNDU);
  ComplexBall sym(b.re(), DyadicFloat(b.prec()), r);
  if (kr_certified_impl(p, sym)) {
    b = sym;
    return true;
  }
  return false;
}

}  // namespace

ComplexBall kr_step(const QPoly& p, const ComplexBall& b) { return kr_step_impl(p, b); }
ComplexBall kr_step(const GPoly& p, const ComplexBall& b) { return kr_step_impl(p, b); }
bool kr_certified(const QPoly& p, const ComplexBall& b) { return kr_certified_impl(p, b); }
bool kr_certified(const GPoly& p, const ComplexBall& b) { return kr_certified_impl(p, b); }

AlgebraicNumber algnum_from_rational(const Rational& q, long prec) {
  QPoly d = primitive_part(QPoly{Rational(-q), Rational(1)});
  ComplexBall b = ComplexBall::from(q, prec);
  // headroom so one Krawczyk step lands strictly inside
  if (!b.is_exact()) {
    DyadicFloat r = b.rad();
    mpfr_mul_2ui(r.raw(), r.raw(), 8, MPFR_RNDU);
    b = b.with_radius(r);
  }
  return {d, b};
}

namespace {

AlgebraicNumber refine_impl(const AlgebraicNumber& a, const DyadicFloat& target, long min_prec) {
  const QPoly& P = a.defining;
  ComplexBall B = a.enclosure;
  if (B.prec() < min_prec) B = B.at_prec(min_prec);
  // exact zero root
  if (sgn(P.coeff(0)) == 0 && B.contains_zero()) return {P, ComplexBall(std::max(B.prec(), min_prec))};
  if (B.rad() < target && B.prec() >= min_prec) return {P, B};
  if (P.degree() == 1) {
    Rational root = -P.coeff(0) / P.coeff(1);
    long p = std::max(B.prec(), min_prec);
    for (;;) {
      ComplexBall r = ComplexBall::from(root, p);
      if (r.rad() < target) return {P, r};
      if (p >= kMaxPrec) throw Error(ErrorKind::PrecisionExhausted, "refine: target below precision cap");
      p *= 2;
    }
  }
  const ComplexBall U = B;  // uniqueness region
  long p = std::max(B.prec(), min_prec);
  // enough bits for the target relative to the root size
  {
    DyadicFloat mag = B.abs_upper();
    long need = 16;
    if (!mag.is_zero() && !target.is_zero()) need += std::max(0L, mpfr_get_exp(mag.raw()) - mpfr_get_exp(target.raw()));
    while (p < need && p < kMaxPrec) p *= 2;
  }
  B = B.at_prec(p);
  for (int iter = 0; iter < 400; ++iter) {
    if (B.rad() < target && kr_certified_impl(P, B)) return {P, B};
    ComplexBall nb(p);
    bool progressed = false;
    try {
      nb = kr_step_impl(P, B);
      if (U.contains(nb) && nb.rad() < B.rad()) {
        DyadicFloat ninety = B.rad();
        mpfr_mul_d(ninety.raw(), ninety.raw(), 0.9, MPFR_RNDD);
        progressed = nb.rad() < ninety;
        B = nb;
      }
    } catch (const Error&) {
    }
    if (progressed) continue;
    if (B.rad() < target) {
      // stalled below target but not self-certifying: widen slightly
      DyadicFloat r2 = B.rad();
      mpfr_mul_2ui(r2.raw(), r2.raw(), 1, MPFR_RNDU);
      ComplexBall w = B.with_radius(r2);
      if (r2 < target && U.contains(w) && kr_certified_impl(P, w)) return {P, w};
    }
    if (p * 2 > kMaxPrec) throw Error(ErrorKind::PrecisionExhausted, "refine: no progress at maximum precision");
    p *= 2;
    B = B.at_prec(p);
  }
  throw Error(ErrorKind::PrecisionExhausted, "refine: iteration cap");
}

}  // namespace

AlgebraicNumber refine(const AlgebraicNumber& a, const DyadicFloat& target) { return refine_impl(a, target, a.prec()); }

AlgebraicNumber refine(const AlgebraicNumber& a, double target) { return refine(a, DyadicFloat(target, kRadPrec)); }

AlgebraicNumber refine_to_prec(const AlgebraicNumber& a, long prec) {
  DyadicFloat mag = a.enclosure.abs_upper();
  long e = mag.is_zero() ? 0 : mpfr_get_exp(mag.raw());
  return refine_impl(a, pow2(e - prec + 8), prec);
}

std::vector<AlgebraicNumber> isolate_roots(const QPoly& p, long prec) {
  if (p.is_zero()) throw Error(ErrorKind::DegenerateInput, "isolate_roots of the zero polynomial");
  QPoly s = squarefree(p);
  std::vector<AlgebraicNumber> out;
  int zeros = 0;
  QPoly core = s.strip_zero_roots(&zeros);
  if (zeros > 0) out.push_back({s, ComplexBall(prec)});
  if (core.degree() == 1) {
    out.push_back(algnum_from_rational(Rational(-core.coeff(0) / core.coeff(1)), prec));
    out.back().defining = s;
    return out;
  }
  auto balls = isolate_nonzero(core, prec);
  for (size_t k = 0; k < balls.size(); ++k) {
    // a real-centered ball is kept only if it stays clear of the others
    ComplexBall b = balls[k];
    if (try_real_ball(core, b)) {
      bool clear = !(zeros > 0 && b.contains_zero());
      for (size_t j = 0; j < balls.size() && clear; ++j)
        if (j != k && b.overlaps(balls[j])) clear = false;
      if (clear) balls[k] = b;
    }
  }
  for (auto& b : balls) out.push_back({s, b});
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (out[i].enclosure.overlaps(out[j].enclosure))
        throw Error(ErrorKind::Internal, "isolate_roots produced overlapping enclosures");
  return out;
}

std::vector<ComplexBall> isolate_roots(const GPoly& p, long prec) {
  if (p.is_zero()) throw Error(ErrorKind::DegenerateInput, "isolate_roots of the zero polynomial");
  GPoly s = squarefree(p);
  int zeros = 0;
  GPoly core = s.strip_zero_roots(&zeros);
  std::vector<ComplexBall> out;
  if (zeros > 0) out.push_back(ComplexBall(prec));
  auto balls = isolate_nonzero(core, prec);
  out.insert(out.end(), balls.begin(), balls.end());
  return out;
}

bool algnum_is_zero(const AlgebraicNumber& a) {
  return sgn(a.defining.coeff(0)) == 0 && a.enclosure.contains_zero();
}

bool algnum_is_real(const AlgebraicNumber& a) {
  AlgebraicNumber cur = a;
  for (int round = 0; round < 40; ++round) {
    ComplexBall b = cur.enclosure;
    if (b.im().is_zero() && (b.is_exact() || kr_certified_impl(cur.defining, b))) return true;
    DyadicFloat absim(kRadPrec);
    mpfr_abs(absim.raw(), b.im().raw(), MPFR_RNDD);
    if (b.rad() < absim) return false;
    if (try_real_ball(cur.defining, b)) return true;
    DyadicFloat t = b.rad();
    mpfr_div_2ui(t.raw(), t.raw(), 8, MPFR_RNDD);
    cur = refine(cur, t);
  }
  throw Error(ErrorKind::Inconclusive, "reality test did not resolve");
}

AlgebraicNumber algnum_conj(const AlgebraicNumber& a) { return {a.defining, a.enclosure.conj()}; }

bool algnum_equals(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (!a.enclosure.overlaps(b.enclosure)) return false;
  QPoly g = gcd(a.defining, b.defining);
  if (g.degree() <= 0) return false;
  AlgebraicNumber A = a, Bn = b;
  long prec = std::max(a.prec(), b.prec());
  auto groots = isolate_roots(g, prec);
  for (int round = 0; round < 24; ++round) {
    if (!A.enclosure.overlaps(Bn.enclosure)) return false;
    bool undecided = false;
    for (auto& gr : groots) {
      bool in_a = A.enclosure.contains(gr.enclosure), in_b = Bn.enclosure.contains(gr.enclosure);
      if (in_a && in_b) return true;
      bool out_a = !A.enclosure.overlaps(gr.enclosure), out_b = !Bn.enclosure.overlaps(gr.enclosure);
      if (in_a && out_b) continue;
      if (in_b && out_a) continue;
      if (out_a || out_b) continue;
      undecided = true;
    }
    if (!undecided) return false;
    // shrink everything and retry
    auto shrink = [](const AlgebraicNumber& x) {
      DyadicFloat t = x.enclosure.rad();
      if (t.is_zero()) return x;
      mpfr_div_2ui(t.raw(), t.raw(), 16, MPFR_RNDD);
      return refine(x, t);
    };
    A = shrink(A);
    Bn = shrink(Bn);
    for (auto& gr : groots) gr = shrink(gr);
  }
  throw Error(ErrorKind::Inconclusive, "algebraic equality test did not resolve");
}

}  // namespace acsv
