#include "acsv/asym.hpp"

#include <algorithm>

#include "acsv/eliminate.hpp"

namespace acsv {

namespace {

ComplexBall eval_at(const SparsePoly& F, const AlgebraicPoint& p) {
  return poly_eval(F, p.x.enclosure, p.y.enclosure);
}

// Sign of a − b for real algebraic numbers.
int compare_real(AlgebraicNumber a, AlgebraicNumber b) {
  if (algnum_equals(a, b)) return 0;
  for (long p = std::max(a.prec(), b.prec()); p <= kMaxPrec; p *= 2) {
    RealBall ra = a.enclosure.real(), rb = b.enclosure.real();
    if (ra.certainly_less(rb)) return -1;
    if (rb.certainly_less(ra)) return 1;
    a = refine_to_prec(a, 2 * p);
    b = refine_to_prec(b, 2 * p);
  }
  throw Error(ErrorKind::PrecisionExhausted, "cannot order breakpoints");
}

// Rational bounds strictly inside the gap between consecutive breakpoints.
Rational upper_bound(const Breakpoint& b) { return b.exact ? *b.exact : b.value.enclosure.real().upper().to_rational(); }
Rational lower_bound(const Breakpoint& b) { return b.exact ? *b.exact : b.value.enclosure.real().lower().to_rational(); }

}  // namespace

ConstantK constant_K(const SparsePoly& P, const SparsePoly& Q, const AlgebraicPoint& sigma, long r, long s, long prec) {
  if (vanishes_at(P, sigma)) throw Error(ErrorKind::DegenerateInput, "leading term vanishes, higher-order expansion out of scope");
  SparsePoly psi = psi_poly(Q);
  if (vanishes_at(psi, sigma)) throw Error(ErrorKind::Internal, "psi vanishes at a saddle of order 2");
  SparsePoly Qy = Q.derivative(Var::Y);
  SparsePoly num = Rational(-(r + s)) * Qy, den = Rational(s) * (SparsePoly::x() * psi);
  auto value = [&](long p) {
    AlgebraicPoint q = refine_to_prec(sigma, p);
    return eval_at(num, q) / eval_at(den, q);
  };
  ConstantK k;
  k.radicand = identify_root(value_annihilator(sigma.f, sigma.g, num, den), value, prec);
  k.radicand = refine_to_prec(k.radicand, prec);
  AlgebraicPoint sp = refine_to_prec(sigma, prec);
  k.p_value = eval_at(P, sp);
  k.magnitude = k.p_value.abs() * sqrt(k.radicand.enclosure.abs());
  return k;
}

AsymptoticReport analyze_direction(const SparsePoly& P, const SparsePoly& Q, long r, long s, const MorseOptions& opt) {
  check_assumptions(P, Q);
  AsymptoticReport rep;
  rep.P = P;
  rep.Q = Q;
  rep.analysis = classify_saddles_escalating(Q, r, s, opt);
  const Classification& a = rep.analysis;
  if (a.xi.empty()) {
    rep.caveats.push_back("no minimal critical point found: c* undefined, no estimate");
    return rep;
  }
  for (size_t i : a.xi) {
    if (a.saddles[i].cp.order_k != 2) {
      rep.degenerate = true;
      rep.caveats.push_back("degenerate direction: a saddle in Xi has order k = " +
                            std::to_string(a.saddles[i].cp.order_k) + ", constant not computed");
    }
  }
  if (rep.degenerate) return rep;
  const long prec = a.prec;
  for (size_t i : a.xi) {
    AsymptoticTerm t;
    t.saddle = i;
    AlgebraicPoint sp = refine_to_prec(a.saddles[i].cp.point, prec);
    t.x0 = sp.x.enclosure;
    t.y0 = sp.y.enclosure;
    try {
      t.K = constant_K(P, Q, a.saddles[i].cp.point, a.r, a.s, prec);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateInput) throw;
      rep.caveats.push_back(std::string(e.what()) + " (saddle " + std::to_string(i) + ")");
      rep.terms.clear();
      return rep;
    }
    ComplexBall minus_r = -t.K.radicand.enclosure;
    try {
      t.amplitude = t.K.p_value * sqrt(minus_r);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Inconclusive) throw;
      // −R on the negative axis: R > 0 and no principal branch applies
      rep.caveats.push_back("phase unresolved at saddle " + std::to_string(i) + ": -R is not off the negative axis");
      t.amplitude = t.K.p_value * sqrt(t.K.radicand.enclosure) * ComplexBall::from(GaussianRational{Rational(0), Rational(1)}, prec);
    }
    t.phase = t.amplitude / ComplexBall::from(t.K.magnitude);
    rep.terms.push_back(t);
  }
  return rep;
}

ComplexBall leading_estimate(const AsymptoticReport& rep, long rn, long sn, long prec) {
  if (rep.degenerate) throw Error(ErrorKind::DegenerateInput, "degenerate direction: no numeric constant");
  if (rep.terms.empty()) throw Error(ErrorKind::DegenerateInput, "no contributing saddle");
  const long r = rep.analysis.r, s = rep.analysis.s;
  if (rn <= 0 || sn <= 0 || rn * s != sn * r)
    throw Error(ErrorKind::DegenerateInput, "(" + std::to_string(rn) + ", " + std::to_string(sn) +
                                                ") is not along direction " + std::to_string(r) + ":" + std::to_string(s));
  ComplexBall sum(prec);
  for (const AsymptoticTerm& t : rep.terms) {
    ComplexBall x0 = t.x0.at_prec(prec), y0 = t.y0.at_prec(prec);
    sum = sum + t.amplitude.at_prec(prec) * pow(inv(x0), rn) * pow(inv(y0), sn);
  }
  RealBall norm = sqrt(RealBall::from(Rational(2 * (rn + sn)), prec) * const_pi(prec));
  return sum / ComplexBall::from(norm);
}

DirectionDecomposition decompose_directions(const SparsePoly& P, const SparsePoly& Q, const MorseOptions& opt,
                                            bool analyze) {
  check_assumptions(P, Q);
  DirectionDecomposition d;
  d.bad = bad_directions(Q);
  d.bad_y = bad_directions_y(Q);
  d.monkey = monkey_directions(Q);

  auto add = [&](const AlgebraicNumber& v, std::optional<Rational> exact, const std::string& src) {
    for (auto& b : d.breakpoints) {
      if (compare_real(b.value, v) == 0) {
        if (std::find(b.sources.begin(), b.sources.end(), src) == b.sources.end()) b.sources.push_back(src);
        if (!b.exact) b.exact = exact;
        return;
      }
    }
    d.breakpoints.push_back({v, exact, {src}});
  };
  for (const Rational& q : d.bad) add(algnum_from_rational(q, opt.prec), q, "bad");
  for (const Rational& q : d.bad_y) add(algnum_from_rational(q, opt.prec), q, "bad_y");
  for (const AlgebraicNumber& m : d.monkey) {
    std::optional<Rational> exact;
    if (m.defining.degree() == 1) exact = Rational(-m.defining.coeff(0) / m.defining.coeff(1));
    add(m, exact, "monkey");
  }
  std::sort(d.breakpoints.begin(), d.breakpoints.end(),
            [](const Breakpoint& a, const Breakpoint& b) { return compare_real(a.value, b.value) < 0; });
  // neighbours must have disjoint rational bounds before picking representatives
  for (size_t i = 0; i + 1 < d.breakpoints.size(); ++i) {
    Breakpoint &a = d.breakpoints[i], &b = d.breakpoints[i + 1];
    for (long p = opt.prec; !(upper_bound(a) < lower_bound(b)); p *= 2) {
      if (p > kMaxPrec) throw Error(ErrorKind::PrecisionExhausted, "cannot separate breakpoints");
      a.value = refine_to_prec(a.value, 2 * p);
      b.value = refine_to_prec(b.value, 2 * p);
    }
  }

  const size_t n = d.breakpoints.size();
  for (size_t i = 0; i <= n; ++i) {
    IntervalReport iv;
    if (i > 0) iv.lower = i - 1;
    if (i < n) iv.upper = i;
    Rational lo = iv.lower ? upper_bound(d.breakpoints[*iv.lower]) : Rational(0);
    Rational rep = iv.upper ? simplest_between(lo, lower_bound(d.breakpoints[*iv.upper])) : simplest_between(lo, lo, true);
    iv.representative = DirectionRatio::reduced(rep.get_num().get_si(), rep.get_den().get_si());
    if (analyze) {
      try {
        iv.report = analyze_direction(P, Q, iv.representative.r, iv.representative.s, opt);
      } catch (const Error& e) {
        iv.error_kind = e.kind();
        iv.error = e.what();
      }
    }
    d.intervals.push_back(std::move(iv));
  }
  return d;
}

}  // namespace acsv
