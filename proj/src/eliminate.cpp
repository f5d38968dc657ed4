#include "acsv/eliminate.hpp"

#include <algorithm>

namespace acsv {

namespace {

// E(v, t) = Res_w(h, t·D − N), w = elim, v the other variable. Returned with v in the
// X slot and t in the Y slot. Built by evaluation at v-nodes where the formal degrees hold.
SparsePoly eliminate_with_value(const SparsePoly& h, const SparsePoly& N, const SparsePoly& D, Var elim) {
  const Var keep = elim == Var::X ? Var::Y : Var::X;
  const int hw = h.degree(elim), Hw = std::max(N.degree(elim), D.degree(elim));
  if (hw <= 0 || Hw < 0) throw Error(ErrorKind::DegenerateInput, "elimination needs the eliminated variable");
  const int hv = std::max(h.degree(keep), 0), Hv = std::max({N.degree(keep), D.degree(keep), 0});
  const int bound = Hw * hv + hw * Hv;
  const int tdeg = hw;  // t-degree of the resultant
  std::vector<Rational> xs;
  std::vector<std::vector<Rational>> vals(static_cast<size_t>(tdeg) + 1);
  for (size_t i = 0; static_cast<int>(xs.size()) <= bound; ++i) {
    if (i > static_cast<size_t>(bound) * 4 + 64) throw Error(ErrorKind::Internal, "no admissible interpolation nodes");
    Rational a = interpolation_node(i);
    QPoly ha = h.specialize(elim, a), Da = D.specialize(elim, a), Na = N.specialize(elim, a);
    if (ha.degree() != hw || std::max(Da.degree(), Na.degree()) != Hw) continue;
    SparsePoly H;
    for (int j = 0; j <= Hw; ++j) {
      if (sgn(Da.coeff(j)) != 0) H = H + SparsePoly::monomial(Da.coeff(j), 1, j);
      if (sgn(Na.coeff(j)) != 0) H = H - SparsePoly::monomial(Na.coeff(j), 0, j);
    }
    QPoly r = Hw == 0 ? QPoly() : resultant_uni(SparsePoly::from_uni(ha, Var::Y), H, Var::Y);
    if (Hw == 0) {
      // H = t·D(a) − N(a) has no w: Res = H^hw
      QPoly base{Rational(-Na.coeff(0)), Da.coeff(0)};
      r = QPoly::constant(Rational(1));
      for (int k = 0; k < hw; ++k) r = r * base;
    }
    xs.push_back(a);
    for (int k = 0; k <= tdeg; ++k) vals[static_cast<size_t>(k)].push_back(r.coeff(k));
  }
  SparsePoly E;
  for (int k = 0; k <= tdeg; ++k) {
    QPoly c = interpolate(xs, vals[static_cast<size_t>(k)]);
    for (int i = 0; i <= c.degree(); ++i)
      if (sgn(c.coeff(i)) != 0) E = E + SparsePoly::monomial(c.coeff(i), i, k);
  }
  // remove factors free of t (vanishing leading coefficients, axis factors)
  auto tc = E.coeffs_in(Var::Y);
  QPoly content;
  for (const auto& c : tc) content = content.is_zero() ? c : gcd(content, c);
  if (content.degree() > 0) {
    SparsePoly out;
    for (size_t k = 0; k < tc.size(); ++k) {
      QPoly q = exact_div(tc[k], content);
      for (int i = 0; i <= q.degree(); ++i)
        if (sgn(q.coeff(i)) != 0) out = out + SparsePoly::monomial(q.coeff(i), i, static_cast<int>(k));
    }
    E = out;
  }
  return E;
}

QPoly variant(const SparsePoly& f, const SparsePoly& g, const SparsePoly& h, const SparsePoly& N, const SparsePoly& D,
              Var elim) {
  QPoly R = resultant_uni(f, g, elim);
  if (R.is_zero()) throw Error(ErrorKind::NotZeroDimensional, "not zero-dimensional");
  R = squarefree(R.strip_zero_roots());
  if (R.degree() <= 0) return QPoly::constant(Rational(1));
  SparsePoly E = eliminate_with_value(h, N, D, elim);
  if (E.degree(Var::X) <= 0) return E.to_uni(Var::Y);
  return resultant_uni(SparsePoly::from_uni(R, Var::X), E, Var::X);
}

}  // namespace

QPoly value_annihilator(const SparsePoly& f, const SparsePoly& g, const SparsePoly& N, const SparsePoly& D) {
  QPoly acc;
  bool any = false;
  for (Var elim : {Var::Y, Var::X})
    for (const SparsePoly* h : {&f, &g}) {
      QPoly a;
      try {
        a = variant(f, g, *h, N, D, elim);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotZeroDimensional) throw;
        continue;
      }
      if (a.is_zero()) continue;
      acc = any ? gcd(acc, a) : a;
      any = true;
    }
  if (!any) throw Error(ErrorKind::Inconclusive, "value elimination vanished identically");
  return acc.degree() <= 0 ? QPoly::constant(Rational(1)) : squarefree(acc);
}

QPoly product_annihilator(const QPoly& A) {
  const int n = A.degree();
  if (n <= 0) return QPoly::constant(Rational(1));
  // Res_u(A(u), u^n A(t/u)) with t in X and u in Y
  SparsePoly B;
  for (int i = 0; i <= n; ++i)
    if (sgn(A.coeff(i)) != 0) B = B + SparsePoly::monomial(A.coeff(i), i, n - i);
  QPoly r = resultant_uni(SparsePoly::from_uni(A, Var::Y), B, Var::Y);
  return squarefree(r);
}

AlgebraicNumber identify_root(const QPoly& A, const std::function<ComplexBall(long)>& value, long prec) {
  std::vector<AlgebraicNumber> roots = isolate_roots(A, prec);
  for (long p = prec; p <= kMaxPrec; p *= 2) {
    ComplexBall v = value(p);
    std::vector<size_t> hit;
    for (size_t i = 0; i < roots.size(); ++i)
      if (roots[i].enclosure.overlaps(v)) hit.push_back(i);
    if (hit.size() == 1) return roots[hit[0]];
    if (hit.empty()) throw Error(ErrorKind::Internal, "identify_root: value is not a root of the annihilator");
    DyadicFloat t = v.rad();
    if (t.is_zero()) t = DyadicFloat(std::ldexp(1.0, -static_cast<int>(p)), kRadPrec);
    for (size_t i : hit) roots[i] = refine(roots[i], t);
  }
  throw Error(ErrorKind::PrecisionExhausted, "identify_root: could not separate candidate roots");
}

}  // namespace acsv
