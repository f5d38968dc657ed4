// Bivariate zero-dimensional solving: resultants in both directions, root isolation,
// pairing by certified evaluation, and a per-pair certificate (Krawczyk on the box or
// a counting argument on one coordinate when the Jacobian is singular).
#include "acsv/solve.hpp"

#include <algorithm>

namespace acsv {

namespace {

struct Jet {
  CompiledPoly f, g, fx, fy, gx, gy;
  Jet(const SparsePoly& F, const SparsePoly& G, long prec)
      : f(F, prec),
        g(G, prec),
        fx(F.derivative(Var::X), prec),
        fy(F.derivative(Var::Y), prec),
        gx(G.derivative(Var::X), prec),
        gy(G.derivative(Var::Y), prec) {}
};

bool krawczyk2_impl(const Jet& j, const ComplexBall& X, const ComplexBall& Y) {
  if (X.is_exact() || Y.is_exact()) return false;
  try {
    ComplexBall cx = X.center_ball(), cy = Y.center_ball();
    ComplexBall F = j.f.eval(cx, cy), G = j.g.eval(cx, cy);
    ComplexBall a = j.fx.eval(cx, cy).center_ball(), b = j.fy.eval(cx, cy).center_ball();
    ComplexBall c = j.gx.eval(cx, cy).center_ball(), d = j.gy.eval(cx, cy).center_ball();
    ComplexBall det = a * d - b * c;
    // any preconditioner is valid; use the (rounded) inverse Jacobian at the center
    ComplexBall idet = inv(det.center_ball()).center_ball();
    ComplexBall c11 = (d * idet).center_ball(), c12 = (-(b * idet)).center_ball();
    ComplexBall c21 = (-(c * idet)).center_ball(), c22 = (a * idet).center_ball();
    ComplexBall A = j.fx.eval(X, Y), B = j.fy.eval(X, Y), C = j.gx.eval(X, Y), D = j.gy.eval(X, Y);
    ComplexBall one = ComplexBall::from(Rational(1), X.prec());
    ComplexBall m11 = one - (c11 * A + c12 * C), m12 = ComplexBall(X.prec()) - (c11 * B + c12 * D);
    ComplexBall m21 = ComplexBall(X.prec()) - (c21 * A + c22 * C), m22 = one - (c21 * B + c22 * D);
    ComplexBall dx = ComplexBall(X.prec()).with_radius(X.rad()), dy = ComplexBall(Y.prec()).with_radius(Y.rad());
    ComplexBall kx = cx - (c11 * F + c12 * G) + (m11 * dx + m12 * dy);
    ComplexBall ky = cy - (c21 * F + c22 * G) + (m21 * dx + m22 * dy);
    return X.interior_contains(kx) && Y.interior_contains(ky);
  } catch (const Error&) {
    return false;
  }
}

AlgebraicNumber shrink(const AlgebraicNumber& a) {
  DyadicFloat t = a.enclosure.rad();
  if (t.is_zero()) return a;
  mpfr_div_2ui(t.raw(), t.raw(), 12, MPFR_RNDD);
  return refine(a, t);
}

}  // namespace

bool krawczyk2(const SparsePoly& f, const SparsePoly& g, const ComplexBall& X, const ComplexBall& Y) {
  return krawczyk2_impl(Jet(f, g, std::max(X.prec(), Y.prec())), X, Y);
}

std::vector<AlgebraicPoint> solve_system(const SparsePoly& f, const SparsePoly& g, long prec, bool torus_only) {
  if (f.is_zero() || g.is_zero()) throw Error(ErrorKind::NotZeroDimensional, "not zero-dimensional: zero generator");
  for (Var v : {Var::Y, Var::X}) {
    if (f.degree(v) == 0 && g.degree(v) == 0) {
      Var o = v == Var::Y ? Var::X : Var::Y;
      if (gcd(f.to_uni(o), g.to_uni(o)).degree() > 0)
        throw Error(ErrorKind::NotZeroDimensional, "not zero-dimensional: common factor");
      return {};
    }
  }
  QPoly R = resultant_uni(f, g, Var::Y), S = resultant_uni(f, g, Var::X);
  if (R.is_zero() || S.is_zero()) throw Error(ErrorKind::NotZeroDimensional, "not zero-dimensional: resultant vanishes identically");
  if (R.degree() == 0 || S.degree() == 0) return {};

  std::vector<AlgebraicNumber> xs = isolate_roots(R, prec), ys = isolate_roots(S, prec);
  const QPoly lfy = f.coeffs_in(Var::Y).back(), lgy = g.coeffs_in(Var::Y).back();
  const QPoly lfx = f.coeffs_in(Var::X).back(), lgx = g.coeffs_in(Var::X).back();

  struct Pair {
    size_t i, j;
    bool certified = false;
  };
  std::vector<Pair> live;
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = 0; j < ys.size(); ++j) live.push_back({i, j});

  bool done = false;
  for (int round = 0; round < 40 && !done; ++round) {
    long p = prec;
    for (const auto& a : xs) p = std::max(p, a.prec());
    for (const auto& a : ys) p = std::max(p, a.prec());
    Jet jet(f, g, p);
    std::vector<Pair> next;
    for (auto pr : live) {
      const ComplexBall &X = xs[pr.i].enclosure, &Y = ys[pr.j].enclosure;
      if (!pr.certified) {
        if (!jet.f.eval(X, Y).contains_zero() || !jet.g.eval(X, Y).contains_zero()) continue;
        pr.certified = krawczyk2_impl(jet, X, Y);
      }
      next.push_back(pr);
    }
    live = std::move(next);
    // counting certificate along one coordinate
    for (size_t i = 0; i < xs.size(); ++i) {
      std::vector<size_t> idx;
      for (size_t k = 0; k < live.size(); ++k)
        if (live[k].i == i) idx.push_back(k);
      if (idx.size() != 1 || live[idx[0]].certified) continue;
      const ComplexBall& X = xs[i].enclosure;
      if (!poly_eval(lfy, X).contains_zero() || !poly_eval(lgy, X).contains_zero()) live[idx[0]].certified = true;
    }
    for (size_t j = 0; j < ys.size(); ++j) {
      std::vector<size_t> idx;
      for (size_t k = 0; k < live.size(); ++k)
        if (live[k].j == j) idx.push_back(k);
      if (idx.size() != 1 || live[idx[0]].certified) continue;
      const ComplexBall& Y = ys[j].enclosure;
      if (!poly_eval(lfx, Y).contains_zero() || !poly_eval(lgx, Y).contains_zero()) live[idx[0]].certified = true;
    }
    done = std::all_of(live.begin(), live.end(), [](const Pair& p) { return p.certified; });
    if (done) break;
    std::vector<bool> rx(xs.size(), false), ry(ys.size(), false);
    for (const auto& pr : live)
      if (!pr.certified) rx[pr.i] = ry[pr.j] = true;
    for (size_t i = 0; i < xs.size(); ++i)
      if (rx[i]) xs[i] = shrink(xs[i]);
    for (size_t j = 0; j < ys.size(); ++j)
      if (ry[j]) ys[j] = shrink(ys[j]);
  }
  if (!done) throw Error(ErrorKind::Inconclusive, "solve_system could not certify all solution candidates");

  std::vector<AlgebraicPoint> out;
  for (const auto& pr : live) {
    if (torus_only && (algnum_is_zero(xs[pr.i]) || algnum_is_zero(ys[pr.j]))) continue;
    out.push_back({xs[pr.i], ys[pr.j], f, g});
  }
  std::sort(out.begin(), out.end(), [](const AlgebraicPoint& a, const AlgebraicPoint& b) {
    auto ax = a.x.approx(), bx = b.x.approx(), ay = a.y.approx(), by = b.y.approx();
    if (ax.real() != bx.real()) return ax.real() < bx.real();
    if (ax.imag() != bx.imag()) return ax.imag() < bx.imag();
    if (ay.real() != by.real()) return ay.real() < by.real();
    return ay.imag() < by.imag();
  });
  return out;
}

AlgebraicPoint refine_to_prec(const AlgebraicPoint& p, long prec) {
  return {refine_to_prec(p.x, prec), refine_to_prec(p.y, prec), p.f, p.g};
}

bool points_equal(const AlgebraicPoint& a, const AlgebraicPoint& b) {
  return algnum_equals(a.x, b.x) && algnum_equals(a.y, b.y);
}

}  // namespace acsv
