#include "acsv/geometry.hpp"

#include <algorithm>
#include <numeric>

#include "acsv/eliminate.hpp"

namespace acsv {

namespace {

Rational frac(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

ComplexBall eval_at(const SparsePoly& h, const AlgebraicPoint& p, long prec) {
  AlgebraicPoint q = refine_to_prec(p, prec);
  return poly_eval(h, q.x.enclosure, q.y.enclosure);
}

// (factor, multiplicity) with p = c · Π factor^multiplicity.
std::vector<std::pair<QPoly, int>> yun(const QPoly& p) {
  std::vector<std::pair<QPoly, int>> out;
  if (p.degree() <= 0) return out;
  QPoly a = gcd(p, p.derivative());
  QPoly b = exact_div(p, a), c = exact_div(p.derivative(), a);
  QPoly d = c - b.derivative();
  for (int m = 1; b.degree() > 0; ++m) {
    QPoly f = gcd(b, d);
    if (f.degree() > 0) out.push_back({f, m});
    b = exact_div(b, f);
    c = exact_div(d, f);
    d = c - b.derivative();
  }
  return out;
}

// L(F) = F_x Q_y − F_y Q_x, the derivative along the tangent field of V.
SparsePoly along(const SparsePoly& F, const SparsePoly& Qx, const SparsePoly& Qy) {
  return F.derivative(Var::X) * Qy - F.derivative(Var::Y) * Qx;
}

// Leading-order branch data for one Newton polygon edge or the β = 0 part.
void edge_branches(const QPoly& E, int q, const Rational& beta, std::vector<PuiseuxBranch>& out) {
  for (auto& [f, m] : yun(E)) {
    // c^q = u with u a root of f
    std::vector<Rational> gc(static_cast<size_t>(q * f.degree()) + 1);
    for (int i = 0; i <= f.degree(); ++i) gc[static_cast<size_t>(i * q)] = f.coeff(i);
    QPoly g = squarefree(QPoly(gc));
    auto us = isolate_roots(f), cs = isolate_roots(g);
    std::vector<int> owner(cs.size(), -1);
    for (int round = 0; round < 40; ++round) {
      bool ok = true;
      for (size_t i = 0; i < cs.size(); ++i) {
        ComplexBall cq = pow(cs[i].enclosure, q);
        int hits = 0;
        for (size_t j = 0; j < us.size(); ++j)
          if (us[j].enclosure.overlaps(cq)) {
            ++hits;
            owner[i] = static_cast<int>(j);
          }
        if (hits != 1) ok = false;
      }
      if (ok) break;
      if (round == 39) throw Error(ErrorKind::Inconclusive, "could not match Puiseux coefficients to edge roots");
      for (auto& c : cs) c = refine_to_prec(c, c.prec() * 2);
      for (auto& u : us) u = refine_to_prec(u, u.prec() * 2);
    }
    for (size_t j = 0; j < us.size(); ++j) {
      std::vector<size_t> mine;
      for (size_t i = 0; i < cs.size(); ++i)
        if (owner[i] == static_cast<int>(j)) mine.push_back(i);
      // representative: positive real, else real, else largest real part
      size_t best = mine.front();
      int best_rank = -1;
      for (size_t i : mine) {
        int rank = 0;
        if (algnum_is_real(cs[i])) rank = cs[i].approx().real() > 0 ? 2 : 1;
        if (rank > best_rank || (rank == best_rank && cs[i].approx().real() > cs[best].approx().real())) {
          best = i;
          best_rank = rank;
        }
      }
      out.push_back({beta, q * m, cs[best], m > 1});
    }
  }
}

QPoly edge_poly(const SparsePoly& Q, int i1, int j1, int p, int q, int len) {
  std::vector<Rational> c(static_cast<size_t>(len) + 1);
  for (int t = 0; t <= len; ++t) c[static_cast<size_t>(t)] = Q.coeff(i1 + p * t, j1 + q * t);
  return QPoly(c);
}

}  // namespace

DirectionRatio DirectionRatio::reduced(long r, long s) {
  if (r <= 0 || s <= 0) throw Error(ErrorKind::DegenerateInput, "direction entries must be positive");
  long g = std::gcd(r, s);
  return {r / g, s / g};
}

Rational DirectionRatio::lambda() const { return frac(r, s); }
Rational DirectionRatio::r_hat() const { return frac(r, r + s); }
Rational DirectionRatio::s_hat() const { return frac(s, r + s); }

SparsePoly critical_generator(const SparsePoly& Q, long r, long s) {
  SparsePoly x = SparsePoly::x(), y = SparsePoly::y();
  return Rational(s) * (x * Q.derivative(Var::X)) - Rational(r) * (y * Q.derivative(Var::Y));
}

SparsePoly psi_poly(const SparsePoly& Q) {
  SparsePoly x = SparsePoly::x(), y = SparsePoly::y();
  SparsePoly Qx = Q.derivative(Var::X), Qy = Q.derivative(Var::Y);
  SparsePoly Qxx = Q.derivative(Var::X, 2), Qyy = Q.derivative(Var::Y, 2);
  SparsePoly Qxy = Qx.derivative(Var::Y);
  return y * Qy * Qy * (Qx + x * Qxx) + x * Qx * Qx * (Qy + y * Qyy) - Rational(2) * (x * y * Qx * Qy * Qxy);
}

bool is_binomial(const SparsePoly& Q) { return Q.term_count() <= 2; }

bool vanishes_at(const SparsePoly& h, const AlgebraicPoint& p) {
  if (h.is_zero()) return true;
  for (long prec = std::max(p.prec(), kDefaultPrec); prec <= 512; prec *= 2)
    if (!eval_at(h, p, prec).contains_zero()) return false;
  for (const SparsePoly* f : {&p.f, &p.g}) {
    std::vector<AlgebraicPoint> pts;
    try {
      pts = solve_system(*f, h, kDefaultPrec, false);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NotZeroDimensional) continue;
      throw;
    }
    for (const auto& q : pts)
      if (points_equal(q, p)) return true;
    return false;
  }
  throw Error(ErrorKind::Inconclusive, "zero test: polynomial shares a component with both generators");
}

bool is_smooth(const SparsePoly& Q) {
  SparsePoly Qx = Q.derivative(Var::X), Qy = Q.derivative(Var::Y);
  if (Qx.is_zero() && Qy.is_zero()) return true;
  // a repeated factor (or a factor free of one variable) makes a resultant vanish
  if (!Qy.is_zero() && resultant_uni(Q, Qy, Var::Y).is_zero()) return false;
  if (!Qx.is_zero() && resultant_uni(Q, Qx, Var::X).is_zero()) return false;
  // singular points: common zeros of Q and one partial at which the other partial vanishes
  for (int pass = 0; pass < 2; ++pass) {
    const SparsePoly& g = pass == 0 ? Qy : Qx;
    const SparsePoly& other = pass == 0 ? Qx : Qy;
    if (g.is_zero()) continue;
    std::vector<AlgebraicPoint> pts;
    try {
      pts = solve_system(Q, g, kDefaultPrec, false);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NotZeroDimensional) continue;
      throw;
    }
    for (const auto& p : pts)
      if (vanishes_at(other, p)) return false;
    return true;
  }
  // a component of V on which both partials vanish
  return false;
}

void check_assumptions(const SparsePoly& P, const SparsePoly& Q) {
  check_degree_cap(P, "numerator");
  check_degree_cap(Q, "denominator");
  if (sgn(Q.coeff(0, 0)) == 0) throw Error(ErrorKind::Assumption, "Q(0,0) = 0: denominator must not vanish at the origin");
  if (Q.degree(Var::X) <= 0 || Q.degree(Var::Y) <= 0)
    throw Error(ErrorKind::Assumption, "denominator must involve both x and y");
  if (is_binomial(Q)) throw Error(ErrorKind::Assumption, "Q is a binomial");
  if (!is_smooth(Q)) throw Error(ErrorKind::Assumption, "pole curve not smooth");
}

RealBall height(const AlgebraicPoint& p, long r, long s, long prec) {
  AlgebraicPoint q = refine_to_prec(p, prec);
  if (q.x.enclosure.contains_zero() || q.y.enclosure.contains_zero())
    throw Error(ErrorKind::DegenerateInput, "height: coordinate enclosure contains 0");
  RealBall rh = RealBall::from(frac(r, r + s), prec), sh = RealBall::from(frac(s, r + s), prec);
  return -(rh * ball_log_abs(q.x.enclosure)) - sh * ball_log_abs(q.y.enclosure);
}

int saddle_order(const SparsePoly& Q, const AlgebraicPoint& p, long r, long s) {
  (void)r;
  (void)s;
  if (!vanishes_at(psi_poly(Q), p)) return 2;
  SparsePoly Qx = Q.derivative(Var::X), Qy = Q.derivative(Var::Y);
  SparsePoly N = SparsePoly::x() * Qx, D = SparsePoly::y() * Qy;
  SparsePoly LD = along(D, Qx, Qy);
  // d^m/dt^m (N/D) = num_m / D^(m+1) along the tangent field; k − 1 is the order of vanishing
  SparsePoly num = N;
  for (int m = 0; m < 7; ++m) {
    num = D * along(num, Qx, Qy) - Rational(m + 1) * (num * LD);
    if (m == 0) continue;  // first derivative is the ψ test above
    if (!vanishes_at(num, p)) return m + 2;
  }
  throw Error(ErrorKind::CapExceeded, "saddle order exceeds the derivative cap of 8");
}

bool heights_equal(const SparsePoly& /*Q*/, const AlgebraicPoint& a, const AlgebraicPoint& b, long r, long s) {
  for (long prec = kDefaultPrec; prec <= 512; prec *= 2)
    if (!height(a, r, s, prec).overlaps(height(b, r, s, prec))) return false;
  if (points_equal(a, b)) return true;
  if (algnum_equals(a.x, algnum_conj(b.x)) && algnum_equals(a.y, algnum_conj(b.y))) return true;
  // exact: |x^r y^s|^2 is a root of the product annihilator of the values of x^r y^s
  SparsePoly w = SparsePoly::monomial(Rational(1), static_cast<int>(r), static_cast<int>(s));
  QPoly A = value_annihilator(a.f, a.g, w, SparsePoly::constant(Rational(1)));
  if (A.degree() > 24) throw Error(ErrorKind::Inconclusive, "height tie: value annihilator degree too large");
  QPoly B = product_annihilator(A);
  auto mod2 = [&](const AlgebraicPoint& p) {
    return [&, p](long prec) {
      ComplexBall v = eval_at(w, p, prec);
      return ComplexBall::from(v.abs() * v.abs());
    };
  };
  AlgebraicNumber ma = identify_root(B, mod2(a)), mb = identify_root(B, mod2(b));
  return algnum_equals(ma, mb);
}

std::vector<CriticalPoint> critical_points(const SparsePoly& Q, long r, long s, long prec) {
  std::vector<CriticalPoint> out;
  for (auto& p : solve_system(Q, critical_generator(Q, r, s), prec)) {
    AlgebraicPoint q = refine_to_prec(p, prec);
    out.push_back({q, saddle_order(Q, q, r, s), height(q, r, s, prec), 0});
  }
  std::stable_sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return a.height.to_double() > b.height.to_double();
  });
  // group exact ties; each level is represented by its first member
  std::vector<size_t> reps;
  for (size_t i = 0; i < out.size(); ++i) {
    int lvl = -1;
    for (size_t l = 0; l < reps.size() && lvl < 0; ++l)
      if (heights_equal(Q, out[reps[l]].point, out[i].point, r, s)) lvl = static_cast<int>(l);
    if (lvl < 0) {
      lvl = static_cast<int>(reps.size());
      reps.push_back(i);
    }
    out[i].level = lvl;
  }
  // levels were opened in order of decreasing height
  std::stable_sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) { return a.level < b.level; });
  return out;
}

std::vector<AlgebraicNumber> axis_points(const SparsePoly& Q, Var on) {
  QPoly p = Q.specialize(on, Rational(0));
  if (p.degree() <= 0) return {};
  return isolate_roots(squarefree(p));
}

std::vector<PuiseuxBranch> puiseux_leading(const SparsePoly& Q) {
  if (sgn(Q.coeff(0, 0)) == 0) throw Error(ErrorKind::DegenerateInput, "Puiseux census needs Q(0,0) != 0");
  std::vector<PuiseuxBranch> out;
  QPoly axis = Q.specialize(Var::Y, Rational(0));
  edge_branches(axis, 1, Rational(0), out);
  // lower boundary i = min over the support for each y-exponent j
  const int dy = Q.degree(Var::Y);
  std::vector<int> mi(static_cast<size_t>(dy) + 1, -1);
  for (const auto& [m, c] : Q.terms()) {
    auto& v = mi[static_cast<size_t>(m.second)];
    if (v < 0 || m.first < v) v = m.first;
  }
  int j = axis.degree(), i = 0;
  while (j < dy) {
    // minimal slope from (i, j), farthest point on ties
    int bj = -1;
    Rational best;
    for (int jj = j + 1; jj <= dy; ++jj) {
      if (mi[static_cast<size_t>(jj)] < 0) continue;
      Rational sl = frac(mi[static_cast<size_t>(jj)] - i, jj - j);
      if (bj < 0 || sl <= best) {
        bj = jj;
        best = sl;
      }
    }
    int di = mi[static_cast<size_t>(bj)] - i, dj = bj - j;
    int g = std::gcd(di, dj);
    int p = di / g, q = dj / g;
    edge_branches(edge_poly(Q, i, j, p, q, g), q, best, out);
    i = mi[static_cast<size_t>(bj)];
    j = bj;
  }
  return out;
}

std::vector<Rational> bad_directions(const SparsePoly& Q) {
  std::vector<Rational> out;
  for (const auto& b : puiseux_leading(Q))
    if (sgn(b.beta) > 0 && std::find(out.begin(), out.end(), b.beta) == out.end()) out.push_back(b.beta);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> bad_directions_y(const SparsePoly& Q) {
  std::vector<Rational> out;
  for (const auto& b : bad_directions(Q.swap_vars())) out.push_back(Rational(1 / b));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AlgebraicNumber> monkey_directions(const SparsePoly& Q) {
  if (is_binomial(Q)) throw Error(ErrorKind::Assumption, "Q is a binomial");
  SparsePoly psi = psi_poly(Q);
  SparsePoly Qx = Q.derivative(Var::X), Qy = Q.derivative(Var::Y);
  SparsePoly N = SparsePoly::x() * Qx, D = SparsePoly::y() * Qy;
  std::vector<AlgebraicPoint> pts = solve_system(Q, psi);
  std::vector<AlgebraicNumber> out;
  if (pts.empty()) return out;
  QPoly A = value_annihilator(Q, psi, N, D);
  if (A.degree() <= 0) return out;
  for (const auto& p : pts) {
    if (vanishes_at(Qy, p)) continue;
    AlgebraicNumber lam = identify_root(A, [&](long prec) {
      for (;; prec *= 2) {
        if (prec > kMaxPrec) throw Error(ErrorKind::PrecisionExhausted, "monkey: cannot separate Q_y from 0");
        ComplexBall d = eval_at(D, p, prec);
        if (!d.contains_zero()) return eval_at(N, p, prec) / d;
      }
    });
    if (!algnum_is_real(lam) || lam.approx().real() <= 0) continue;
    bool seen = false;
    for (const auto& o : out) seen = seen || algnum_equals(o, lam);
    if (!seen) out.push_back(lam);
  }
  std::sort(out.begin(), out.end(),
            [](const AlgebraicNumber& a, const AlgebraicNumber& b) { return a.approx().real() < b.approx().real(); });
  return out;
}

}  // namespace acsv
