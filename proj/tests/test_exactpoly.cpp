#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "acsv/ball.hpp"
#include "acsv/sparse_poly.hpp"
#include "support.hpp"

using namespace acsv;

namespace {

SparsePoly X = SparsePoly::x(), Y = SparsePoly::y();
SparsePoly C(long v) { return SparsePoly::constant(Rational(v)); }

SparsePoly q_eg() { return C(1) - C(3) * Y + C(2) * Y.pow(2) - C(6) * X * Y.pow(4) + X.pow(3) * Y.pow(5); }

// Determinant by cofactor expansion: slow, independent of the elimination code.
Rational cofactor_det(const std::vector<std::vector<Rational>>& m) {
  const size_t n = m.size();
  if (n == 1) return m[0][0];
  Rational acc = 0;
  for (size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Rational>> sub;
    for (size_t r = 1; r < n; ++r) {
      std::vector<Rational> row;
      for (size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(row);
    }
    Rational t = m[0][c] * cofactor_det(sub);
    acc += (c % 2 == 0) ? t : Rational(-t);
  }
  return acc;
}

}  // namespace

TEST_CASE("poly_eval exact and ball") {
  SparsePoly q = q_eg();
  // x := 0 leaves 1 - 3y + 2y^2
  QPoly at0 = q.specialize(Var::Y, Rational(0));
  CHECK(at0 == QPoly{Rational(1), Rational(-3), Rational(2)});
  SparsePoly lin = C(1) - X - Y;
  CHECK(lin.eval(Rational(1, 2), Rational(1, 2)) == 0);

  DyadicFloat r(0.01, 64);
  ComplexBall h = ComplexBall::from(Rational(1, 2), 128).with_radius(r);
  ComplexBall v = poly_eval(lin, h, h);
  CHECK(v.contains_zero());
  CHECK(v.rad_d() <= 0.02 * (1 + 1e-15));
}

TEST_CASE("poly_derivative") {
  SparsePoly p = C(1) - C(3) * Y + C(2) * Y.pow(2);
  CHECK(p.derivative(Var::Y) == C(-3) + C(4) * Y);
  CHECK((C(1) - X - Y).derivative(Var::X) == C(-1));
  CHECK((C(1) - X - Y - X * Y).derivative(Var::X).derivative(Var::Y) == C(-1));
  CHECK(q_eg().derivative(Var::Y, 5) == C(120) * X.pow(3));
  CHECK(q_eg().derivative(Var::X, 4).is_zero());
}

TEST_CASE("poly_resultant examples") {
  QPoly a{Rational(-2), Rational(0), Rational(1)}, b{Rational(-3), Rational(0), Rational(1)};
  CHECK(resultant(a, b) == 1);
  CHECK(abs(resultant(QPoly{Rational(-1), Rational(1)}, QPoly{Rational(-2), Rational(1)})) == 1);

  QPoly r = resultant_uni(C(1) - X - Y, Y - X, Var::Y);
  QPoly expect{Rational(1), Rational(-2)};
  CHECK((r == expect || r == -expect));

  SparsePoly rs = poly_resultant(C(1) - X - Y, Y - X, Var::Y);
  CHECK(rs.degree(Var::Y) == 0);
  CHECK(rs.degree(Var::X) == 1);

  CHECK_THROWS_AS(resultant_uni(C(1) + X, C(2) + X, Var::Y), Error);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  testsupport::Gen g(11);
  for (int trial = 0; trial < 60; ++trial) {
    size_t n = static_cast<size_t>(g.integer(1, 6));
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (auto& row : m)
      for (auto& v : row) v = g.coin() ? g.rational() : Rational(0);
    CHECK(determinant(m) == cofactor_det(m));
  }
}

TEST_CASE("poly_squarefree examples") {
  QPoly t1{Rational(-1), Rational(1)}, t2{Rational(2), Rational(1)};
  CHECK(squarefree(t1 * t1 * t2) == t1 * t2);
  QPoly s2{Rational(-2), Rational(0), Rational(1)};
  CHECK(squarefree(s2) == s2);
  CHECK(squarefree(QPoly{Rational(0), Rational(0), Rational(0), Rational(1)}) == QPoly{Rational(0), Rational(1)});
  SparsePoly sp = poly_squarefree(SparsePoly::from_uni(t1 * t1 * t2, Var::Y));
  CHECK(sp == SparsePoly::from_uni(t1 * t2, Var::Y));
}

TEST_CASE("property: product rule") {
  testsupport::Gen g(1);
  for (int trial = 0; trial < 300; ++trial) {
    SparsePoly p = g.sparse(6, 5), q = g.sparse(6, 5);
    for (Var v : {Var::X, Var::Y}) {
      CHECK((p * q).derivative(v) == p * q.derivative(v) + q * p.derivative(v));
    }
  }
}

TEST_CASE("property: resultant vanishes exactly at common-root abscissae") {
  testsupport::Gen g(2);
  int zeros = 0;
  for (int trial = 0; trial < 150; ++trial) {
    SparsePoly common = g.coin() ? g.sparse(2, 3) : SparsePoly::constant(Rational(1));
    SparsePoly p = g.sparse(3, 4) * common, q = g.sparse(3, 4) * common;
    if (p.degree(Var::Y) <= 0 || q.degree(Var::Y) <= 0) continue;
    QPoly r = resultant_uni(p, q, Var::Y);
    for (int k = 0; k < 3; ++k) {
      Rational x0 = g.rational(4, 3);
      QPoly a = p.specialize(Var::Y, x0), b = q.specialize(Var::Y, x0);
      // the specialization must keep a leading coefficient for the equivalence
      if (a.degree() != p.degree(Var::Y) && b.degree() != q.degree(Var::Y)) continue;
      bool common_root = !a.is_zero() && !b.is_zero() ? gcd(a, b).degree() > 0 : true;
      bool vanishes = sgn(r.eval(x0)) == 0;
      CHECK(common_root == vanishes);
      zeros += vanishes;
    }
  }
  CHECK(zeros > 0);
}

TEST_CASE("property: squarefree output is squarefree") {
  testsupport::Gen g(3);
  for (int trial = 0; trial < 200; ++trial) {
    QPoly a = g.uni(static_cast<int>(g.integer(1, 3))), b = g.uni(static_cast<int>(g.integer(0, 2)));
    QPoly p = a * a * b * (g.coin() ? a : QPoly::constant(Rational(1)));
    QPoly s = squarefree(p);
    CHECK(gcd(s, s.derivative()).degree() == 0);
    // s divides p
    CHECK(p.divmod(s).second.is_zero());
  }
}

TEST_CASE("simplest rational between bounds") {
  CHECK(simplest_between(Rational(0), Rational(0), true) == 1);
  CHECK(simplest_between(Rational(1, 2), Rational(2)) == 1);
  CHECK(simplest_between(Rational(2), Rational(0), true) == 3);
  CHECK(simplest_between(Rational(0), Rational(1, 2)) == Rational(1, 3));
  CHECK(simplest_between(Rational(1, 2), Rational(3, 5)) == Rational(4, 7));
  testsupport::Gen g(4);
  for (int k = 0; k < 200; ++k) {
    Rational a = abs(g.rational(20, 9)), b = abs(g.rational(20, 9));
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    Rational s = simplest_between(a, b);
    CHECK(a < s);
    CHECK(s < b);
    // nothing with a smaller denominator fits strictly inside
    for (long d = 1; d < s.get_den().get_si(); ++d) {
      Integer lo = a.get_num() * d / a.get_den();
      Rational cand(Integer(lo + 1), Integer(d));
      cand.canonicalize();
      CHECK(!(cand < b));
    }
  }
}

TEST_CASE("canonical printing") {
  CHECK(q_eg().to_string() == "x^3*y^5 - 6*x*y^4 + 2*y^2 - 3*y + 1");
  CHECK((C(1) - X * Y - Y * X).to_string() == "-2*x*y + 1");
  CHECK(SparsePoly().to_string() == "0");
  CHECK((SparsePoly::monomial(Rational(-3, 5), 1, 0)).to_string() == "-3/5*x");
}
