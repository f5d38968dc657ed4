#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "acsv/asym.hpp"
#include "acsv/oracle.hpp"
#include "acsv/parse.hpp"
#include "support.hpp"

using namespace acsv;

namespace {

SparsePoly P(const char* s) { return parse_polynomial(s); }

const char* kEg = "1 - 3*y + 2*y^2 - 6*x*y^4 + x^3*y^5";

double rel_error(const Rational& a, const ComplexBall& est) {
  return std::abs((ComplexBall::from(a, 128) / est).mid_d() - std::complex<double>(1, 0));
}

}  // namespace

TEST_CASE("constant K for the binomial saddle") {
  SparsePoly Q = P("1-x-y");
  auto cps = critical_points(Q, 1, 1);
  REQUIRE(cps.size() == 1);
  ConstantK k = constant_K(P("1"), Q, cps[0].point, 1, 1);
  CHECK(algnum_equals(k.radicand, algnum_from_rational(Rational(-4))));
  CHECK(k.magnitude.contains(Rational(2)));
  CHECK(k.magnitude.rad_double() < 1e-30);
}

TEST_CASE("constant K for Delannoy matches the closed form") {
  SparsePoly Q = P("1-x-y-x*y");
  auto cps = critical_points(Q, 1, 1);
  const CriticalPoint* pos = nullptr;
  for (const auto& c : cps)
    if (c.point.x.approx().real() > 0) pos = &c;
  REQUIRE(pos);
  ConstantK k = constant_K(P("1"), Q, pos->point, 1, 1);
  CHECK(algnum_is_real(k.radicand));
  // |K| = 2^(-1/4)·(1 + √2)
  double want = std::pow(2.0, -0.25) * (1 + std::sqrt(2.0));
  CHECK(std::abs(k.magnitude.to_double() - want) < 1e-12);
}

TEST_CASE("constant K rejects a vanishing numerator") {
  SparsePoly Q = P("1-x-y");
  auto cps = critical_points(Q, 1, 1);
  try {
    constant_K(P("1-2*x"), Q, cps[0].point, 1, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInput);
    CHECK(std::string(e.what()).find("leading term vanishes") != std::string::npos);
  }
}

TEST_CASE("binomial estimate") {
  AsymptoticReport rep = analyze_direction(P("1"), P("1-x-y"), 1, 1);
  REQUIRE(rep.terms.size() == 1);
  CHECK(rep.caveats.empty());
  CHECK(rep.terms[0].phase.contains(GaussianRational{Rational(1), Rational(0)}));
  ComplexBall e = leading_estimate(rep, 50, 50);
  CHECK(std::abs(e.mid_d().real() / 1.0115e29 - 1) < 1e-4);
  CHECK(e.imag().contains_zero());
  CoefficientTable t = series_coefficients(P("1"), P("1-x-y"), 200, 200);
  for (long n : {50L, 100L, 200L}) {
    double err = rel_error(t.at(n, n), leading_estimate(rep, n, n));
    CHECK(std::abs(err - 1.0 / (8.0 * static_cast<double>(n))) < 1.0 / static_cast<double>(n * n));
  }
  CHECK_THROWS_AS(leading_estimate(rep, 2, 1), Error);
  CHECK_THROWS_AS(leading_estimate(rep, 0, 0), Error);
}

TEST_CASE("Delannoy and off-diagonal estimates converge to the exact coefficients") {
  struct Case {
    const char *num, *den;
    long r, s;
  };
  for (Case c : {Case{"1", "1-x-y-x*y", 1, 1}, Case{"1", "1-x-y", 2, 1}, Case{"1+x", "1-x-y-x*y", 1, 2}}) {
    CAPTURE(c.den);
    AsymptoticReport rep = analyze_direction(P(c.num), P(c.den), c.r, c.s);
    REQUIRE(rep.terms.size() == 1);
    CoefficientTable t = series_coefficients(P(c.num), P(c.den), 100 * c.r, 100 * c.s);
    double e50 = rel_error(t.at(50 * c.r, 50 * c.s), leading_estimate(rep, 50 * c.r, 50 * c.s));
    double e100 = rel_error(t.at(100 * c.r, 100 * c.s), leading_estimate(rep, 100 * c.r, 100 * c.s));
    CHECK(e50 < 0.5 / 50);
    CHECK(e100 < e50);
    CHECK(std::abs(e100 - e50 / 2) < 0.3 * e50 / 2);
  }
}

TEST_CASE("direction homogeneity") {
  AsymptoticReport a = analyze_direction(P("1"), P("1-x-y-x*y"), 1, 1), b = analyze_direction(P("1"), P("1-x-y-x*y"), 3, 3);
  REQUIRE(a.terms.size() == b.terms.size());
  CHECK(a.analysis.xi == b.analysis.xi);
  CHECK(leading_estimate(a, 40, 40).overlaps(leading_estimate(b, 40, 40)));
}

TEST_CASE("conjugate saddles give a real estimate") {
  AsymptoticReport rep = analyze_direction(P("1"), P(kEg), 1, 3);
  REQUIRE(rep.terms.size() == 2);
  const auto& t0 = rep.terms[0];
  const auto& t1 = rep.terms[1];
  CHECK(t0.x0.overlaps(t1.x0.conj()));
  CHECK(t0.phase.overlaps(t1.phase.conj()));
  for (long n : {20L, 41L, 60L}) {
    ComplexBall e = leading_estimate(rep, n, 3 * n);
    CHECK(e.imag().contains_zero());
  }
  CoefficientTable t = series_coefficients(P("1"), P(kEg), 100, 300);
  CHECK(rel_error(t.at(100, 300), leading_estimate(rep, 100, 300)) < 0.01);
}

TEST_CASE("no minimal saddle and degenerate reports") {
  // every saddle of the example at 1:1 is an x-saddle; the diagonal coefficients vanish
  AsymptoticReport rep = analyze_direction(P("1"), P(kEg), 1, 1);
  CHECK(rep.terms.empty());
  CHECK(!rep.caveats.empty());
  CHECK_THROWS_AS(leading_estimate(rep, 10, 10), Error);
  CoefficientTable t = series_coefficients(P("1"), P(kEg), 60, 60);
  for (long n = 1; n <= 60; ++n) CHECK(sgn(t.at(n, n)) == 0);

  AsymptoticReport deg = analyze_direction(P("1"), P("1-x-y"), 1, 1);
  deg.degenerate = true;
  try {
    leading_estimate(deg, 5, 5);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInput);
  }
}

TEST_CASE("bad directions are rejected") {
  try {
    analyze_direction(P("1"), P(kEg), 2, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Assumption);
  }
}

TEST_CASE("decomposition of the binomial denominator") {
  DirectionDecomposition d = decompose_directions(P("1"), P("1-x-y"));
  CHECK(d.bad.empty());
  CHECK(d.monkey.empty());
  CHECK(d.breakpoints.empty());
  REQUIRE(d.intervals.size() == 1);
  CHECK(!d.intervals[0].lower);
  CHECK(!d.intervals[0].upper);
  CHECK(d.intervals[0].representative.r == 1);
  CHECK(d.intervals[0].representative.s == 1);
  REQUIRE(d.intervals[0].report);
  CHECK(d.intervals[0].report->terms.size() == 1);
}

TEST_CASE("decomposition of the example") {
  DirectionDecomposition d = decompose_directions(P("1"), P(kEg), {}, false);
  CHECK(d.bad == std::vector<Rational>{Rational(1, 2), Rational(2)});
  auto has = [&](const Rational& v) {
    for (const auto& b : d.breakpoints)
      if (b.exact && *b.exact == v) return true;
    return false;
  };
  CHECK(has(Rational(1, 2)));
  CHECK(has(Rational(2)));
  CHECK(d.breakpoints.size() >= 2);
  CHECK(d.intervals.size() == d.breakpoints.size() + 1);
  for (size_t i = 0; i + 1 < d.breakpoints.size(); ++i)
    CHECK(d.breakpoints[i].value.enclosure.real().certainly_less(d.breakpoints[i + 1].value.enclosure.real()));
  for (size_t i = 0; i < d.intervals.size(); ++i) {
    const IntervalReport& iv = d.intervals[i];
    CHECK((i == 0) == !iv.lower);
    CHECK((i + 1 == d.intervals.size()) == !iv.upper);
    Rational lam = iv.representative.lambda();
    CHECK(sgn(lam) > 0);
    if (iv.lower) CHECK(d.breakpoints[*iv.lower].value.enclosure.real().certainly_less(RealBall::from(lam, 128)));
    if (iv.upper) CHECK(RealBall::from(lam, 128).certainly_less(d.breakpoints[*iv.upper].value.enclosure.real()));
  }
}

TEST_CASE("binomial denominators are rejected") {
  try {
    decompose_directions(P("1"), P("1-x*y"), {}, false);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Assumption);
  }
}

TEST_CASE("property: random positive curves match the oracle") {
  testsupport::Gen g(5);
  for (int trial = 0; trial < 5; ++trial) {
    Rational a(g.integer(1, 4), g.integer(1, 4)), b(g.integer(1, 4), g.integer(1, 4)), c(g.integer(1, 4), g.integer(1, 4));
    a.canonicalize();
    b.canonicalize();
    c.canonicalize();
    SparsePoly Q = SparsePoly::constant(Rational(1)) - SparsePoly::monomial(a, 1, 0) - SparsePoly::monomial(b, 0, 1) -
                   SparsePoly::monomial(c, 1, 1);
    CAPTURE(Q.to_string());
    AsymptoticReport rep = analyze_direction(P("1"), Q, 1, 1);
    REQUIRE(rep.terms.size() == 1);
    CHECK(std::abs(rep.terms[0].phase.mid_d() - std::complex<double>(1, 0)) < 1e-20);
    CoefficientTable t = series_coefficients(P("1"), Q, 120, 120);
    double e60 = rel_error(t.at(60, 60), leading_estimate(rep, 60, 60));
    double e120 = rel_error(t.at(120, 120), leading_estimate(rep, 120, 120));
    CHECK(e120 < e60);
    CHECK(e60 < 0.05);
  }
}
