#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "acsv/oracle.hpp"
#include "acsv/parse.hpp"
#include "support.hpp"

using namespace acsv;

namespace {

SparsePoly P(const char* s) { return parse_polynomial(s); }

Rational binomial(long n, long k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

// 4^n / sqrt(πn), the closed form for the central binomial coefficient
ComplexBall central_estimate(long n, long prec) {
  ComplexBall four = ComplexBall::from(Rational(4), prec);
  RealBall den = sqrt(RealBall::from(Rational(n), prec) * const_pi(prec));
  return pow(four, n) / ComplexBall::from(den);
}

}  // namespace

TEST_CASE("small coefficients") {
  CoefficientTable b = series_coefficients(P("1"), P("1-x-y"), 5, 5);
  CHECK(b.at(2, 3) == Rational(10));
  CoefficientTable d = series_coefficients(P("1"), P("1-x-y-x*y"), 3, 3);
  CHECK(d.at(1, 1) == Rational(3));
  CHECK(d.at(2, 2) == Rational(13));
  CHECK(d.at(3, 3) == Rational(63));
  CoefficientTable z = series_coefficients(P("x"), P("1-x-y"), 4, 6);
  for (long s = 0; s <= 6; ++s) CHECK(sgn(z.at(0, s)) == 0);
}

TEST_CASE("binomial table is Pascal's triangle") {
  CoefficientTable t = series_coefficients(P("1"), P("1-x-y"), 40, 30);
  for (long r = 0; r <= 40; ++r)
    for (long s = 0; s <= 30; ++s) CHECK(t.at(r, s) == binomial(r + s, s));
}

TEST_CASE("non-unit constant term") {
  // 1/(2 − x) = Σ x^r / 2^(r+1)
  CoefficientTable t = series_coefficients(P("1"), P("2-x-y"), 6, 0);
  for (long r = 0; r <= 6; ++r) {
    Rational want(1, 1);
    mpz_mul_2exp(want.get_den_mpz_t(), want.get_den_mpz_t(), static_cast<mp_bitcnt_t>(r + 1));
    CHECK(t.at(r, 0) == want);
  }
}

TEST_CASE("property: Q times the table reproduces P") {
  testsupport::Gen g(77);
  for (int trial = 0; trial < 40; ++trial) {
    SparsePoly Q = g.sparse(3, 5), Pn = g.sparse(3, 4);
    Q = Q - SparsePoly::constant(Q.coeff(0, 0)) + SparsePoly::constant(g.nonzero_rational());
    const long R = 12, S = 9;
    CoefficientTable t = series_coefficients(Pn, Q, R, S);
    for (long r = 0; r <= R; ++r) {
      for (long s = 0; s <= S; ++s) {
        Rational acc;
        for (const auto& [m, c] : Q.terms())
          if (m.first <= r && m.second <= s) acc += c * t.at(r - m.first, s - m.second);
        CHECK(acc == Pn.coeff(static_cast<int>(r), static_cast<int>(s)));
      }
    }
  }
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(series_coefficients(P("1"), P("x+y"), 3, 3), Error);
  try {
    series_coefficients(P("1"), P("1-x-y"), 999, 999);
    FAIL("cap not enforced");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
  CHECK_NOTHROW(series_coefficients(P("1"), P("1-x-y"), 999, 999, 1000000));
  CoefficientTable t = series_coefficients(P("1"), P("1-x-y"), 3, 3);
  CHECK_THROWS_AS(t.at(4, 0), Error);
}

TEST_CASE("ratio diagnostic on the central binomial coefficient") {
  CoefficientTable t = series_coefficients(P("1"), P("1-x-y"), 200, 200);
  auto rows = ratio_diagnostic(t, [](long a, long) { return central_estimate(a, 128); }, 1, 1, {50, 100, 200});
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(rows[0].ratio->mid_d().real() - 0.9975) < 1e-4);
  for (const auto& e : rows) {
    CHECK(!e.flagged);
    // 1 − 1/(8n) + O(1/n²)
    CHECK(std::abs(e.error - 1.0 / (8.0 * static_cast<double>(e.n))) < 1.0 / (e.n * e.n));
  }
}

TEST_CASE("ratio diagnostic flags zero entries") {
  CoefficientTable t = series_coefficients(P("1"), P("1-x^2-y^2"), 10, 10);
  auto rows = ratio_diagnostic(t, [](long, long) { return ComplexBall::from(Rational(1), 128); }, 1, 1, {3, 4});
  CHECK(rows[0].flagged);
  CHECK(rows[0].note == "zero coefficient");
  CHECK(!rows[1].flagged);
  auto zero = ratio_diagnostic(t, [](long, long) { return ComplexBall(128); }, 1, 1, {4});
  CHECK(zero[0].flagged);
}
