#pragma once

#include <vector>

#include "acsv/ball.hpp"

namespace acsv {

constexpr long kDefaultPrec = 128;
constexpr long kMaxPrec = 8192;

// Root of a squarefree rational polynomial, isolated by a certified ball.
struct AlgebraicNumber {
  QPoly defining;
  ComplexBall enclosure;

  long prec() const { return enclosure.prec(); }
  std::complex<double> approx() const { return enclosure.mid_d(); }
};

// Krawczyk–Rump operator Φ(B) = c − P(c)/P'(c) + (1 − P'(B)/P'(c))·B(0, r).
// Throws Inconclusive when P'(c) is not certifiably nonzero.
ComplexBall kr_step(const QPoly& p, const ComplexBall& b);
ComplexBall kr_step(const GPoly& p, const ComplexBall& b);
// Φ(b) ⊂ interior(b), or b is an exact root (radius 0).
bool kr_certified(const QPoly& p, const ComplexBall& b);
bool kr_certified(const GPoly& p, const ComplexBall& b);

AlgebraicNumber algnum_from_rational(const Rational& q, long prec = kDefaultPrec);
// Enclosure radius < target. Raises PrecisionExhausted past kMaxPrec.
AlgebraicNumber refine(const AlgebraicNumber& a, const DyadicFloat& target);
AlgebraicNumber refine(const AlgebraicNumber& a, double target);
// Same root, enclosure at the requested precision with radius a few ulps of the root.
AlgebraicNumber refine_to_prec(const AlgebraicNumber& a, long prec);

// One certified, pairwise-disjoint enclosure per distinct root. Real roots get
// real-centered enclosures.
std::vector<AlgebraicNumber> isolate_roots(const QPoly& p, long prec = kDefaultPrec);
std::vector<ComplexBall> isolate_roots(const GPoly& p, long prec = kDefaultPrec);

bool algnum_is_zero(const AlgebraicNumber& a);
bool algnum_equals(const AlgebraicNumber& a, const AlgebraicNumber& b);
// Exact: true iff the root is real.
bool algnum_is_real(const AlgebraicNumber& a);
AlgebraicNumber algnum_conj(const AlgebraicNumber& a);

}  // namespace acsv
