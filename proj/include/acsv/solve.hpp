#pragma once

#include <vector>

#include "acsv/algnum.hpp"

namespace acsv {

// Common zero of (f, g); the box x.enclosure × y.enclosure holds exactly one.
struct AlgebraicPoint {
  AlgebraicNumber x, y;
  SparsePoly f, g;

  long prec() const { return std::min(x.prec(), y.prec()); }
};

// All common zeros, each as a certified poly-ball. With torus_only, points with a
// zero coordinate are dropped. Throws NotZeroDimensional for curves of solutions.
std::vector<AlgebraicPoint> solve_system(const SparsePoly& f, const SparsePoly& g, long prec = kDefaultPrec,
                                         bool torus_only = true);

// Krawczyk test on the box X × Y: true ⇒ exactly one common zero in the box.
bool krawczyk2(const SparsePoly& f, const SparsePoly& g, const ComplexBall& X, const ComplexBall& Y);

AlgebraicPoint refine_to_prec(const AlgebraicPoint& p, long prec);
bool points_equal(const AlgebraicPoint& a, const AlgebraicPoint& b);

}  // namespace acsv
