#pragma once

#include <optional>
#include <vector>

#include "acsv/solve.hpp"

namespace acsv {

// Direction r:s. Constructed reduced; the raw constructor exists so that scale
// invariance can be exercised.
struct DirectionRatio {
  long r = 1, s = 1;
  static DirectionRatio reduced(long r, long s);
  Rational lambda() const;
  Rational r_hat() const;
  Rational s_hat() const;
  std::string to_string() const { return std::to_string(r) + ":" + std::to_string(s); }
};

struct CriticalPoint {
  AlgebraicPoint point;
  int order_k = 2;
  RealBall height;
  int level = 0;  // equal heights share a level; level 0 is highest
};

struct PuiseuxBranch {
  Rational beta;                   // direction −j0/k
  int ramification_k = 1;
  AlgebraicNumber coefficient;     // one representative of the k leading coefficients
  bool multiple_root = false;      // edge polynomial root of multiplicity > 1
};

// s·x·Q_x − r·y·Q_y
SparsePoly critical_generator(const SparsePoly& Q, long r, long s);
// y Q_y^2 (Q_x + x Q_xx) + x Q_x^2 (Q_y + y Q_yy) − 2 x y Q_x Q_y Q_xy
SparsePoly psi_poly(const SparsePoly& Q);

bool is_binomial(const SparsePoly& Q);
// Throws ErrorKind::Assumption naming the violated assumption.
void check_assumptions(const SparsePoly& P, const SparsePoly& Q);
// Exact: true when Q = Q_x = Q_y = 0 has no solution.
bool is_smooth(const SparsePoly& Q);

// Exact test h(p) = 0 for a common zero p of (f, g).
bool vanishes_at(const SparsePoly& h, const AlgebraicPoint& p);

RealBall height(const AlgebraicPoint& p, long r, long s, long prec);
int saddle_order(const SparsePoly& Q, const AlgebraicPoint& p, long r, long s);
// Exact comparison of heights.
bool heights_equal(const SparsePoly& Q, const AlgebraicPoint& a, const AlgebraicPoint& b, long r, long s);

// Critical points in (C*)^2 sorted by weakly decreasing height, with exact levels.
std::vector<CriticalPoint> critical_points(const SparsePoly& Q, long r, long s, long prec = kDefaultPrec);

// Roots of Q(0, y) (on = Var::Y) or of Q(x, 0) (on = Var::X).
std::vector<AlgebraicNumber> axis_points(const SparsePoly& Q, Var on);
// Branches y(x) at x = 0 read off the Newton polygon.
std::vector<PuiseuxBranch> puiseux_leading(const SparsePoly& Q);
// Positive branch directions at x = 0 (sorted, distinct).
std::vector<Rational> bad_directions(const SparsePoly& Q);
// Direction ratios r/s at which a branch x(y) at y = 0 escapes (1/β over its directions).
std::vector<Rational> bad_directions_y(const SparsePoly& Q);
// Positive real λ at which some critical point is degenerate; sorted.
std::vector<AlgebraicNumber> monkey_directions(const SparsePoly& Q);

}  // namespace acsv
