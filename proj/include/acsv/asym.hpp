#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acsv/morse.hpp"

namespace acsv {

// K at a minimal saddle of order 2: K = P·sqrt(R) with
// R = ((r+s)/s)·(−Q_y)/(x·ψ). The branch of the root is left open here.
struct ConstantK {
  ComplexBall p_value;       // P(σ)
  AlgebraicNumber radicand;  // R, exact
  RealBall magnitude;        // |K| = |P(σ)|·sqrt(|R|)
};

// Throws DegenerateInput when P(σ) = 0 and Internal when ψ(σ) = 0.
ConstantK constant_K(const SparsePoly& P, const SparsePoly& Q, const AlgebraicPoint& sigma, long r, long s,
                     long prec = kDefaultPrec);

struct AsymptoticTerm {
  size_t saddle = 0;           // index into Classification::saddles
  ComplexBall x0, y0;
  ConstantK K;
  // P(σ)·sqrt(−R) on the principal branch; the unit factor amplitude/|K| is the
  // resolved phase. Conjugate saddles get conjugate branches.
  ComplexBall amplitude;
  ComplexBall phase;
  double polynomial_order = -0.5;
};

struct AsymptoticReport {
  SparsePoly P, Q;
  Classification analysis;
  std::vector<AsymptoticTerm> terms;
  std::vector<std::string> caveats;
  bool degenerate = false;     // some saddle in Ξ has order > 2; no constant
};

// Saddle classification plus the leading constants for direction r:s.
AsymptoticReport analyze_direction(const SparsePoly& P, const SparsePoly& Q, long r, long s,
                                   const MorseOptions& opt = {});

// Σ over Ξ of amplitude·x0^(−rn)·y0^(−sn)/sqrt(2π(rn+sn)). rn:sn must be proportional
// to the analyzed direction. Throws DegenerateInput for degenerate reports and when Ξ
// is empty.
ComplexBall leading_estimate(const AsymptoticReport& rep, long rn, long sn, long prec = kDefaultPrec);

// A point of Ã = bad ∪ bad_y ∪ monkey on (0, ∞).
struct Breakpoint {
  AlgebraicNumber value;
  std::optional<Rational> exact;  // set when the point is rational
  std::vector<std::string> sources;  // "bad", "bad_y", "monkey"
};

struct IntervalReport {
  std::optional<size_t> lower, upper;  // breakpoint indices; none means 0 resp. ∞
  DirectionRatio representative;
  std::optional<AsymptoticReport> report;
  std::optional<ErrorKind> error_kind;
  std::string error;
};

struct DirectionDecomposition {
  std::vector<Rational> bad, bad_y;
  std::vector<AlgebraicNumber> monkey;
  std::vector<Breakpoint> breakpoints;  // increasing
  std::vector<IntervalReport> intervals;
};

// Intervals of (0, ∞) ∖ Ã with one rational representative each. With analyze unset
// only the partition is computed. Errors of the inner analyses are recorded per interval.
DirectionDecomposition decompose_directions(const SparsePoly& P, const SparsePoly& Q, const MorseOptions& opt = {},
                                            bool analyze = true);

}  // namespace acsv
