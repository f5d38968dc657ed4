#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <string>

#include "acsv/algnum.hpp"

namespace acsv {

constexpr size_t kDefaultMaxCells = 400000;

// Exact coefficients a[r][s] of P/Q for 0 ≤ r ≤ R, 0 ≤ s ≤ S.
class CoefficientTable {
 public:
  CoefficientTable(long R, long S) : R_(R), S_(S), a_(static_cast<size_t>((R + 1) * (S + 1))) {}
  long R() const { return R_; }
  long S() const { return S_; }
  const Rational& at(long r, long s) const { return a_[index(r, s)]; }
  Rational& at(long r, long s) { return a_[index(r, s)]; }

 private:
  size_t index(long r, long s) const;
  long R_, S_;
  std::vector<Rational> a_;
};

// Q(0,0) ≠ 0 required. Throws CapExceeded when (R+1)(S+1) > max_cells.
CoefficientTable series_coefficients(const SparsePoly& P, const SparsePoly& Q, long R, long S,
                                     size_t max_cells = kDefaultMaxCells);

struct RatioEntry {
  long n = 0;                  // coefficient a[n·r][n·s]
  Rational coefficient;
  std::optional<ComplexBall> estimate;
  std::optional<ComplexBall> ratio;  // coefficient / estimate
  double error = 0;            // |ratio − 1| at the midpoint
  bool flagged = false;        // zero coefficient or estimate not separated from 0
  std::string note;
};

std::vector<RatioEntry> ratio_diagnostic(const CoefficientTable& table,
                                         const std::function<ComplexBall(long, long)>& estimate, long r, long s,
                                         const std::vector<long>& ns, long prec = kDefaultPrec);

}  // namespace acsv
