#include "acsv/oracle.hpp"

#include <cmath>

namespace acsv {

size_t CoefficientTable::index(long r, long s) const {
  if (r < 0 || s < 0 || r > R_ || s > S_)
    throw Error(ErrorKind::DegenerateInput, "coefficient index (" + std::to_string(r) + ", " + std::to_string(s) +
                                                ") outside the table");
  return static_cast<size_t>(r * (S_ + 1) + s);
}

CoefficientTable series_coefficients(const SparsePoly& P, const SparsePoly& Q, long R, long S, size_t max_cells) {
  if (R < 0 || S < 0) throw Error(ErrorKind::DegenerateInput, "negative table bounds");
  const Rational q00 = Q.coeff(0, 0);
  if (sgn(q00) == 0) throw Error(ErrorKind::Assumption, "Q(0,0) = 0: no power series expansion");
  const double cells = static_cast<double>(R + 1) * static_cast<double>(S + 1);
  if (cells > static_cast<double>(max_cells))
    throw Error(ErrorKind::CapExceeded, "oracle table of " + std::to_string(static_cast<long long>(cells)) +
                                            " cells exceeds the cap of " + std::to_string(max_cells));
  CoefficientTable t(R, S);
  const Rational inv_q00 = 1 / q00;
  std::vector<std::pair<std::pair<int, int>, Rational>> rest;
  for (const auto& [m, c] : Q.terms())
    if (m != std::make_pair(0, 0)) rest.push_back({m, c});
  for (long r = 0; r <= R; ++r) {
    for (long s = 0; s <= S; ++s) {
      Rational acc = P.coeff(static_cast<int>(r), static_cast<int>(s));
      for (const auto& [m, c] : rest)
        if (m.first <= r && m.second <= s) acc -= c * t.at(r - m.first, s - m.second);
      t.at(r, s) = acc * inv_q00;
    }
  }
  return t;
}

std::vector<RatioEntry> ratio_diagnostic(const CoefficientTable& table,
                                         const std::function<ComplexBall(long, long)>& estimate, long r, long s,
                                         const std::vector<long>& ns, long prec) {
  std::vector<RatioEntry> out;
  for (long n : ns) {
    RatioEntry e;
    e.n = n;
    e.coefficient = table.at(n * r, n * s);
    if (sgn(e.coefficient) == 0) {
      e.flagged = true;
      e.note = "zero coefficient";
      out.push_back(e);
      continue;
    }
    e.estimate = estimate(n * r, n * s);
    if (e.estimate->contains_zero()) {
      e.flagged = true;
      e.note = "estimate not separated from zero";
      out.push_back(e);
      continue;
    }
    e.ratio = ComplexBall::from(e.coefficient, prec) / *e.estimate;
    e.error = std::abs(e.ratio->mid_d() - std::complex<double>(1.0, 0.0));
    out.push_back(e);
  }
  return out;
}

}  // namespace acsv
