// Sylvester resultants. The determinant is taken by fraction-free elimination on
// integer-scaled matrices; bivariate resultants are assembled by evaluating the
// kept variable at small integers and interpolating. The formal Sylvester size is
// fixed beforehand so evaluation commutes with the determinant even where leading
// coefficients vanish.
#include "acsv/sparse_poly.hpp"

namespace acsv {

Rational determinant(std::vector<std::vector<Rational>> m) {
  const size_t n = m.size();
  if (n == 0) return Rational(1);
  // Scale rows to integers.
  Rational scale = 1;
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (const auto& v : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    scale *= l;
    for (size_t j = 0; j < n; ++j) {
      Rational v = m[i][j] * l;
      a[i][j] = v.get_num();
    }
  }
  // Bareiss.
  int sign = 1;
  Integer prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      size_t p = k + 1;
      while (p < n && sgn(a[p][k]) == 0) ++p;
      if (p == n) return Rational(0);
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Integer t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Rational det(a[n - 1][n - 1]);
  if (sign < 0) det = -det;
  return Rational(det / scale);
}

namespace {

// Sylvester matrix of p (degree m) and q (degree n) with the formal degrees given;
// coefficient vectors low to high.
std::vector<std::vector<Rational>> sylvester(const std::vector<Rational>& p, const std::vector<Rational>& q) {
  const int m = static_cast<int>(p.size()) - 1, n = static_cast<int>(q.size()) - 1;
  const int N = m + n;
  std::vector<std::vector<Rational>> s(static_cast<size_t>(N), std::vector<Rational>(static_cast<size_t>(N)));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s[static_cast<size_t>(r)][static_cast<size_t>(r + k)] = p[static_cast<size_t>(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s[static_cast<size_t>(n + r)][static_cast<size_t>(r + k)] = q[static_cast<size_t>(n - k)];
  return s;
}

Rational eval_at(const QPoly& p, const Rational& a) { return p.eval(a); }

}  // namespace

QPoly interpolate(const std::vector<Rational>& xs, std::vector<Rational> ys) {
  const size_t n = xs.size();
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
  QPoly result;
  for (size_t k = n; k-- > 0;) {
    result = result * QPoly{Rational(-xs[k]), Rational(1)} + QPoly::constant(ys[k]);
  }
  return result;
}

Rational interpolation_node(size_t i) {
  // 0, 1, -1, 2, -2, ...
  long k = static_cast<long>((i + 1) / 2);
  return Rational(i % 2 == 1 ? k : -k);
}

Rational resultant(const QPoly& p, const QPoly& q) {
  if (p.is_zero() || q.is_zero()) return Rational(0);
  if (p.degree() == 0 && q.degree() == 0) throw Error(ErrorKind::DegenerateInput, "resultant of two constants");
  return determinant(sylvester(p.coeffs(), q.coeffs()));
}

QPoly resultant_uni(const SparsePoly& p, const SparsePoly& q, Var eliminate) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorKind::DegenerateInput, "resultant of a zero polynomial");
  const Var keep = eliminate == Var::X ? Var::Y : Var::X;
  const int pe = p.degree(eliminate), qe = q.degree(eliminate);
  if (pe == 0 && qe == 0)
    throw Error(ErrorKind::DegenerateInput, "both inputs are constant in the eliminated variable");
  if (pe == 0) {
    QPoly base = p.to_uni(keep), r = QPoly::constant(Rational(1));
    for (int i = 0; i < qe; ++i) r = r * base;
    return r;
  }
  if (qe == 0) {
    QPoly base = q.to_uni(keep), r = QPoly::constant(Rational(1));
    for (int i = 0; i < pe; ++i) r = r * base;
    return r;
  }
  const auto pc = p.coeffs_in(eliminate), qc = q.coeffs_in(eliminate);
  const int bound = pe * std::max(q.degree(keep), 0) + qe * std::max(p.degree(keep), 0);
  std::vector<Rational> xs, ys;
  for (size_t i = 0; i <= static_cast<size_t>(bound); ++i) {
    Rational a = interpolation_node(i);
    std::vector<Rational> pv, qv;
    for (const auto& c : pc) pv.push_back(eval_at(c, a));
    for (const auto& c : qc) qv.push_back(eval_at(c, a));
    xs.push_back(a);
    ys.push_back(determinant(sylvester(pv, qv)));
  }
  return interpolate(xs, ys);
}

SparsePoly poly_resultant(const SparsePoly& p, const SparsePoly& q, Var eliminate) {
  return SparsePoly::from_uni(resultant_uni(p, q, eliminate), eliminate == Var::X ? Var::Y : Var::X);
}

}  // namespace acsv
