#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "acsv/unipoly.hpp"

namespace acsv {

enum class Var { X, Y };

constexpr int kMaxTotalDegree = 64;

// Bivariate polynomial over Q stored by support: (i, j) ↦ coefficient of x^i y^j.
class SparsePoly {
 public:
  using Monomial = std::pair<int, int>;
  using Terms = std::map<Monomial, Rational>;

  SparsePoly() = default;
  explicit SparsePoly(const Terms& t);
  static SparsePoly constant(const Rational& c);
  static SparsePoly x();
  static SparsePoly y();
  static SparsePoly monomial(const Rational& c, int i, int j);
  // Univariate embeddings: p(t) with t placed in the given variable.
  static SparsePoly from_uni(const QPoly& p, Var v);

  const Terms& terms() const { return terms_; }
  Rational coeff(int i, int j) const;
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  size_t term_count() const { return terms_.size(); }
  int degree(Var v) const;
  int total_degree() const;
  // Lowest exponent of v over the support.
  int low_degree(Var v) const;

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }
  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator-(const SparsePoly& a);
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const Rational& c, const SparsePoly& a);
  SparsePoly pow(int e) const;

  SparsePoly derivative(Var v, int order = 1) const;
  // Q(y, x).
  SparsePoly swap_vars() const;
  // Divides by x^a y^b where a, b are the low degrees (removes axis factors).
  SparsePoly strip_monomial_factor() const;

  Rational eval(const Rational& x, const Rational& y) const;
  GaussianRational eval(const GaussianRational& x, const GaussianRational& y) const;

  // Coefficients of v^k (k = 0..deg_v) as polynomials in the other variable.
  std::vector<QPoly> coeffs_in(Var v) const;
  // Substitutes the other variable := value, giving a polynomial in v.
  QPoly specialize(Var keep, const Rational& value) const;
  // For a polynomial involving only v: its univariate form.
  QPoly to_uni(Var v) const;

  // Canonical text: graded by total degree descending, x-exponent descending within a degree.
  std::string to_string() const;

 private:
  void add_term(int i, int j, const Rational& c);
  Terms terms_;
};

// Resultant w.r.t. `eliminate`; univariate in the other variable (returned in that slot).
SparsePoly poly_resultant(const SparsePoly& p, const SparsePoly& q, Var eliminate);
// Same, as a univariate polynomial in the kept variable.
QPoly resultant_uni(const SparsePoly& p, const SparsePoly& q, Var eliminate);
// Resultant of two univariate polynomials.
Rational resultant(const QPoly& p, const QPoly& q);
// Squarefree part of a univariate SparsePoly (either variable).
SparsePoly poly_squarefree(const SparsePoly& p);

// Newton interpolation through (xs[i], ys[i]); nodes 0, 1, -1, 2, -2, ...
QPoly interpolate(const std::vector<Rational>& xs, std::vector<Rational> ys);
Rational interpolation_node(size_t i);

// Determinant by fraction-free elimination (exact).
Rational determinant(std::vector<std::vector<Rational>> m);

// Throws DegenerateInput when total degree exceeds kMaxTotalDegree.
void check_degree_cap(const SparsePoly& p, const char* name);

}  // namespace acsv
