#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "acsv/error.hpp"
#include "acsv/rational.hpp"

namespace acsv {

// Dense univariate polynomial, coefficients low to high, no trailing zeros.
// T is Rational or GaussianRational.
template <class T>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<T> c) : c_(std::move(c)) { trim(); }
  UniPoly(std::initializer_list<T> c) : c_(c) { trim(); }

  static UniPoly constant(const T& v) { return UniPoly(std::vector<T>{v}); }
  static UniPoly monomial(const T& v, int d) {
    std::vector<T> c(static_cast<size_t>(d) + 1);
    c[static_cast<size_t>(d)] = v;
    return UniPoly(std::move(c));
  }
  static UniPoly t() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : T(); }
  const T& leading() const { return c_.back(); }

  T eval(const T& x) const {
    T acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return UniPoly(std::move(d));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
    return UniPoly(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a) {
    std::vector<T> c(a.c_);
    for (auto& v : c) v = T() - v;
    return UniPoly(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == T()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(c));
  }
  friend UniPoly operator*(const T& s, const UniPoly& a) { return constant(s) * a; }

  // Euclidean division over the coefficient field.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw Error(ErrorKind::DegenerateInput, "polynomial division by zero");
    std::vector<T> r(c_);
    int n = degree(), m = d.degree();
    if (n < m) return {UniPoly(), *this};
    std::vector<T> q(static_cast<size_t>(n - m) + 1);
    T inv = T(1) / d.leading();
    for (int k = n; k >= m; --k) {
      T f = r[static_cast<size_t>(k)] * inv;
      q[static_cast<size_t>(k - m)] = f;
      if (f == T()) continue;
      for (int j = 0; j <= m; ++j) r[static_cast<size_t>(k - m + j)] -= f * d.c_[static_cast<size_t>(j)];
    }
    r.resize(static_cast<size_t>(m));
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
  }

  UniPoly monic() const {
    if (is_zero()) return {};
    T inv = T(1) / leading();
    std::vector<T> c(c_);
    for (auto& v : c) v = v * inv;
    return UniPoly(std::move(c));
  }

  // Removes the factor t^m; returns m through `removed`.
  UniPoly strip_zero_roots(int* removed = nullptr) const {
    size_t k = 0;
    while (k < c_.size() && c_[k] == T()) ++k;
    if (removed) *removed = static_cast<int>(k);
    if (k == c_.size()) return {};
    return UniPoly(std::vector<T>(c_.begin() + static_cast<long>(k), c_.end()));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T()) c_.pop_back();
  }
  std::vector<T> c_;
};

using QPoly = UniPoly<Rational>;
using GPoly = UniPoly<GaussianRational>;

// Content-free integer polynomial with positive leading coefficient (same roots).
QPoly primitive_part(const QPoly& p);
// Monic gcd over Q (primitive pseudo-remainder sequence internally).
QPoly gcd(const QPoly& a, const QPoly& b);
GPoly gcd(const GPoly& a, const GPoly& b);
// p / gcd(p, p'), primitive normalization.
QPoly squarefree(const QPoly& p);
GPoly squarefree(const GPoly& p);
// Exact division; throws Internal when the remainder is nonzero.
QPoly exact_div(const QPoly& a, const QPoly& b);

GPoly to_gaussian(const QPoly& p);
std::string to_string(const QPoly& p, const char* var = "t");

}  // namespace acsv
