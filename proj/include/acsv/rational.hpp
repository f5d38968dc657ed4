#pragma once

#include <gmpxx.h>

#include <string>

namespace acsv {

using Integer = mpz_class;
using Rational = mpq_class;  // gmpxx keeps these canonical after every operation

struct GaussianRational {
  Rational re, im;

  GaussianRational() = default;
  GaussianRational(const Rational& r) : re(r) {}
  GaussianRational(const Rational& r, const Rational& i) : re(r), im(i) {}
  GaussianRational(long r) : re(r) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm() const { return Rational(re * re + im * im); }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {Rational(a.re + b.re), Rational(a.im + b.im)};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {Rational(a.re - b.re), Rational(a.im - b.im)};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re), Rational(-a.im)}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
  }
  // Throws DegenerateInput on a zero divisor.
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
  GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
  GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
};

std::string to_string(const Rational& q);
std::string to_string(const GaussianRational& z);

// Simplest rational (smallest denominator, then numerator) strictly between lo and hi.
// hi may be "infinite" when hi_inf is set.
Rational simplest_between(const Rational& lo, const Rational& hi, bool hi_inf = false);

}  // namespace acsv
