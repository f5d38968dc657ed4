#pragma once

#include <complex>
#include <string>
#include <vector>

#include "acsv/dyadic.hpp"
#include "acsv/sparse_poly.hpp"

namespace acsv {

// Real ball [mid - rad, mid + rad]; mid at working precision, rad rounded up.
class RealBall {
 public:
  explicit RealBall(long prec = 128);
  RealBall(DyadicFloat mid, DyadicFloat rad);
  static RealBall from(const Rational& q, long prec);
  // Smallest ball (up to rounding) containing [lo, hi].
  static RealBall from_bounds(const DyadicFloat& lo, const DyadicFloat& hi);

  const DyadicFloat& mid() const { return mid_; }
  const DyadicFloat& rad() const { return rad_; }
  long prec() const { return mid_.prec(); }
  DyadicFloat lower() const;
  DyadicFloat upper() const;
  bool contains(const Rational& q) const;
  bool contains_zero() const;
  bool overlaps(const RealBall& o) const;
  // Certified comparisons: true only when the whole ball satisfies them.
  bool certainly_positive() const;
  bool certainly_negative() const;
  bool certainly_less(const RealBall& o) const;  // upper < o.lower
  double to_double() const { return mid_.to_double(); }
  double rad_double() const { return rad_.to_double(); }

  friend RealBall operator+(const RealBall& a, const RealBall& b);
  friend RealBall operator-(const RealBall& a, const RealBall& b);
  friend RealBall operator-(const RealBall& a);
  friend RealBall operator*(const RealBall& a, const RealBall& b);
  friend RealBall operator/(const RealBall& a, const RealBall& b);

 private:
  DyadicFloat mid_, rad_;
};

RealBall sqrt(const RealBall& a);
RealBall exp(const RealBall& a);
RealBall log(const RealBall& a);
RealBall const_pi(long prec);

class ComplexBall {
 public:
  explicit ComplexBall(long prec = 128);
  ComplexBall(DyadicFloat re, DyadicFloat im, DyadicFloat rad);
  static ComplexBall from(const Rational& q, long prec);
  static ComplexBall from(const GaussianRational& z, long prec);
  static ComplexBall from(double re, double im, long prec);
  static ComplexBall from(const RealBall& r);
  static ComplexBall from(const RealBall& re, const RealBall& im);

  const DyadicFloat& re() const { return re_; }
  const DyadicFloat& im() const { return im_; }
  const DyadicFloat& rad() const { return rad_; }
  long prec() const { return re_.prec(); }

  ComplexBall with_radius(const DyadicFloat& r) const;
  // Adds r to the radius.
  ComplexBall inflate(const DyadicFloat& r) const;
  // Same ball at a new precision (radius absorbs any rounding).
  ComplexBall at_prec(long prec) const;

  bool is_exact() const { return rad_.is_zero(); }
  bool is_finite() const { return !rad_.is_inf(); }
  bool contains_zero() const;
  bool contains(const GaussianRational& z) const;
  // o ⊆ this (closed), resp. o ⊂ interior(this).
  bool contains(const ComplexBall& o) const;
  bool interior_contains(const ComplexBall& o) const;
  bool overlaps(const ComplexBall& o) const;

  // Rigorous bounds on |z| over the ball, at center precision.
  DyadicFloat abs_lower() const;
  DyadicFloat abs_upper() const;
  RealBall abs() const;
  RealBall real() const;
  RealBall imag() const;
  ComplexBall conj() const;
  // Exact value of the center.
  GaussianRational center() const;
  ComplexBall center_ball() const { return ComplexBall(re_, im_, DyadicFloat(kRadPrec)); }
  std::complex<double> mid_d() const { return {re_.to_double(), im_.to_double()}; }
  double rad_d() const { return rad_.to_double(); }
  std::string to_string(int digits = 17) const;

  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a);
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
  // Throws DivisionByZero when b may contain 0.
  friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);

 private:
  DyadicFloat re_, im_, rad_;
};

ComplexBall inv(const ComplexBall& a);
ComplexBall sqr(const ComplexBall& a);
ComplexBall pow(const ComplexBall& a, long e);
// Principal square root; throws Inconclusive if the ball meets (-inf, 0].
ComplexBall sqrt(const ComplexBall& a);

ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b);
ComplexBall ball_sub(const ComplexBall& a, const ComplexBall& b);
ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b);
ComplexBall ball_div(const ComplexBall& a, const ComplexBall& b);
RealBall ball_log_abs(const ComplexBall& a);
// true ⇒ every point of a has |arg| < π/4. false is inconclusive.
bool ball_in_quarter_sector(const ComplexBall& a);

// Polynomial with coefficients converted to balls once, for repeated evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  CompiledPoly(const SparsePoly& p, long prec);
  ComplexBall eval(const ComplexBall& x, const ComplexBall& y) const;
  long prec() const { return prec_; }

 private:
  long prec_ = 128;
  // rows_[j][i]: coefficient of x^i y^j
  std::vector<std::vector<ComplexBall>> rows_;
  std::vector<std::vector<bool>> nonzero_;
};

ComplexBall poly_eval(const SparsePoly& p, const ComplexBall& x, const ComplexBall& y);
ComplexBall poly_eval(const QPoly& p, const ComplexBall& t);
ComplexBall poly_eval(const GPoly& p, const ComplexBall& t);
inline GaussianRational poly_eval(const SparsePoly& p, const GaussianRational& x, const GaussianRational& y) {
  return p.eval(x, y);
}

}  // namespace acsv
