#pragma once

#include <mpfr.h>

#include <string>

#include "acsv/rational.hpp"

namespace acsv {

// Binary floating-point number m·2^e with |m| < 2^prec. Thin owner of an mpfr_t;
// every operation states its rounding direction explicitly.
class DyadicFloat {
 public:
  explicit DyadicFloat(long prec = 128);
  DyadicFloat(double v, long prec);
  DyadicFloat(const DyadicFloat& o);
  DyadicFloat(DyadicFloat&& o) noexcept;
  DyadicFloat& operator=(const DyadicFloat& o);
  DyadicFloat& operator=(DyadicFloat&& o) noexcept;
  ~DyadicFloat();

  // Rounded in direction rnd; returns mpfr's ternary flag (0 when exact).
  static DyadicFloat from_rational(const Rational& q, long prec, mpfr_rnd_t rnd, int* ternary = nullptr);
  static DyadicFloat infinity(long prec);

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  long prec() const { return mpfr_get_prec(v_); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Exact conversion; throws on inf/nan.
  Rational to_rational() const;
  Integer mantissa() const;
  long exponent() const;

  // Shortest decimal string with `digits` significant digits.
  std::string to_string(int digits = 17) const;

  friend int cmp(const DyadicFloat& a, const DyadicFloat& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const DyadicFloat& a, const DyadicFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator<=(const DyadicFloat& a, const DyadicFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator==(const DyadicFloat& a, const DyadicFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

// Precision used for radii; radii are always rounded upward.
constexpr long kRadPrec = 64;

}  // namespace acsv
