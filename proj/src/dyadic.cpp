#include "acsv/dyadic.hpp"

#include <cstdio>
#include <vector>

#include "acsv/error.hpp"

namespace acsv {

namespace {
struct ExponentRange {
  ExponentRange() {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
  }
};
const ExponentRange kWideExponents;
}  // namespace

DyadicFloat::DyadicFloat(long prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

DyadicFloat::DyadicFloat(double v, long prec) {
  mpfr_init2(v_, prec < 53 ? 53 : prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

DyadicFloat::DyadicFloat(const DyadicFloat& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

DyadicFloat::DyadicFloat(DyadicFloat&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

DyadicFloat& DyadicFloat::operator=(const DyadicFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

DyadicFloat& DyadicFloat::operator=(DyadicFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

DyadicFloat::~DyadicFloat() { mpfr_clear(v_); }

DyadicFloat DyadicFloat::from_rational(const Rational& q, long prec, mpfr_rnd_t rnd, int* ternary) {
  DyadicFloat d(prec);
  int t = mpfr_set_q(d.v_, q.get_mpq_t(), rnd);
  if (ternary) *ternary = t;
  return d;
}

DyadicFloat DyadicFloat::infinity(long prec) {
  DyadicFloat d(prec);
  mpfr_set_inf(d.v_, 1);
  return d;
}

Rational DyadicFloat::to_rational() const {
  if (!mpfr_number_p(v_)) throw Error(ErrorKind::Internal, "to_rational of non-finite value");
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  Rational q(m);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

Integer DyadicFloat::mantissa() const {
  Integer m;
  if (mpfr_number_p(v_)) mpfr_get_z_2exp(m.get_mpz_t(), v_);
  return m;
}

long DyadicFloat::exponent() const {
  if (!mpfr_number_p(v_) || mpfr_zero_p(v_)) return 0;
  Integer m;
  return mpfr_get_z_2exp(m.get_mpz_t(), v_);
}

std::string DyadicFloat::to_string(int digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() > 0 ? "inf" : "-inf";
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

}  // namespace acsv
