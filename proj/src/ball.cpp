#include "acsv/ball.hpp"

#include <algorithm>

namespace acsv {

namespace {

// Bound on |v - exact| after a round-to-nearest that reported `ternary`.
void add_rounding(DyadicFloat& rad, const DyadicFloat& v, int ternary) {
  if (ternary == 0 || v.is_zero()) return;
  DyadicFloat e(kRadPrec);
  mpfr_abs(e.raw(), v.raw(), MPFR_RNDU);
  mpfr_mul_2si(e.raw(), e.raw(), 1 - v.prec(), MPFR_RNDU);
  mpfr_add(rad.raw(), rad.raw(), e.raw(), MPFR_RNDU);
}

void add_up(DyadicFloat& r, const DyadicFloat& a) { mpfr_add(r.raw(), r.raw(), a.raw(), MPFR_RNDU); }

DyadicFloat hypot_dir(const DyadicFloat& a, const DyadicFloat& b, long prec, mpfr_rnd_t rnd) {
  // directed bound via sqrt(a² + b²), every step rounded the same way; cheaper than mpfr_hypot
  DyadicFloat h(prec), t(prec);
  mpfr_sqr(h.raw(), a.raw(), rnd);
  mpfr_sqr(t.raw(), b.raw(), rnd);
  mpfr_add(h.raw(), h.raw(), t.raw(), rnd);
  mpfr_sqrt(h.raw(), h.raw(), rnd);
  return h;
}

Rational to_q(const DyadicFloat& d) { return d.to_rational(); }

}  // namespace

// ---- RealBall --------------------------------------------------------------

RealBall::RealBall(long prec) : mid_(prec), rad_(kRadPrec) {}
RealBall::RealBall(DyadicFloat mid, DyadicFloat rad) : mid_(std::move(mid)), rad_(std::move(rad)) {}

RealBall RealBall::from(const Rational& q, long prec) {
  int t = 0;
  RealBall b(prec);
  b.mid_ = DyadicFloat::from_rational(q, prec, MPFR_RNDN, &t);
  add_rounding(b.rad_, b.mid_, t);
  return b;
}

RealBall RealBall::from_bounds(const DyadicFloat& lo, const DyadicFloat& hi) {
  long p = std::max(lo.prec(), hi.prec());
  RealBall b(p);
  if (lo.is_inf() || hi.is_inf()) {
    b.rad_ = DyadicFloat::infinity(kRadPrec);
    return b;
  }
  DyadicFloat s(p + 1);
  mpfr_add(s.raw(), lo.raw(), hi.raw(), MPFR_RNDN);
  mpfr_div_2ui(s.raw(), s.raw(), 1, MPFR_RNDN);
  mpfr_set(b.mid_.raw(), s.raw(), MPFR_RNDN);
  DyadicFloat d1(kRadPrec), d2(kRadPrec);
  mpfr_sub(d1.raw(), hi.raw(), b.mid_.raw(), MPFR_RNDU);
  mpfr_sub(d2.raw(), b.mid_.raw(), lo.raw(), MPFR_RNDU);
  mpfr_max(b.rad_.raw(), d1.raw(), d2.raw(), MPFR_RNDU);
  if (b.rad_.sign() < 0) mpfr_set_zero(b.rad_.raw(), 1);
  return b;
}

DyadicFloat RealBall::lower() const {
  DyadicFloat r(prec());
  mpfr_sub(r.raw(), mid_.raw(), rad_.raw(), MPFR_RNDD);
  return r;
}

DyadicFloat RealBall::upper() const {
  DyadicFloat r(prec());
  mpfr_add(r.raw(), mid_.raw(), rad_.raw(), MPFR_RNDU);
  return r;
}

bool RealBall::contains(const Rational& q) const {
  if (rad_.is_inf()) return true;
  Rational d = abs(q - to_q(mid_));
  return d <= to_q(rad_);
}

bool RealBall::contains_zero() const { return contains(Rational(0)); }

bool RealBall::overlaps(const RealBall& o) const {
  if (rad_.is_inf() || o.rad_.is_inf()) return true;
  Rational d = abs(to_q(mid_) - to_q(o.mid_));
  return d <= to_q(rad_) + to_q(o.rad_);
}

bool RealBall::certainly_positive() const { return lower().sign() > 0; }
bool RealBall::certainly_negative() const { return upper().sign() < 0; }
bool RealBall::certainly_less(const RealBall& o) const { return upper() < o.lower(); }

RealBall operator+(const RealBall& a, const RealBall& b) {
  RealBall r(std::max(a.prec(), b.prec()));
  int t = mpfr_add(r.mid_.raw(), a.mid_.raw(), b.mid_.raw(), MPFR_RNDN);
  mpfr_add(r.rad_.raw(), a.rad_.raw(), b.rad_.raw(), MPFR_RNDU);
  add_rounding(r.rad_, r.mid_, t);
  return r;
}

RealBall operator-(const RealBall& a) {
  RealBall r = a;
  mpfr_neg(r.mid_.raw(), r.mid_.raw(), MPFR_RNDN);
  return r;
}

RealBall operator-(const RealBall& a, const RealBall& b) { return a + (-b); }

RealBall operator*(const RealBall& a, const RealBall& b) {
  RealBall r(std::max(a.prec(), b.prec()));
  if (a.rad_.is_inf() || b.rad_.is_inf()) {
    r.rad_ = DyadicFloat::infinity(kRadPrec);
    return r;
  }
  int t = mpfr_mul(r.mid_.raw(), a.mid_.raw(), b.mid_.raw(), MPFR_RNDN);
  DyadicFloat am(kRadPrec), bm(kRadPrec), x(kRadPrec);
  mpfr_abs(am.raw(), a.mid_.raw(), MPFR_RNDU);
  mpfr_abs(bm.raw(), b.mid_.raw(), MPFR_RNDU);
  mpfr_add(am.raw(), am.raw(), a.rad_.raw(), MPFR_RNDU);
  mpfr_mul(x.raw(), am.raw(), b.rad_.raw(), MPFR_RNDU);
  mpfr_mul(r.rad_.raw(), a.rad_.raw(), bm.raw(), MPFR_RNDU);
  add_up(r.rad_, x);
  add_rounding(r.rad_, r.mid_, t);
  return r;
}

RealBall operator/(const RealBall& a, const RealBall& b) {
  DyadicFloat blo = b.lower(), bhi = b.upper();
  if (blo.sign() <= 0 && bhi.sign() >= 0) throw Error(ErrorKind::DivisionByZero, "real ball divisor contains zero");
  long p = std::max(a.prec(), b.prec());
  DyadicFloat alo = a.lower(), ahi = a.upper();
  DyadicFloat lo = DyadicFloat::infinity(p), hi = DyadicFloat::infinity(p);
  mpfr_neg(hi.raw(), hi.raw(), MPFR_RNDN);
  for (const DyadicFloat* u : {&alo, &ahi})
    for (const DyadicFloat* v : {&blo, &bhi}) {
      DyadicFloat q1(p), q2(p);
      mpfr_div(q1.raw(), u->raw(), v->raw(), MPFR_RNDD);
      mpfr_div(q2.raw(), u->raw(), v->raw(), MPFR_RNDU);
      if (q1 < lo) lo = q1;
      if (hi < q2) hi = q2;
    }
  return RealBall::from_bounds(lo, hi);
}

RealBall sqrt(const RealBall& a) {
  DyadicFloat lo = a.lower(), hi = a.upper();
  if (hi.sign() < 0) throw Error(ErrorKind::DegenerateInput, "sqrt of a negative real ball");
  if (lo.sign() < 0) mpfr_set_zero(lo.raw(), 1);
  mpfr_sqrt(lo.raw(), lo.raw(), MPFR_RNDD);
  mpfr_sqrt(hi.raw(), hi.raw(), MPFR_RNDU);
  return RealBall::from_bounds(lo, hi);
}

RealBall exp(const RealBall& a) {
  DyadicFloat lo = a.lower(), hi = a.upper();
  mpfr_exp(lo.raw(), lo.raw(), MPFR_RNDD);
  mpfr_exp(hi.raw(), hi.raw(), MPFR_RNDU);
  return RealBall::from_bounds(lo, hi);
}

RealBall log(const RealBall& a) {
  DyadicFloat lo = a.lower(), hi = a.upper();
  if (lo.sign() <= 0) throw Error(ErrorKind::DivisionByZero, "log of a ball reaching zero");
  mpfr_log(lo.raw(), lo.raw(), MPFR_RNDD);
  mpfr_log(hi.raw(), hi.raw(), MPFR_RNDU);
  return RealBall::from_bounds(lo, hi);
}

RealBall const_pi(long prec) {
  DyadicFloat lo(prec), hi(prec);
  mpfr_const_pi(lo.raw(), MPFR_RNDD);
  mpfr_const_pi(hi.raw(), MPFR_RNDU);
  return RealBall::from_bounds(lo, hi);
}

// ---- ComplexBall -----------------------------------------------------------

ComplexBall::ComplexBall(long prec) : re_(prec), im_(prec), rad_(kRadPrec) {}

ComplexBall::ComplexBall(DyadicFloat re, DyadicFloat im, DyadicFloat rad)
    : re_(std::move(re)), im_(std::move(im)), rad_(kRadPrec) {
  mpfr_set(rad_.raw(), rad.raw(), MPFR_RNDU);
  if (re_.prec() != im_.prec()) {
    long p = std::max(re_.prec(), im_.prec());
    DyadicFloat a(p), b(p);
    mpfr_set(a.raw(), re_.raw(), MPFR_RNDN);
    mpfr_set(b.raw(), im_.raw(), MPFR_RNDN);
    re_ = std::move(a);
    im_ = std::move(b);
  }
}

ComplexBall ComplexBall::from(const Rational& q, long prec) { return from(GaussianRational(q), prec); }

ComplexBall ComplexBall::from(const GaussianRational& z, long prec) {
  ComplexBall b(prec);
  int t1 = mpfr_set_q(b.re_.raw(), z.re.get_mpq_t(), MPFR_RNDN);
  int t2 = mpfr_set_q(b.im_.raw(), z.im.get_mpq_t(), MPFR_RNDN);
  add_rounding(b.rad_, b.re_, t1);
  add_rounding(b.rad_, b.im_, t2);
  return b;
}

ComplexBall ComplexBall::from(double re, double im, long prec) {
  ComplexBall b(std::max(prec, 53L));
  mpfr_set_d(b.re_.raw(), re, MPFR_RNDN);
  mpfr_set_d(b.im_.raw(), im, MPFR_RNDN);
  return b;
}

ComplexBall ComplexBall::from(const RealBall& r) { return ComplexBall(r.mid(), DyadicFloat(r.prec()), r.rad()); }

ComplexBall ComplexBall::from(const RealBall& re, const RealBall& im) {
  DyadicFloat rad(kRadPrec);
  mpfr_add(rad.raw(), re.rad().raw(), im.rad().raw(), MPFR_RNDU);
  return ComplexBall(re.mid(), im.mid(), rad);
}

ComplexBall ComplexBall::with_radius(const DyadicFloat& r) const { return ComplexBall(re_, im_, r); }

ComplexBall ComplexBall::inflate(const DyadicFloat& r) const {
  ComplexBall b = *this;
  add_up(b.rad_, r);
  return b;
}

ComplexBall ComplexBall::at_prec(long prec) const {
  ComplexBall b(prec);
  int t1 = mpfr_set(b.re_.raw(), re_.raw(), MPFR_RNDN);
  int t2 = mpfr_set(b.im_.raw(), im_.raw(), MPFR_RNDN);
  b.rad_ = rad_;
  add_rounding(b.rad_, b.re_, t1);
  add_rounding(b.rad_, b.im_, t2);
  return b;
}

bool ComplexBall::contains(const GaussianRational& z) const {
  if (rad_.is_inf()) return true;
  Rational dr = z.re - to_q(re_), di = z.im - to_q(im_), r = to_q(rad_);
  return dr * dr + di * di <= r * r;
}

bool ComplexBall::contains_zero() const { return contains(GaussianRational()); }

bool ComplexBall::contains(const ComplexBall& o) const {
  if (rad_.is_inf()) return true;
  if (o.rad_.is_inf()) return false;
  Rational slack = to_q(rad_) - to_q(o.rad_);
  if (sgn(slack) < 0) return false;
  Rational dr = to_q(o.re_) - to_q(re_), di = to_q(o.im_) - to_q(im_);
  return dr * dr + di * di <= slack * slack;
}

bool ComplexBall::interior_contains(const ComplexBall& o) const {
  if (rad_.is_inf()) return !o.rad_.is_inf();
  if (o.rad_.is_inf()) return false;
  Rational slack = to_q(rad_) - to_q(o.rad_);
  if (sgn(slack) <= 0) return false;
  Rational dr = to_q(o.re_) - to_q(re_), di = to_q(o.im_) - to_q(im_);
  return dr * dr + di * di < slack * slack;
}

bool ComplexBall::overlaps(const ComplexBall& o) const {
  if (rad_.is_inf() || o.rad_.is_inf()) return true;
  Rational sum = to_q(rad_) + to_q(o.rad_);
  Rational dr = to_q(o.re_) - to_q(re_), di = to_q(o.im_) - to_q(im_);
  return dr * dr + di * di <= sum * sum;
}

DyadicFloat ComplexBall::abs_lower() const {
  DyadicFloat h = hypot_dir(re_, im_, prec(), MPFR_RNDD);
  mpfr_sub(h.raw(), h.raw(), rad_.raw(), MPFR_RNDD);
  if (h.sign() < 0) mpfr_set_zero(h.raw(), 1);
  return h;
}

DyadicFloat ComplexBall::abs_upper() const {
  DyadicFloat h = hypot_dir(re_, im_, prec(), MPFR_RNDU);
  mpfr_add(h.raw(), h.raw(), rad_.raw(), MPFR_RNDU);
  return h;
}

RealBall ComplexBall::abs() const { return RealBall::from_bounds(abs_lower(), abs_upper()); }
RealBall ComplexBall::real() const { return RealBall(re_, rad_); }
RealBall ComplexBall::imag() const { return RealBall(im_, rad_); }

ComplexBall ComplexBall::conj() const {
  ComplexBall b = *this;
  mpfr_neg(b.im_.raw(), b.im_.raw(), MPFR_RNDN);
  return b;
}

GaussianRational ComplexBall::center() const { return {to_q(re_), to_q(im_)}; }

std::string ComplexBall::to_string(int digits) const {
  std::string s = re_.to_string(digits);
  if (!im_.is_zero()) {
    DyadicFloat a = im_;
    mpfr_abs(a.raw(), a.raw(), MPFR_RNDN);
    s = re_.to_string(digits) + (im_.sign() > 0 ? " + " : " - ") + a.to_string(digits) + "i";
  }
  return s + " +/- " + rad_.to_string(3);
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall r(std::max(a.prec(), b.prec()));
  int t1 = mpfr_add(r.re_.raw(), a.re_.raw(), b.re_.raw(), MPFR_RNDN);
  int t2 = mpfr_add(r.im_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
  mpfr_add(r.rad_.raw(), a.rad_.raw(), b.rad_.raw(), MPFR_RNDU);
  add_rounding(r.rad_, r.re_, t1);
  add_rounding(r.rad_, r.im_, t2);
  return r;
}

ComplexBall operator-(const ComplexBall& a) {
  ComplexBall r = a;
  mpfr_neg(r.re_.raw(), r.re_.raw(), MPFR_RNDN);
  mpfr_neg(r.im_.raw(), r.im_.raw(), MPFR_RNDN);
  return r;
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall r(std::max(a.prec(), b.prec()));
  int t1 = mpfr_sub(r.re_.raw(), a.re_.raw(), b.re_.raw(), MPFR_RNDN);
  int t2 = mpfr_sub(r.im_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
  mpfr_add(r.rad_.raw(), a.rad_.raw(), b.rad_.raw(), MPFR_RNDU);
  add_rounding(r.rad_, r.re_, t1);
  add_rounding(r.rad_, r.im_, t2);
  return r;
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall r(std::max(a.prec(), b.prec()));
  if (a.rad_.is_inf() || b.rad_.is_inf()) {
    r.rad_ = DyadicFloat::infinity(kRadPrec);
    return r;
  }
  int t1 = mpfr_fmms(r.re_.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
  int t2 = mpfr_fmma(r.im_.raw(), a.re_.raw(), b.im_.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
  if (!a.rad_.is_zero() || !b.rad_.is_zero()) {
    // (|c| + r) r' + r |c'|
    DyadicFloat ca = hypot_dir(a.re_, a.im_, kRadPrec, MPFR_RNDU);
    DyadicFloat cb = hypot_dir(b.re_, b.im_, kRadPrec, MPFR_RNDU);
    add_up(ca, a.rad_);
    DyadicFloat x(kRadPrec);
    mpfr_mul(x.raw(), ca.raw(), b.rad_.raw(), MPFR_RNDU);
    mpfr_mul(r.rad_.raw(), a.rad_.raw(), cb.raw(), MPFR_RNDU);
    add_up(r.rad_, x);
  }
  add_rounding(r.rad_, r.re_, t1);
  add_rounding(r.rad_, r.im_, t2);
  return r;
}

ComplexBall inv(const ComplexBall& a) {
  const long p = a.prec();
  DyadicFloat lo = hypot_dir(a.re(), a.im(), p, MPFR_RNDD);
  if (a.rad().is_inf() || !(a.rad() < lo))
    throw Error(ErrorKind::DivisionByZero, "divisor ball may contain zero");
  DyadicFloat n(p), re(p), im(p);
  int t0 = mpfr_fmma(n.raw(), a.re().raw(), a.re().raw(), a.im().raw(), a.im().raw(), MPFR_RNDN);
  int t1 = mpfr_div(re.raw(), a.re().raw(), n.raw(), MPFR_RNDN);
  int t2 = mpfr_div(im.raw(), a.im().raw(), n.raw(), MPFR_RNDN);
  mpfr_neg(im.raw(), im.raw(), MPFR_RNDN);
  DyadicFloat rad(kRadPrec);
  if (t0 != 0 || t1 != 0 || t2 != 0) {
    // three roundings, each relative ≤ 2^-p; 8·2^-p/|c| is a safe total
    DyadicFloat e(kRadPrec);
    mpfr_ui_div(e.raw(), 8, lo.raw(), MPFR_RNDU);
    mpfr_mul_2si(e.raw(), e.raw(), -p, MPFR_RNDU);
    add_up(rad, e);
  }
  if (!a.rad().is_zero()) {
    // |1/z - 1/c| ≤ r / (|c| (|c| - r))
    DyadicFloat d(kRadPrec), e(kRadPrec);
    mpfr_sub(d.raw(), lo.raw(), a.rad().raw(), MPFR_RNDD);
    mpfr_mul(d.raw(), d.raw(), lo.raw(), MPFR_RNDD);
    mpfr_div(e.raw(), a.rad().raw(), d.raw(), MPFR_RNDU);
    add_up(rad, e);
  }
  return ComplexBall(re, im, rad);
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
  if (b.is_exact() && b.im().is_zero() && !b.re().is_zero() && a.rad().is_zero()) {
    // exact real divisor: divide componentwise with a single rounding
    ComplexBall r(std::max(a.prec(), b.prec()));
    int t1 = mpfr_div(r.re_.raw(), a.re_.raw(), b.re_.raw(), MPFR_RNDN);
    int t2 = mpfr_div(r.im_.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
    add_rounding(r.rad_, r.re_, t1);
    add_rounding(r.rad_, r.im_, t2);
    return r;
  }
  return a * inv(b);
}

ComplexBall sqr(const ComplexBall& a) { return a * a; }

ComplexBall pow(const ComplexBall& a, long e) {
  if (e < 0) return pow(inv(a), -e);
  ComplexBall r = ComplexBall::from(Rational(1), a.prec()), b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

ComplexBall sqrt(const ComplexBall& a) {
  const long p = a.prec();
  // The ball must avoid the cut (-inf, 0].
  DyadicFloat absim(p);
  mpfr_abs(absim.raw(), a.im().raw(), MPFR_RNDN);
  bool right = a.rad() < a.re();
  bool off_axis = a.rad() < absim;
  if (a.rad().is_inf() || !(right || off_axis)) throw Error(ErrorKind::Inconclusive, "sqrt ball meets the branch cut");
  RealBall re = a.center_ball().real(), im = a.center_ball().imag();
  RealBall m = a.center_ball().abs();
  RealBall two = RealBall::from(Rational(2), p);
  RealBall R(p), I(p);
  if (a.re().sign() >= 0) {
    R = sqrt((m + re) / two);
    I = im / (two * R);
  } else {
    RealBall I0 = sqrt((m - re) / two);
    I = a.im().sign() >= 0 ? I0 : -I0;
    RealBall absI = a.im().sign() >= 0 ? im : -im;
    R = absI / (two * I0);
  }
  ComplexBall c = ComplexBall::from(R, I);
  if (!a.rad().is_zero()) {
    DyadicFloat rlo = R.lower();
    if (rlo.sign() <= 0) throw Error(ErrorKind::Inconclusive, "sqrt ball too close to the branch cut");
    DyadicFloat e(kRadPrec);
    mpfr_div(e.raw(), a.rad().raw(), rlo.raw(), MPFR_RNDU);
    c = c.inflate(e);
  }
  return c;
}

ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b) { return a + b; }
ComplexBall ball_sub(const ComplexBall& a, const ComplexBall& b) { return a - b; }
ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b) { return a * b; }
ComplexBall ball_div(const ComplexBall& a, const ComplexBall& b) { return a / b; }

RealBall ball_log_abs(const ComplexBall& a) {
  const long p = a.prec();
  DyadicFloat lo = a.abs_lower();
  if (lo.sign() <= 0) throw Error(ErrorKind::DivisionByZero, "log|z| of a ball containing zero");
  DyadicFloat hi = a.abs_upper();
  DyadicFloat l(p), h(p);
  mpfr_log(l.raw(), lo.raw(), MPFR_RNDD);
  mpfr_log(h.raw(), hi.raw(), MPFR_RNDU);
  return RealBall::from_bounds(l, h);
}

bool ball_in_quarter_sector(const ComplexBall& a) {
  if (a.rad().is_inf() || a.re().sign() <= 0) return false;
  DyadicFloat absim(a.prec());
  mpfr_abs(absim.raw(), a.im().raw(), MPFR_RNDN);
  if (!(absim < a.re())) return false;
  // Re(B²) = B(c', r'); r' < c' keeps Re(z²) > 0 on the whole ball.
  ComplexBall s = sqr(a);
  return s.re().sign() > 0 && s.rad() < s.re();
}

// ---- evaluation ------------------------------------------------------------

CompiledPoly::CompiledPoly(const SparsePoly& p, long prec) : prec_(prec) {
  int dy = std::max(p.degree(Var::Y), 0), dx = std::max(p.degree(Var::X), 0);
  rows_.assign(static_cast<size_t>(dy) + 1, std::vector<ComplexBall>(static_cast<size_t>(dx) + 1, ComplexBall(prec)));
  nonzero_.assign(static_cast<size_t>(dy) + 1, std::vector<bool>(static_cast<size_t>(dx) + 1, false));
  for (const auto& [m, c] : p.terms()) {
    rows_[static_cast<size_t>(m.second)][static_cast<size_t>(m.first)] = ComplexBall::from(c, prec);
    nonzero_[static_cast<size_t>(m.second)][static_cast<size_t>(m.first)] = true;
  }
  // Trim each row's trailing zeros.
  for (size_t j = 0; j < rows_.size(); ++j) {
    size_t n = rows_[j].size();
    while (n > 0 && !nonzero_[j][n - 1]) --n;
    rows_[j].resize(n);
    nonzero_[j].resize(n);
  }
}

ComplexBall CompiledPoly::eval(const ComplexBall& x, const ComplexBall& y) const {
  long p = std::max({prec_, x.prec(), y.prec()});
  ComplexBall acc(p);
  bool started = false;
  for (size_t j = rows_.size(); j-- > 0;) {
    if (started) acc = acc * y;
    const auto& row = rows_[j];
    if (row.empty()) continue;
    ComplexBall r = row.back();
    for (size_t i = row.size() - 1; i-- > 0;) {
      r = r * x;
      if (nonzero_[j][i]) r = r + row[i];
    }
    acc = started ? acc + r : r;
    started = true;
  }
  return started ? acc : ComplexBall(p);
}

ComplexBall poly_eval(const SparsePoly& p, const ComplexBall& x, const ComplexBall& y) {
  return CompiledPoly(p, std::max(x.prec(), y.prec())).eval(x, y);
}

ComplexBall poly_eval(const QPoly& p, const ComplexBall& t) {
  ComplexBall acc(t.prec());
  for (size_t i = p.coeffs().size(); i-- > 0;) acc = acc * t + ComplexBall::from(p.coeffs()[i], t.prec());
  return acc;
}

ComplexBall poly_eval(const GPoly& p, const ComplexBall& t) {
  ComplexBall acc(t.prec());
  for (size_t i = p.coeffs().size(); i-- > 0;) acc = acc * t + ComplexBall::from(p.coeffs()[i], t.prec());
  return acc;
}

}  // namespace acsv
