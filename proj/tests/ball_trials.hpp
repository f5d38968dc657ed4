// Randomized containment trials for ball arithmetic. Exact points are sampled inside
// the operand balls and the exact (or tightly bracketed) result must land inside.
#pragma once

#include <cmath>
#include <string>

#include "acsv/ball.hpp"
#include "support.hpp"

namespace testsupport {

using acsv::ComplexBall;
using acsv::DyadicFloat;
using acsv::GaussianRational;

struct TrialStats {
  long trials = 0;
  long violations = 0;
  long skipped_div = 0;
  std::string first_failure;
};

inline DyadicFloat random_radius(Gen& g) {
  // radius 0, tiny, or moderate
  switch (g.integer(0, 3)) {
    case 0: return DyadicFloat(acsv::kRadPrec);
    case 1: return DyadicFloat(std::ldexp(static_cast<double>(g.integer(1, 1000)), -40), acsv::kRadPrec);
    default: return DyadicFloat(static_cast<double>(g.integer(1, 1000)) / 1024.0, acsv::kRadPrec);
  }
}

inline ComplexBall random_ball(Gen& g, long prec) {
  GaussianRational c(g.rational(30, 7), g.coin() ? g.rational(30, 7) : Rational(0));
  return ComplexBall::from(c, prec).inflate(random_radius(g));
}

// Exact point inside b: center + rad·(u, v) with u² + v² ≤ 1.
inline GaussianRational sample_in(Gen& g, const ComplexBall& b) {
  Rational r = b.rad().to_rational();
  for (;;) {
    Rational u(g.integer(-(1 << 20), 1 << 20), 1 << 20), v(g.integer(-(1 << 20), 1 << 20), 1 << 20);
    u.canonicalize();
    v.canonicalize();
    if (u * u + v * v > 1) continue;
    if (g.integer(0, 7) == 0) {
      // boundary-ish sample along the real direction
      v = 0;
      u = g.coin() ? 1 : -1;
    }
    GaussianRational c = b.center();
    return {Rational(c.re + r * u), Rational(c.im + r * v)};
  }
}

// Encloses log|z| for exact z at high precision; returns [lo, hi].
inline void log_abs_bracket(const GaussianRational& z, DyadicFloat& lo, DyadicFloat& hi) {
  Rational n = z.norm();
  lo = DyadicFloat::from_rational(n, 600, MPFR_RNDD);
  hi = DyadicFloat::from_rational(n, 600, MPFR_RNDU);
  mpfr_log(lo.raw(), lo.raw(), MPFR_RNDD);
  mpfr_log(hi.raw(), hi.raw(), MPFR_RNDU);
  mpfr_div_2ui(lo.raw(), lo.raw(), 1, MPFR_RNDD);
  mpfr_div_2ui(hi.raw(), hi.raw(), 1, MPFR_RNDU);
}

inline TrialStats run_ball_trials(long count, uint64_t seed) {
  Gen g(seed);
  TrialStats st;
  const long precs[] = {53, 64, 128, 200};
  while (st.trials < count) {
    long prec = precs[g.integer(0, 3)];
    ComplexBall a = random_ball(g, prec), b = random_ball(g, prec);
    int op = static_cast<int>(g.integer(0, 4));
    GaussianRational z = sample_in(g, a), w = sample_in(g, b);
    bool ok = true;
    std::string name;
    switch (op) {
      case 0: name = "add"; ok = acsv::ball_add(a, b).contains(z + w); break;
      case 1: name = "sub"; ok = acsv::ball_sub(a, b).contains(z - w); break;
      case 2: name = "mul"; ok = acsv::ball_mul(a, b).contains(z * w); break;
      case 3: {
        name = "div";
        if (b.contains_zero()) {
          bool threw = false;
          try {
            (void)acsv::ball_div(a, b);
          } catch (const acsv::Error&) {
            threw = true;
          }
          ++st.skipped_div;
          ok = threw;
          break;
        }
        ComplexBall q = acsv::ball_div(a, b);
        ok = w.is_zero() ? true : q.contains(z / w);
        break;
      }
      default: {
        name = "log_abs";
        if (a.contains_zero()) continue;
        acsv::RealBall l = acsv::ball_log_abs(a);
        DyadicFloat lo(600), hi(600);
        log_abs_bracket(z, lo, hi);
        ok = l.lower() <= lo && hi <= l.upper();
        break;
      }
    }
    ++st.trials;
    if (!ok) {
      ++st.violations;
      if (st.first_failure.empty()) st.first_failure = name + " a=" + a.to_string() + " b=" + b.to_string();
    }
  }
  return st;
}

}  // namespace testsupport
