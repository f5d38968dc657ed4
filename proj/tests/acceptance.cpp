// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed below.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "acsv/asym.hpp"
#include "acsv/oracle.hpp"
#include "acsv/parse.hpp"
#include "ball_trials.hpp"

using namespace acsv;

namespace {

constexpr long kBallTrials = 100000;
constexpr double kBallSeconds = 60;
constexpr int kKrPolys = 200;
constexpr int kKrMaxDegree = 8;
constexpr double kKrSeconds = 120;
constexpr double kTightRadius = 1e-12;
constexpr double kBinomialRate = 0.2;     // |ratio − 1| ≤ 0.2/n
constexpr double kHalvingSlack = 0.3;     // e(2n) within 30% of e(n)/2
constexpr double kBinomialSeconds = 60;
constexpr double kDelannoyError = 0.01;
constexpr double kDelannoySeconds = 120;
constexpr double kOffDiagonalRate = 0.5;  // ≤ 0.5/n
constexpr long kMaxTotalSteps = 10000;

const char* kEg = "1 - 3*y + 2*y^2 - 6*x*y^4 + x^3*y^5";

SparsePoly P(const char* s) { return parse_polynomial(s); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Verdict {
  bool ok = true;
  std::ostringstream why;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      ok = false;
      why << what;
    }
  }
};

bool is_rational(const AlgebraicNumber& a, const Rational& v) { return algnum_equals(a, algnum_from_rational(v)); }

// [lo, hi] around log(v) for v given by an mpfr setter, at 400 bits.
void log_bracket(const std::function<void(mpfr_ptr, mpfr_rnd_t)>& set, DyadicFloat& lo, DyadicFloat& hi) {
  lo = DyadicFloat(400);
  hi = DyadicFloat(400);
  set(lo.raw(), MPFR_RNDD);
  set(hi.raw(), MPFR_RNDU);
  mpfr_log(lo.raw(), lo.raw(), MPFR_RNDD);
  mpfr_log(hi.raw(), hi.raw(), MPFR_RNDU);
}

bool ball_contains(const RealBall& b, const DyadicFloat& lo, const DyadicFloat& hi) {
  return b.lower() <= lo && hi <= b.upper();
}

double rel_error(const Rational& a, const ComplexBall& est) {
  return std::abs((ComplexBall::from(a, 128) / est).mid_d() - std::complex<double>(1, 0));
}

int run_cli(const std::string& args, std::string* out = nullptr) {
  std::string cmd = std::string(ACSV_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return -1;
  std::string s;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) s.append(buf, n);
  int status = pclose(f);
  if (out) *out = s;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict criterion1() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  testsupport::TrialStats st = testsupport::run_ball_trials(kBallTrials, 20240601);
  double t = seconds_since(t0);
  v.require(st.trials >= kBallTrials, "too few trials");
  v.require(st.violations == 0, std::to_string(st.violations) + " violations, first: " + st.first_failure);
  v.require(t < kBallSeconds, "runtime " + std::to_string(t) + " s");
  v.why << (v.ok ? "" : "; ") << st.trials << " trials, " << st.violations << " violations, " << t << " s";
  return v;
}

Verdict criterion2() {
  Verdict v;
  testsupport::Gen g(0x5eed);
  auto t0 = std::chrono::steady_clock::now();
  int done = 0, balls = 0;
  while (done < kKrPolys) {
    int deg = static_cast<int>(g.integer(1, kKrMaxDegree));
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i) c.push_back(i == deg ? g.nonzero_rational(20, 9) : g.rational(20, 9));
    QPoly p(c);
    if (squarefree(p).degree() != deg) continue;
    ++done;
    std::vector<AlgebraicNumber> roots = isolate_roots(p);
    v.require(static_cast<int>(roots.size()) == deg, "wrong root count for " + to_string(p, "t"));
    for (size_t i = 0; i < roots.size(); ++i) {
      const ComplexBall& b = roots[i].enclosure;
      if (b.is_exact()) {
        v.require(poly_eval(p, b).contains_zero(), "exact root does not vanish");
      } else {
        v.require(b.interior_contains(kr_step(p, b)), "re-certification failed for " + to_string(p, "t"));
      }
      for (size_t j = i + 1; j < roots.size(); ++j) v.require(!b.overlaps(roots[j].enclosure), "overlapping balls");
      ++balls;
    }
  }
  double t = seconds_since(t0);
  v.require(t < kKrSeconds, "runtime " + std::to_string(t) + " s");
  v.why << (v.ok ? "" : "; ") << done << " polynomials, " << balls << " certified balls, " << t << " s";
  return v;
}

Verdict criterion3() {
  Verdict v;
  SparsePoly Q = P(kEg);
  auto ax = axis_points(Q, Var::Y);
  int ones = 0, halves = 0;
  for (const auto& a : ax) {
    ones += is_rational(a, Rational(1));
    halves += is_rational(a, Rational(1, 2));
  }
  v.require(ax.size() == 2 && ones == 1 && halves == 1, "axis points differ from {1, 1/2}");
  v.require(bad_directions(Q) == std::vector<Rational>{Rational(1, 2), Rational(2)}, "bad differs from {1/2, 2}");
  auto br = puiseux_leading(Q);
  AlgebraicNumber inv_sqrt3;
  for (const auto& a : isolate_roots(QPoly({Rational(-1), Rational(0), Rational(3)})))
    if (a.approx().real() > 0) inv_sqrt3 = a;
  int matched = 0, ram = 0;
  for (const auto& b : br) {
    ram += b.ramification_k;
    if (b.beta == 0 && b.ramification_k == 1 && is_rational(b.coefficient, Rational(1))) ++matched;
    if (b.beta == 0 && b.ramification_k == 1 && is_rational(b.coefficient, Rational(1, 2))) ++matched;
    // either of the two conjugate leading coefficients ±1/√3 represents the ramified branch
    if (b.beta == Rational(1, 2) && b.ramification_k == 2 &&
        (algnum_equals(b.coefficient, inv_sqrt3) ||
         algnum_equals(b.coefficient, {inv_sqrt3.defining, -inv_sqrt3.enclosure})))
      ++matched;
    if (b.beta == 2 && b.ramification_k == 1 && is_rational(b.coefficient, Rational(6))) ++matched;
  }
  v.require(br.size() == 4 && matched == 4, "Puiseux leading data differ");
  v.require(ram == 5, "ramification sum " + std::to_string(ram));
  v.why << (v.ok ? "" : "; ") << "axis {1, 1/2}, bad {1/2, 2}, " << br.size() << " branches, ramification sum " << ram;
  return v;
}

// Oracle errors along n·(r, s).
std::vector<double> oracle_errors(const AsymptoticReport& rep, const char* num, const char* den, long r, long s,
                                  const std::vector<long>& ns) {
  CoefficientTable t = series_coefficients(P(num), P(den), ns.back() * r, ns.back() * s);
  std::vector<double> out;
  for (long n : ns) out.push_back(rel_error(t.at(n * r, n * s), leading_estimate(rep, n * r, n * s)));
  return out;
}

Verdict criterion4() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  AsymptoticReport rep = analyze_direction(P("1"), P("1-x-y"), 1, 1);
  const Classification& a = rep.analysis;
  v.require(a.xi.size() == 1, "Xi has " + std::to_string(a.xi.size()) + " points");
  if (a.xi.size() == 1) {
    AlgebraicPoint p = refine_to_prec(a.saddles[a.xi[0]].cp.point, a.prec);
    for (const ComplexBall* c : {&p.x.enclosure, &p.y.enclosure}) {
      v.require(c->contains(GaussianRational{Rational(1, 2), Rational(0)}), "enclosure misses 1/2");
      v.require(c->rad_d() < kTightRadius, "coordinate radius " + std::to_string(c->rad_d()));
    }
  }
  DyadicFloat lo, hi;
  log_bracket([](mpfr_ptr x, mpfr_rnd_t) { mpfr_set_ui(x, 2, MPFR_RNDN); }, lo, hi);
  v.require(a.c_star_level.has_value() && ball_contains(a.c_star, lo, hi), "c* misses log 2");
  v.require(a.c_star.rad_double() < kTightRadius, "c* radius too large");
  std::vector<long> ns{50, 100, 200};
  std::vector<double> e = oracle_errors(rep, "1", "1-x-y", 1, 1, ns);
  for (size_t i = 0; i < ns.size(); ++i)
    v.require(e[i] <= kBinomialRate / static_cast<double>(ns[i]), "error " + std::to_string(e[i]) + " at n = " + std::to_string(ns[i]));
  for (size_t i = 0; i + 1 < ns.size(); ++i)
    v.require(std::abs(e[i + 1] - e[i] / 2) <= kHalvingSlack * e[i] / 2, "error does not halve at n = " + std::to_string(ns[i]));
  double t = seconds_since(t0);
  v.require(t < kBinomialSeconds, "runtime " + std::to_string(t) + " s");
  v.why << (v.ok ? "" : "; ") << "errors " << e[0] << ", " << e[1] << ", " << e[2] << "; c* radius " << a.c_star.rad_double()
        << "; " << t << " s";
  return v;
}

Verdict criterion5() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  AsymptoticReport rep = analyze_direction(P("1"), P("1-x-y-x*y"), 1, 1);
  const Classification& a = rep.analysis;
  AlgebraicNumber target;
  for (const auto& r : isolate_roots(QPoly({Rational(-1), Rational(2), Rational(1)})))
    if (r.approx().real() > 0) target = r;
  v.require(a.xi.size() == 1, "Xi has " + std::to_string(a.xi.size()) + " points");
  if (a.xi.size() == 1) {
    const AlgebraicPoint& p = a.saddles[a.xi[0]].cp.point;
    v.require(algnum_equals(p.x, target) && algnum_equals(p.y, target), "Xi point is not (sqrt2 - 1, sqrt2 - 1)");
  }
  DyadicFloat lo, hi;
  log_bracket(
      [](mpfr_ptr x, mpfr_rnd_t rnd) {
        mpfr_sqrt_ui(x, 2, rnd);
        mpfr_add_ui(x, x, 1, rnd);
      },
      lo, hi);
  v.require(a.c_star_level.has_value() && ball_contains(a.c_star, lo, hi), "c* misses log(1 + sqrt2)");
  v.require(a.c_star.rad_double() < kTightRadius, "c* radius too large");
  bool lower_unclassified = false;
  for (const auto& s : a.saddles)
    if (s.cp.point.x.approx().real() < 0) lower_unclassified = s.cls == SaddleClass::Unclassified;
  v.require(lower_unclassified, "lower saddle is classified");
  std::vector<double> e = oracle_errors(rep, "1", "1-x-y-x*y", 1, 1, {100, 200});
  v.require(e[1] < kDelannoyError, "error at n = 200 is " + std::to_string(e[1]));
  v.require(e[1] < e[0], "error does not decrease from n = 100");
  double t = seconds_since(t0);
  v.require(t < kDelannoySeconds, "runtime " + std::to_string(t) + " s");
  v.why << (v.ok ? "" : "; ") << "errors " << e[0] << " (n = 100), " << e[1] << " (n = 200); " << t << " s";
  return v;
}

Verdict criterion6() {
  Verdict v;
  AsymptoticReport rep = analyze_direction(P("1"), P("1-x-y"), 2, 1);
  const Classification& a = rep.analysis;
  v.require(a.xi.size() == 1, "Xi has " + std::to_string(a.xi.size()) + " points");
  if (a.xi.size() == 1) {
    const AlgebraicPoint& p = a.saddles[a.xi[0]].cp.point;
    v.require(is_rational(p.x, Rational(2, 3)) && is_rational(p.y, Rational(1, 3)), "Xi point is not (2/3, 1/3)");
  }
  std::vector<long> ns{50, 100};
  std::vector<double> e = oracle_errors(rep, "1", "1-x-y", 2, 1, ns);
  for (size_t i = 0; i < ns.size(); ++i)
    v.require(e[i] <= kOffDiagonalRate / static_cast<double>(ns[i]), "error " + std::to_string(e[i]) + " at n = " + std::to_string(ns[i]));
  v.why << (v.ok ? "" : "; ") << "errors " << e[0] << " (n = 50), " << e[1] << " (n = 100)";
  return v;
}

Verdict criterion7() {
  Verdict v;
  struct Entry {
    const char* den;
    long r, s;
  };
  long worst = 0;
  for (Entry e : {Entry{"1-x-y", 1, 1}, Entry{"1-x-y-x*y", 1, 1}, Entry{"1-x-y", 2, 1}}) {
    std::string tag = std::string(e.den) + " " + std::to_string(e.r) + ":" + std::to_string(e.s);
    MorseOptions lo, hi;
    lo.prec = kDefaultPrec;
    hi.prec = 2 * kDefaultPrec;
    Classification a = classify_saddles(P(e.den), e.r, e.s, lo), b = classify_saddles(P(e.den), e.r, e.s, hi);
    worst = std::max({worst, a.total_steps, b.total_steps});
    v.require(a.total_steps <= kMaxTotalSteps && b.total_steps <= kMaxTotalSteps, tag + ": step cap exceeded");
    v.require(a.xi == b.xi, tag + ": Xi differs");
    for (size_t k = 0; k < a.xi.size() && k < b.xi.size(); ++k)
      v.require(points_equal(a.saddles[a.xi[k]].cp.point, b.saddles[b.xi[k]].cp.point), tag + ": Xi points differ");
    v.require(a.saddles.size() == b.saddles.size(), tag + ": saddle count differs");
    for (size_t k = 0; k < a.saddles.size() && k < b.saddles.size(); ++k) {
      v.require(a.saddles[k].cls == b.saddles[k].cls, tag + ": class differs at saddle " + std::to_string(k));
      v.require(a.saddles[k].cycle == b.saddles[k].cycle, tag + ": cycle differs at saddle " + std::to_string(k));
    }
    v.require(a.c_star_level && b.c_star_level && b.c_star.rad() < a.c_star.rad(), tag + ": c* radius not smaller");
  }
  v.why << (v.ok ? "" : "; ") << "3 battery entries at 128 and 256 bits, at most " << worst << " ascent steps per run";
  return v;
}

Verdict criterion8() {
  Verdict v;
  DirectionDecomposition lin = decompose_directions(P("1"), P("1-x-y"), {}, false);
  v.require(lin.bad.empty() && lin.monkey.empty() && lin.breakpoints.empty(), "1 - x - y has breakpoints");
  v.require(lin.intervals.size() == 1 && !lin.intervals[0].lower && !lin.intervals[0].upper,
            "1 - x - y is not a single interval (0, inf)");
  DirectionDecomposition eg = decompose_directions(P("1"), P(kEg), {}, false);
  v.require(eg.bad == std::vector<Rational>{Rational(1, 2), Rational(2)}, "bad differs from {1/2, 2}");
  int from_bad = 0;
  for (const auto& b : eg.breakpoints) {
    bool is_bad = std::find(b.sources.begin(), b.sources.end(), "bad") != b.sources.end();
    if (is_bad) {
      v.require(b.exact && (*b.exact == Rational(1, 2) || *b.exact == Rational(2)), "unexpected bad breakpoint");
      ++from_bad;
    }
  }
  v.require(from_bad == 2, "bad breakpoints missing");
  size_t monkey_points = 0;
  for (const auto& b : eg.breakpoints)
    if (std::find(b.sources.begin(), b.sources.end(), "monkey") != b.sources.end()) ++monkey_points;
  v.require(monkey_points == eg.monkey.size(), "monkey roots not all reported as breakpoints");
  // partition: sorted breakpoints, consecutive intervals sharing endpoints, representatives inside
  v.require(eg.intervals.size() == eg.breakpoints.size() + 1, "interval count");
  for (size_t i = 0; i + 1 < eg.breakpoints.size(); ++i)
    v.require(eg.breakpoints[i].value.enclosure.real().certainly_less(eg.breakpoints[i + 1].value.enclosure.real()),
              "breakpoints not strictly increasing");
  for (size_t i = 0; i < eg.intervals.size(); ++i) {
    const IntervalReport& iv = eg.intervals[i];
    v.require((i == 0 ? !iv.lower : iv.lower == i - 1) && (i + 1 == eg.intervals.size() ? !iv.upper : iv.upper == i),
              "intervals do not tile (0, inf)");
    RealBall lam = RealBall::from(iv.representative.lambda(), 128);
    if (iv.lower) v.require(eg.breakpoints[*iv.lower].value.enclosure.real().certainly_less(lam), "representative below interval");
    if (iv.upper) v.require(lam.certainly_less(eg.breakpoints[*iv.upper].value.enclosure.real()), "representative above interval");
  }
  v.why << (v.ok ? "" : "; ") << "1 - x - y: 1 interval; example: " << eg.breakpoints.size() << " breakpoints (bad 2, bad_y "
        << eg.bad_y.size() << ", monkey " << eg.monkey.size() << "), " << eg.intervals.size() << " intervals";
  return v;
}

Verdict criterion9() {
  Verdict v;
  std::string out;
  int smooth = run_cli("--den '(1-x-y)^2' --direction 1:1 --json - --no-timestamp", &out);
  v.require(smooth == 2 && out.find("pole curve not smooth") != std::string::npos, "(1-x-y)^2: exit " + std::to_string(smooth));
  int binom = run_cli("--den '1-x*y' --decompose --json - --no-timestamp", &out);
  v.require(binom == 2 && out.find("binomial") != std::string::npos, "1-xy decompose: exit " + std::to_string(binom));
  bool monkey_rejects = false;
  try {
    monkey_directions(P("1-x*y"));
  } catch (const Error& e) {
    monkey_rejects = e.kind() == ErrorKind::Assumption;
  }
  v.require(monkey_rejects, "monkey_directions accepts 1-xy");
  int origin = run_cli("--den 'x+y-x*y' --direction 1:1 --json - --no-timestamp", &out);
  v.require(origin == 2 && out.find("Q(0,0) = 0") != std::string::npos, "Q(0,0) = 0: exit " + std::to_string(origin));
  v.why << (v.ok ? "" : "; ") << "exit codes " << smooth << ", " << binom << ", " << origin;
  return v;
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* name;
    Verdict (*run)();
  };
  const Item items[] = {{1, "ball inclusion", criterion1},       {2, "Krawczyk-Rump soundness", criterion2},
                        {3, "example reproduction", criterion3}, {4, "binomial battery", criterion4},
                        {5, "Delannoy battery", criterion5},     {6, "off-diagonal direction", criterion6},
                        {7, "classification robustness", criterion7}, {8, "direction decomposition", criterion8},
                        {9, "assumption gating", criterion9}};
  int failed = 0;
  for (const Item& it : items) {
    Verdict v;
    try {
      v = it.run();
    } catch (const std::exception& e) {
      v.ok = false;
      v.why << "exception: " << e.what();
    }
    std::cout << "criterion " << it.id << " (" << it.name << "): " << (v.ok ? "PASS" : "FAIL") << " [" << v.why.str()
              << "]" << std::endl;
    failed += v.ok ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
