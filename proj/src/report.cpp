#include "acsv/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include "acsv/parse.hpp"

namespace acsv {

using nlohmann::json;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return kExitUsage;
    case ErrorKind::Assumption: return kExitAssumption;
    case ErrorKind::CapExceeded:
    case ErrorKind::PrecisionExhausted: return kExitCap;
    default: return kExitFailure;
  }
}

namespace {

constexpr const char* kVersion = "1.0.0";

// Exact value of a decimal string such as "-1.2500e-03".
Rational decimal_value(const std::string& s) {
  size_t e = s.find_first_of("eE");
  std::string mant = s.substr(0, e);
  long exp10 = e == std::string::npos ? 0 : std::stol(s.substr(e + 1));
  size_t dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  Rational v{Integer(mant)};
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  if (exp10 >= 0) v *= Rational(p);
  else v /= Rational(p);
  return v;
}

std::string print_near(const DyadicFloat& v, int digits) {
  if (v.is_zero()) return "0";
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v.raw());
  return buf.data();
}

std::string print_up(const DyadicFloat& v) {
  if (v.is_zero()) return "0";
  std::vector<char> buf(48);
  mpfr_snprintf(buf.data(), buf.size(), "%.2RUe", v.raw());
  return buf.data();
}

// |printed − v| rounded up.
DyadicFloat print_error(const DyadicFloat& v, const std::string& printed) {
  Rational d = decimal_value(printed) - v.to_rational();
  if (sgn(d) < 0) d = -d;
  return DyadicFloat::from_rational(d, kRadPrec, MPFR_RNDU);
}

DyadicFloat add_up(const DyadicFloat& a, const DyadicFloat& b) {
  DyadicFloat r(kRadPrec);
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
  return r;
}

struct Printed {
  std::string re, im, rad;
};

Printed print_complex(const ComplexBall& b, int digits) {
  Printed p{print_near(b.re(), digits), print_near(b.im(), digits), ""};
  DyadicFloat e = add_up(print_error(b.re(), p.re), print_error(b.im(), p.im));
  p.rad = print_up(add_up(b.rad(), e));
  return p;
}

int json_digits(long prec) { return static_cast<int>(std::min<long>(40, prec * 30103 / 100000 + 2)); }

json ball_json(const ComplexBall& b) {
  Printed p = print_complex(b, json_digits(b.prec()));
  return {{"re", p.re}, {"im", p.im}, {"rad", p.rad}};
}

json ball_json(const RealBall& b) {
  std::string mid = print_near(b.mid(), json_digits(b.prec()));
  return {{"mid", mid}, {"rad", print_up(add_up(b.rad(), print_error(b.mid(), mid)))}};
}

json algnum_json(const AlgebraicNumber& a) {
  return {{"defining", to_string(a.defining, "t")}, {"enclosure", ball_json(a.enclosure)}};
}

json error_json(const std::string& stage, ErrorKind k, const std::string& msg) {
  return {{"stage", stage}, {"kind", kind_name(k)}, {"message", msg}};
}

std::string rational_list(const std::vector<Rational>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "}";
}

std::vector<long> oracle_scales(long N) {
  std::vector<long> ns;
  for (long n : {N / 4, N / 2, N})
    if (n > 0 && (ns.empty() || ns.back() != n)) ns.push_back(n);
  return ns;
}

std::string timestamp_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Job {
  const JobSpec& spec;
  SparsePoly P, Q;
  MorseOptions opt;
  std::ostringstream text;
  int exit_code = kExitOk;

  void fail(ErrorKind k) {
    int c = exit_code_for(k);
    if (exit_code == kExitOk || c < exit_code) exit_code = c;
  }

  json assumptions() {
    json checks = json::array();
    auto add = [&](const char* name, const char* statement, bool ok) {
      checks.push_back({{"name", name}, {"statement", statement}, {"ok", ok}});
      return ok;
    };
    bool ok = add("origin", "Q(0,0) != 0", sgn(Q.coeff(0, 0)) != 0);
    ok = add("bivariate", "Q involves both x and y", Q.degree(Var::X) > 0 && Q.degree(Var::Y) > 0) && ok;
    ok = add("not_binomial", "Q has at least three terms", !is_binomial(Q)) && ok;
    if (ok) add("smooth", "Q = Q_x = Q_y = 0 has no solution", is_smooth(Q));
    json out{{"checks", checks}, {"ok", true}};
    try {
      check_assumptions(P, Q);
    } catch (const Error& e) {
      out["ok"] = false;
      out["error"] = error_json("assumptions", e.kind(), e.what());
      text << "assumptions: FAILED (" << e.what() << ")\n";
      fail(e.kind());
      return out;
    }
    text << "assumptions: ok\n";
    return out;
  }

  json oracle(const AsymptoticReport& rep) {
    const long r = rep.analysis.r, s = rep.analysis.s, N = spec.oracle;
    json rows = json::array();
    try {
      CoefficientTable t = series_coefficients(P, Q, N * r, N * s, spec.max_cells);
      auto est = [&](long a, long b) { return leading_estimate(rep, a, b, rep.analysis.prec); };
      text << "  oracle (a[n*" << r << ", n*" << s << "] / estimate):\n";
      for (const RatioEntry& e : ratio_diagnostic(t, est, r, s, oracle_scales(N), rep.analysis.prec)) {
        json row{{"n", e.n}, {"r", e.n * r}, {"s", e.n * s}, {"coefficient", to_string(e.coefficient)},
                 {"flagged", e.flagged}};
        if (e.estimate) row["estimate"] = ball_json(*e.estimate);
        if (e.ratio) {
          row["ratio"] = ball_json(*e.ratio);
          row["error"] = e.error;
        }
        if (!e.note.empty()) row["note"] = e.note;
        rows.push_back(row);
        text << "    n = " << e.n << ": ";
        if (e.ratio) text << "ratio " << format_ball(*e.ratio, 12) << ", |ratio - 1| = " << e.error << "\n";
        else text << "flagged (" << e.note << ")\n";
      }
    } catch (const Error& e) {
      text << "  oracle: " << e.what() << "\n";
      fail(e.kind());
      return {{"rows", rows}, {"error", error_json("oracle", e.kind(), e.what())}};
    }
    return {{"rows", rows}};
  }

  json direction(const AsymptoticReport& rep) {
    const Classification& a = rep.analysis;
    json d{{"direction", std::to_string(a.r) + ":" + std::to_string(a.s)},
           {"precision", a.prec},
           {"total_steps", a.total_steps}};
    text << "direction " << a.r << ":" << a.s << " (precision " << a.prec << ", " << a.total_steps
         << " ascent steps)\n  saddles:\n";
    json saddles = json::array();
    for (size_t i = 0; i < a.saddles.size(); ++i) {
      const SaddleRecord& sr = a.saddles[i];
      AlgebraicPoint pt = refine_to_prec(sr.cp.point, a.prec);
      json exits = json::array();
      std::string ends;
      for (size_t e = 0; e < sr.paths.size(); ++e) {
        const AscentPath& p = sr.paths[e];
        json ex{{"region", to_string(p.end)}, {"steps", p.steps}, {"chart_swaps", p.chart_swaps}};
        if (p.inherited_from >= 0) ex["inherited_from"] = p.inherited_from;
        exits.push_back(ex);
        ends += (e ? ", " : "") + std::string(to_string(p.end));
      }
      saddles.push_back({{"index", i},
                         {"x", algnum_json(pt.x)},
                         {"y", algnum_json(pt.y)},
                         {"height", ball_json(sr.cp.height)},
                         {"level", sr.cp.level},
                         {"order_k", sr.cp.order_k},
                         {"class", to_string(sr.cls)},
                         {"exits", exits}});
      text << "    #" << i << "  x = " << format_ball(pt.x.enclosure) << "\n        y = " << format_ball(pt.y.enclosure)
           << "\n        h = " << format_ball(sr.cp.height) << ", level " << sr.cp.level << ", k = " << sr.cp.order_k
           << ", class " << to_string(sr.cls);
      if (!sr.paths.empty()) text << ", exits [" << ends << "]";
      text << "\n";
    }
    d["saddles"] = saddles;
    if (a.c_star_level) {
      d["c_star"] = {{"level", *a.c_star_level}, {"value", ball_json(a.c_star)}};
      text << "  c* = " << format_ball(a.c_star) << "\n";
    } else {
      d["c_star"] = nullptr;
      text << "  c* undefined (no mixed saddle)\n";
    }
    d["xi"] = a.xi;
    json cycles = json::array();
    for (size_t i = 0; i < a.saddles.size(); ++i)
      if (!a.saddles[i].cycle.empty()) cycles.push_back({{"saddle", i}, {"coefficients", a.saddles[i].cycle}});
    d["cycles"] = cycles;
    text << "  Xi = {";
    for (size_t j = 0; j < a.xi.size(); ++j) text << (j ? ", " : "") << "#" << a.xi[j];
    text << "}\n";
    for (const auto& c : cycles) text << "  cycle #" << c["saddle"].get<size_t>() << ": " << c["coefficients"].dump() << "\n";

    json terms = json::array();
    for (const AsymptoticTerm& t : rep.terms) {
      terms.push_back({{"saddle", t.saddle},
                       {"x0", ball_json(t.x0)},
                       {"y0", ball_json(t.y0)},
                       {"radicand", algnum_json(t.K.radicand)},
                       {"constant_magnitude", ball_json(t.K.magnitude)},
                       {"phase", ball_json(t.phase)},
                       {"amplitude", ball_json(t.amplitude)},
                       {"polynomial_order", t.polynomial_order}});
    }
    d["estimate"] = {{"formula", "a(n*r, n*s) ~ sum over Xi of amplitude * x0^(-n*r) * y0^(-n*s) / sqrt(2*pi*n*(r+s))"},
                     {"terms", terms},
                     {"degenerate", rep.degenerate},
                     {"caveats", rep.caveats}};
    if (!rep.terms.empty()) {
      text << "  estimate: a(n*r, n*s) ~ sum over Xi of A * x0^(-n*r) * y0^(-n*s) / sqrt(2*pi*n*(r+s))\n";
      for (const AsymptoticTerm& t : rep.terms)
        text << "    #" << t.saddle << ": |K| = " << format_ball(t.K.magnitude) << ", A = " << format_ball(t.amplitude)
             << "\n";
    }
    for (const auto& c : rep.caveats) text << "  caveat: " << c << "\n";
    if (spec.oracle > 0 && !rep.terms.empty()) d["oracle"] = oracle(rep);
    else d["oracle"] = nullptr;
    return d;
  }

  // Single-direction analysis; errors land in the returned object.
  json analyze(long r, long s) {
    try {
      return direction(analyze_direction(P, Q, r, s, opt));
    } catch (const Error& e) {
      fail(e.kind());
      DirectionRatio d = DirectionRatio::reduced(r, s);
      text << "direction " << d.to_string() << ": FAILED (" << e.what() << ")\n";
      return {{"direction", d.to_string()}, {"error", error_json("classification", e.kind(), e.what())}};
    }
  }
};

}  // namespace

std::string format_ball(const ComplexBall& b, int digits) {
  Printed p = print_complex(b, digits);
  std::string s = p.re;
  if (!b.im().is_zero()) s += (p.im[0] == '-' ? " - " : " + ") + (p.im[0] == '-' ? p.im.substr(1) : p.im) + "i";
  return s + " +/- " + p.rad;
}

std::string format_ball(const RealBall& b, int digits) {
  std::string mid = print_near(b.mid(), digits);
  return mid + " +/- " + print_up(add_up(b.rad(), print_error(b.mid(), mid)));
}

JobOutcome run_job(const JobSpec& spec) {
  Job job{spec, {}, {}, {}, {}, kExitOk};
  json rep{{"tool", "acsv"}, {"version", kVersion}};
  if (spec.timestamp) rep["timestamp"] = timestamp_now();
  json input{{"numerator", spec.numerator},
             {"denominator", spec.denominator},
             {"mode", spec.decompose ? "decompose" : "direction"},
             {"analyze", spec.analyze},
             {"precision", spec.precision},
             {"max_precision", spec.max_precision},
             {"max_steps", spec.max_steps},
             {"oracle", spec.oracle},
             {"max_cells", spec.max_cells}};
  if (spec.direction) input["direction"] = std::to_string(spec.direction->first) + ":" + std::to_string(spec.direction->second);
  rep["input"] = input;
  auto finish = [&](const char* status) {
    rep["status"] = status;
    return JobOutcome{rep, job.text.str(), job.exit_code};
  };

  try {
    job.P = parse_polynomial(spec.numerator);
    job.Q = parse_polynomial(spec.denominator);
    if (spec.decompose == spec.direction.has_value())
      throw Error(ErrorKind::Parse, "exactly one of a direction and decompose mode is required");
    if (spec.direction && (spec.direction->first <= 0 || spec.direction->second <= 0))
      throw Error(ErrorKind::Parse, "direction entries must be positive integers");
    if (spec.precision < 16 || spec.precision > spec.max_precision)
      throw Error(ErrorKind::Parse, "precision must lie in [16, max precision]");
  } catch (const Error& e) {
    job.fail(e.kind() == ErrorKind::Parse ? ErrorKind::Parse : e.kind());
    rep["error"] = error_json("input", e.kind(), e.what());
    job.text << "input error: " << e.what() << "\n";
    return finish("error");
  }
  job.opt.prec = spec.precision;
  job.opt.max_prec = spec.max_precision;
  job.opt.max_steps = spec.max_steps;
  job.opt.keep_points = false;
  rep["numerator"] = job.P.to_string();
  rep["denominator"] = job.Q.to_string();
  job.text << "F = P/Q with\n  P = " << job.P.to_string() << "\n  Q = " << job.Q.to_string() << "\n";

  rep["assumptions"] = job.assumptions();
  if (!rep["assumptions"]["ok"].get<bool>()) {
    rep["error"] = rep["assumptions"]["error"];
    return finish("error");
  }

  json dirs = json::array();
  try {
    if (spec.decompose) {
      DirectionDecomposition d = decompose_directions(job.P, job.Q, job.opt, false);
      json bad = json::array(), bad_y = json::array(), monkey = json::array(), bps = json::array();
      for (const auto& q : d.bad) bad.push_back(to_string(q));
      for (const auto& q : d.bad_y) bad_y.push_back(to_string(q));
      for (const auto& m : d.monkey) monkey.push_back(algnum_json(m));
      job.text << "bad = " << rational_list(d.bad) << ", bad_y = " << rational_list(d.bad_y) << ", monkey: "
               << d.monkey.size() << " positive real\n  breakpoints:";
      for (const Breakpoint& b : d.breakpoints) {
        json j = algnum_json(b.value);
        j["sources"] = b.sources;
        if (b.exact) j["exact"] = to_string(*b.exact);
        bps.push_back(j);
        job.text << " " << (b.exact ? to_string(*b.exact) : format_ball(b.value.enclosure.real(), 10));
      }
      job.text << "\n";
      rep["bad"] = bad;
      rep["bad_y"] = bad_y;
      rep["monkey"] = monkey;
      rep["breakpoints"] = bps;
      json intervals = json::array();
      for (size_t i = 0; i < d.intervals.size(); ++i) {
        const IntervalReport& iv = d.intervals[i];
        auto end = [&](const std::optional<size_t>& k, const char* none) -> json {
          return k ? json(*k) : json(none);
        };
        intervals.push_back({{"lower", end(iv.lower, "0")},
                             {"upper", end(iv.upper, "inf")},
                             {"representative", iv.representative.to_string()},
                             {"direction_index", spec.analyze ? json(i) : json(nullptr)}});
        job.text << "interval " << i << ": representative " << iv.representative.to_string() << "\n";
        if (spec.analyze) dirs.push_back(job.analyze(iv.representative.r, iv.representative.s));
      }
      rep["intervals"] = intervals;
      rep["uniformity"] = "estimates hold uniformly over compact subintervals of each interval";
    } else {
      rep["bad"] = json::array();
      for (const auto& q : bad_directions(job.Q)) rep["bad"].push_back(to_string(q));
      rep["bad_y"] = json::array();
      for (const auto& q : bad_directions_y(job.Q)) rep["bad_y"].push_back(to_string(q));
      dirs.push_back(job.analyze(spec.direction->first, spec.direction->second));
    }
  } catch (const Error& e) {
    job.fail(e.kind());
    rep["error"] = error_json(spec.decompose ? "decompose" : "geometry", e.kind(), e.what());
    job.text << "FAILED: " << e.what() << "\n";
  }
  rep["directions"] = dirs;
  return finish(job.exit_code == kExitOk ? "ok" : "error");
}

}  // namespace acsv
