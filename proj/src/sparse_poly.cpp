#include "acsv/sparse_poly.hpp"

#include <sstream>

namespace acsv {

// ---- rationals -------------------------------------------------------------

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  if (b.is_zero()) throw Error(ErrorKind::DegenerateInput, "division by zero Gaussian rational");
  Rational n = b.norm();
  GaussianRational p = a * b.conj();
  return {Rational(p.re / n), Rational(p.im / n)};
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const GaussianRational& z) {
  if (z.is_real()) return to_string(z.re);
  std::string s = sgn(z.re) != 0 ? to_string(z.re) + (sgn(z.im) > 0 ? "+" : "") : "";
  return s + to_string(z.im) + "*i";
}

Rational simplest_between(const Rational& lo, const Rational& hi, bool hi_inf) {
  if (!hi_inf && lo >= hi) throw Error(ErrorKind::DegenerateInput, "empty interval");
  if (sgn(lo) < 0) throw Error(ErrorKind::DegenerateInput, "simplest_between expects lo >= 0");
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  Rational n(Integer(fl + 1));
  if (hi_inf || n < hi) return n;
  Rational a = lo - Rational(fl), b = hi - Rational(fl);
  Rational inner = sgn(a) == 0 ? simplest_between(Rational(1 / b), Rational(0), true)
                               : simplest_between(Rational(1 / b), Rational(1 / a));
  return Rational(Rational(fl) + 1 / inner);
}

// ---- univariate helpers ----------------------------------------------------

QPoly primitive_part(const QPoly& p) {
  if (p.is_zero()) return p;
  Integer l = 1, g = 0;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Rational> c(p.coeffs());
  for (auto& v : c) {
    v *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  if (sgn(c.back()) < 0) g = -g;
  for (auto& v : c) v /= g;
  return QPoly(std::move(c));
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly A = primitive_part(a), B = primitive_part(b);
  if (A.degree() < B.degree()) std::swap(A, B);
  while (!B.is_zero()) {
    QPoly r = A.divmod(B).second;
    A = B;
    B = primitive_part(r);
  }
  return A.monic();
}

GPoly gcd(const GPoly& a, const GPoly& b) {
  GPoly A = a.monic(), B = b.monic();
  while (!B.is_zero()) {
    GPoly r = A.divmod(B).second;
    A = B;
    B = r.monic();
  }
  return A.monic();
}

QPoly exact_div(const QPoly& a, const QPoly& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) throw Error(ErrorKind::Internal, "inexact polynomial division");
  return q;
}

QPoly squarefree(const QPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::DegenerateInput, "squarefree part of zero polynomial");
  if (p.degree() == 0) return QPoly::constant(Rational(1));
  QPoly g = gcd(p, p.derivative());
  return primitive_part(exact_div(p, g));
}

GPoly squarefree(const GPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::DegenerateInput, "squarefree part of zero polynomial");
  if (p.degree() == 0) return GPoly::constant(GaussianRational(1));
  GPoly g = gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

GPoly to_gaussian(const QPoly& p) {
  std::vector<GaussianRational> c;
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return GPoly(std::move(c));
}

std::string to_string(const QPoly& p, const char* var) {
  SparsePoly s;
  for (int i = 0; i <= p.degree(); ++i) s = s + SparsePoly::monomial(p.coeff(i), i, 0);
  std::string out = s.to_string();
  if (std::string(var) != "x") {
    std::string r;
    for (char ch : out) r += (ch == 'x') ? std::string(var) : std::string(1, ch);
    return r;
  }
  return out;
}

// ---- SparsePoly ------------------------------------------------------------

SparsePoly::SparsePoly(const Terms& t) {
  for (const auto& [m, c] : t) add_term(m.first, m.second, c);
}

void SparsePoly::add_term(int i, int j, const Rational& c) {
  if (i < 0 || j < 0) throw Error(ErrorKind::DegenerateInput, "negative exponent");
  if (sgn(c) == 0) return;
  auto it = terms_.find({i, j});
  if (it == terms_.end()) {
    terms_.emplace(Monomial{i, j}, c);
  } else {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

SparsePoly SparsePoly::constant(const Rational& c) { return monomial(c, 0, 0); }
SparsePoly SparsePoly::x() { return monomial(Rational(1), 1, 0); }
SparsePoly SparsePoly::y() { return monomial(Rational(1), 0, 1); }

SparsePoly SparsePoly::monomial(const Rational& c, int i, int j) {
  SparsePoly p;
  p.add_term(i, j, c);
  return p;
}

SparsePoly SparsePoly::from_uni(const QPoly& p, Var v) {
  SparsePoly s;
  for (int k = 0; k <= p.degree(); ++k) {
    if (v == Var::X) s.add_term(k, 0, p.coeff(k));
    else s.add_term(0, k, p.coeff(k));
  }
  return s;
}

Rational SparsePoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

bool SparsePoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0});
}

int SparsePoly::degree(Var v) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, v == Var::X ? m.first : m.second);
  return d;
}

int SparsePoly::low_degree(Var v) const {
  if (terms_.empty()) return 0;
  int d = 1 << 30;
  for (const auto& [m, c] : terms_) d = std::min(d, v == Var::X ? m.first : m.second);
  return d;
}

int SparsePoly::total_degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.first + m.second);
  return d;
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m.first, m.second, c);
  return r;
}

SparsePoly operator-(const SparsePoly& a) {
  SparsePoly r;
  for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, Rational(-c));
  return r;
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return a + (-b); }

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly r;
  for (const auto& [m1, c1] : a.terms_)
    for (const auto& [m2, c2] : b.terms_) r.add_term(m1.first + m2.first, m1.second + m2.second, Rational(c1 * c2));
  return r;
}

SparsePoly operator*(const Rational& c, const SparsePoly& a) { return SparsePoly::constant(c) * a; }

SparsePoly SparsePoly::pow(int e) const {
  if (e < 0) throw Error(ErrorKind::DegenerateInput, "negative power of a polynomial");
  SparsePoly r = constant(Rational(1)), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

SparsePoly SparsePoly::derivative(Var v, int order) const {
  SparsePoly r = *this;
  for (int k = 0; k < order; ++k) {
    SparsePoly d;
    for (const auto& [m, c] : r.terms_) {
      int e = v == Var::X ? m.first : m.second;
      if (e == 0) continue;
      if (v == Var::X) d.add_term(m.first - 1, m.second, Rational(c * e));
      else d.add_term(m.first, m.second - 1, Rational(c * e));
    }
    r = std::move(d);
  }
  return r;
}

SparsePoly SparsePoly::swap_vars() const {
  SparsePoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(Monomial{m.second, m.first}, c);
  return r;
}

SparsePoly SparsePoly::strip_monomial_factor() const {
  int a = low_degree(Var::X), b = low_degree(Var::Y);
  SparsePoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(Monomial{m.first - a, m.second - b}, c);
  return r;
}

template <class T>
static T power(const T& base, int e) {
  T r(1), b = base;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Rational SparsePoly::eval(const Rational& x, const Rational& y) const {
  Rational acc = 0;
  for (const auto& [m, c] : terms_) acc += c * power(x, m.first) * power(y, m.second);
  return acc;
}

GaussianRational SparsePoly::eval(const GaussianRational& x, const GaussianRational& y) const {
  GaussianRational acc;
  for (const auto& [m, c] : terms_) acc += GaussianRational(c) * power(x, m.first) * power(y, m.second);
  return acc;
}

std::vector<QPoly> SparsePoly::coeffs_in(Var v) const {
  int d = degree(v);
  std::vector<std::vector<Rational>> raw(static_cast<size_t>(std::max(d, 0)) + 1);
  for (const auto& [m, c] : terms_) {
    int k = v == Var::X ? m.first : m.second;
    int o = v == Var::X ? m.second : m.first;
    auto& slot = raw[static_cast<size_t>(k)];
    if (static_cast<int>(slot.size()) <= o) slot.resize(static_cast<size_t>(o) + 1);
    slot[static_cast<size_t>(o)] = c;
  }
  std::vector<QPoly> out;
  if (d < 0) return out;
  for (auto& r : raw) out.emplace_back(std::move(r));
  return out;
}

QPoly SparsePoly::specialize(Var keep, const Rational& value) const {
  std::vector<Rational> c(static_cast<size_t>(std::max(degree(keep), 0)) + 1);
  for (const auto& [m, coef] : terms_) {
    int k = keep == Var::X ? m.first : m.second;
    int o = keep == Var::X ? m.second : m.first;
    c[static_cast<size_t>(k)] += coef * power(value, o);
  }
  return QPoly(std::move(c));
}

QPoly SparsePoly::to_uni(Var v) const {
  if (degree(v == Var::X ? Var::Y : Var::X) > 0)
    throw Error(ErrorKind::DegenerateInput, "polynomial is not univariate in the requested variable");
  return specialize(v, Rational(0));
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Rational>> ts(terms_.begin(), terms_.end());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    if (da != db) return da > db;
    return a.first.first > b.first.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : ts) {
    Rational a = abs(c);
    bool neg = sgn(c) < 0;
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    std::string mono;
    auto var = [&](const char* name, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += name;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    var("x", m.first);
    var("y", m.second);
    if (mono.empty()) os << a.get_str();
    else if (a == 1) os << mono;
    else os << a.get_str() << "*" << mono;
  }
  return os.str();
}

SparsePoly poly_squarefree(const SparsePoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::DegenerateInput, "squarefree part of zero polynomial");
  Var v = p.degree(Var::Y) > 0 ? Var::Y : Var::X;
  return SparsePoly::from_uni(squarefree(p.to_uni(v)), v);
}

void check_degree_cap(const SparsePoly& p, const char* name) {
  if (p.total_degree() > kMaxTotalDegree)
    throw Error(ErrorKind::DegenerateInput, std::string(name) + " has total degree " +
                                                std::to_string(p.total_degree()) + " > " +
                                                std::to_string(kMaxTotalDegree));
}

}  // namespace acsv
