#include "acsv/parse.hpp"

#include <cctype>

namespace acsv {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  SparsePoly run() {
    SparsePoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, "parse error at position " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SparsePoly expr() {
    SparsePoly p = term();
    for (;;) {
      if (eat('+')) p = p + term();
      else if (eat('-')) p = p - term();
      else return p;
    }
  }

  SparsePoly term() {
    SparsePoly p = unary();
    for (;;) {
      if (eat('*')) {
        p = p * unary();
      } else if (eat('/')) {
        size_t at = pos_;
        SparsePoly d = unary();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division only by a nonzero constant");
        }
        p = Rational(1 / d.coeff(0, 0)) * p;
      } else {
        return p;
      }
    }
  }

  SparsePoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  SparsePoly power() {
    SparsePoly base = primary();
    if (!eat('^')) return base;
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    if (pos_ - start > 3) fail("exponent too large");
    return base.pow(std::stoi(s_.substr(start, pos_ - start)));
  }

  SparsePoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      SparsePoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == 'x') {
      ++pos_;
      return SparsePoly::x();
    }
    if (c == 'y') {
      ++pos_;
      return SparsePoly::y();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return SparsePoly::constant(Rational(Integer(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) fail("unknown variable '" + std::string(1, c) + "'");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

SparsePoly parse_polynomial(const std::string& text) { return Parser(text).run(); }

std::pair<long, long> parse_direction(const std::string& text) {
  auto colon = text.find(':');
  auto num = [&](const std::string& t) {
    if (t.empty() || t.size() > 9 || t.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::Parse, "direction must be R:S with positive integers");
    long v = std::stol(t);
    if (v <= 0) throw Error(ErrorKind::Parse, "direction must be R:S with positive integers");
    return v;
  };
  if (colon == std::string::npos) throw Error(ErrorKind::Parse, "direction must be R:S with positive integers");
  return {num(text.substr(0, colon)), num(text.substr(colon + 1))};
}

}  // namespace acsv
