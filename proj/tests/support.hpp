// Shared generators for the property tests.
#pragma once

#include <random>

#include "acsv/sparse_poly.hpp"

namespace testsupport {

using acsv::QPoly;
using acsv::Rational;
using acsv::SparsePoly;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(uint64_t seed) : rng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(long num_bound = 9, long den_bound = 5) {
    Rational q(integer(-num_bound, num_bound), integer(1, den_bound));
    q.canonicalize();
    return q;
  }
  Rational nonzero_rational(long num_bound = 9, long den_bound = 5) {
    Rational q;
    while (sgn(q) == 0) q = rational(num_bound, den_bound);
    return q;
  }

  SparsePoly sparse(int max_deg, int max_terms) {
    SparsePoly p;
    int n = static_cast<int>(integer(1, max_terms));
    for (int k = 0; k < n; ++k) {
      int i = static_cast<int>(integer(0, max_deg)), j = static_cast<int>(integer(0, max_deg - i));
      p = p + SparsePoly::monomial(rational(), i, j);
    }
    return p;
  }

  QPoly uni(int deg, long bound = 9) {
    std::vector<Rational> c;
    for (int i = 0; i < deg; ++i) c.push_back(Rational(integer(-bound, bound)));
    c.push_back(Rational(integer(1, bound)));
    return QPoly(c);
  }
};

}  // namespace testsupport
