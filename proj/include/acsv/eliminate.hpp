#pragma once

#include <functional>

#include "acsv/algnum.hpp"

namespace acsv {

// Nonzero polynomial in t vanishing at N/D evaluated at every common zero of f, g in
// (C*)^2 where D does not vanish. Extra roots are possible; the degree is kept small by
// taking the gcd over several elimination orders.
QPoly value_annihilator(const SparsePoly& f, const SparsePoly& g, const SparsePoly& N, const SparsePoly& D);

// Polynomial whose roots include every product a·b of roots a, b of A.
QPoly product_annihilator(const QPoly& A);

// The root of A equal to a value known only through enclosures; value(prec) must return
// enclosures that shrink as prec grows.
AlgebraicNumber identify_root(const QPoly& A, const std::function<ComplexBall(long)>& value, long prec = kDefaultPrec);

}  // namespace acsv
