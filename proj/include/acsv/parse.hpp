#pragma once

#include <string>

#include "acsv/sparse_poly.hpp"

namespace acsv {

// Polynomial text over x, y with rational coefficients, + - * / ^ and parentheses.
// Division is only by nonzero constants. Errors are ErrorKind::Parse with a position.
SparsePoly parse_polynomial(const std::string& text);

// "R:S" with positive integers.
std::pair<long, long> parse_direction(const std::string& text);

}  // namespace acsv
