#pragma once

#include <string>

#include "isomono/matrix.hpp"

namespace isomono {

/// Polynomial text without spaces, e.g. "2*t-1".
std::string format_poly(const MultiPoly& p);

/// Rational function text with the denominator split into linear factors
/// where they are rational, e.g. "(2*t-1)/(t*(t-1))" or "1/(4*t*(t-1))".
/// The output stays inside the expression grammar.
std::string format_rf(const RationalFunction& f);

/// Rows of a matrix as "[[a, b], [c, d]]".
std::string format_matrix(const RMatrix& m);

}  // namespace isomono
