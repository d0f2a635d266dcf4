#pragma once

#include <span>
#include <vector>

#include "sqcode/field.hpp"

namespace sqcode::poly {

// Dense univariate polynomials over a Field, coefficients low-to-high.
// The zero polynomial is the empty vector.
using Poly = std::vector<Fe>;

Poly trim(Poly p);
int degree(const Poly& p);  // -1 for the zero polynomial
Fe eval(const Field& f, const Poly& p, Fe x);
Poly add(const Field& f, const Poly& a, const Poly& b);
Poly mul(const Field& f, const Poly& a, const Poly& b);
Poly scale(const Field& f, const Poly& a, Fe c);

// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> divmod(const Field& f, const Poly& a, const Poly& b);

// Unique interpolating polynomial of degree < xs.size() through the given
// points; the xs must be pairwise distinct.
Poly interpolate(const Field& f, std::span<const Fe> xs, std::span<const Fe> ys);

}  // namespace sqcode::poly
