#pragma once

#include "exreg/apcomplex.hpp"
#include "exreg/poly.hpp"

#include <vector>

namespace exreg {

/// All complex roots of a polynomial with complex coefficients (constant
/// term first, nonzero leading coefficient) by Aberth–Ehrlich iteration at the
/// coefficients' precision. Roots of multiplicity > 1 converge slowly and are
/// returned with reduced accuracy; callers wanting accuracy pass squarefree input.
std::vector<APComplex> aberth_roots(const std::vector<APComplex>& coeffs, int max_iter = 500);

/// Roots of the squarefree part of p, accurate to about `digits` digits.
/// Precision is doubled (up to twice) until every root's Newton correction
/// is below a tenth of the smallest root separation.
std::vector<APComplex> rational_poly_roots(const QPoly& p, int digits);

/// Newton polish of one root of a rational polynomial at the root's precision.
APComplex polish_root(const QPoly& p, APComplex z, int steps = 8);

/// The root of p nearest to `approx`.
APComplex nearest_root(const QPoly& p, const APComplex& approx, int digits);

}  // namespace exreg
