#pragma once

#include "exreg/apcomplex.hpp"
#include "exreg/lll.hpp"
#include "exreg/poly.hpp"

#include <stdexcept>

namespace exreg {

class RecognitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Guesses an integer polynomial with root x, of degree ≤ max_degree and
/// coefficients below 10^height_digits. Uses one LLL run on the embedding of
/// (1, x, …, x^max_degree) and returns the gcd of all relations found in the
/// reduced basis, normalized (primitive, squarefree, positive leading).
/// The result is a guess; verify it exactly before trusting it.
IntPoly algdep(const APComplex& x, int max_degree, int height_digits = 12);

/// Rational coefficients c with x ≈ Σ cⱼ zʲ (j < deg z_minpoly), from an
/// integer relation among (1, z, …, z^{n−1}, x) whose x-coefficient (the
/// common denominator) is at most denom_bound in absolute value.
QPoly express_in_field(const APComplex& x, const APComplex& z, const IntPoly& z_minpoly,
                       long denom_bound = 64);

/// Row-lattice used by both routines: identity block plus the scaled real and
/// imaginary parts of the given values.
IntMatrix relation_lattice(const std::vector<APComplex>& values, int scale_digits);

}  // namespace exreg
