#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

namespace exreg {

using IntMatrix = std::vector<std::vector<mpz_class>>;

class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact integral LLL on the rows of `basis` with δ = delta_num/delta_den
/// (default 99/100). Rows must be linearly independent.
IntMatrix lll_reduce(IntMatrix basis, long delta_num = 99, long delta_den = 100);

/// Checks size reduction (|μ_ij| ≤ 1/2) and the Lovász condition for every
/// consecutive pair, using exact rational Gram–Schmidt.
bool is_lll_reduced(const IntMatrix& basis, long delta_num = 99, long delta_den = 100);

/// Exact determinant (Bareiss) of a square integer matrix.
mpz_class determinant(const IntMatrix& m);

}  // namespace exreg
