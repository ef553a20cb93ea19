#pragma once

#include "exreg/apcomplex.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace exreg {

/// Univariate polynomial over ℚ, constant term first, no trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<mpq_class> coeffs);
  static QPoly constant(const mpq_class& c);
  /// c·x^k
  static QPoly monomial(const mpq_class& c, int k);
  static QPoly x() { return monomial(1, 1); }

  const std::vector<mpq_class>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  mpq_class coeff(int k) const;
  mpq_class leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }

  QPoly monic() const;
  QPoly derivative() const;
  mpq_class eval(const mpq_class& x) const;
  APComplex eval(const APComplex& x) const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const mpq_class& k);
  friend QPoly operator-(const QPoly& a);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

/// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly operator%(const QPoly& a, const QPoly& b);
/// Monic gcd (zero if both are zero).
QPoly gcd(const QPoly& a, const QPoly& b);
/// Returns g = gcd(a, b) and s with s·a ≡ g (mod b).
std::pair<QPoly, QPoly> half_gcdext(const QPoly& a, const QPoly& b);
/// p / gcd(p, p'), monic.
QPoly squarefree_part(const QPoly& p);
/// Resultant via the Euclidean algorithm over ℚ.
mpq_class resultant(const QPoly& a, const QPoly& b);
mpq_class discriminant(const QPoly& p);

/// Integer polynomial, constant term first.
struct IntPoly {
  std::vector<mpz_class> coeffs;

  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> c);
  static IntPoly from_longs(const std::vector<long>& c);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  /// Content 1 and positive leading coefficient.
  IntPoly normalized() const;
  QPoly to_q() const;
  /// Primitive integer multiple of a rational polynomial.
  static IntPoly from_q(const QPoly& p);
  std::string to_string(const std::string& var = "x") const { return to_q().to_string(var); }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;
};

/// Number of distinct real roots (Sturm sequence of the squarefree part).
int count_real_roots(const QPoly& p);

/// True iff q is the square of a rational number.
bool is_rational_square(const mpq_class& q);

/// Sum of the coefficients' absolute values.
mpq_class l1_norm(const QPoly& p);

}  // namespace exreg
