#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <string_view>

namespace exreg {

/// Binary precision needed for `digits` significant decimal digits (plus guard bits).
mpfr_prec_t digits_to_bits(int digits);
/// Decimal digits faithfully carried by `bits` of mantissa.
int bits_to_digits(mpfr_prec_t bits);

/// Arbitrary-precision real number owning an mpfr_t.
///
/// Precision belongs to the value. Binary operations round to the smaller
/// precision of the two operands; operations with machine integers keep the
/// precision of the Real operand. Rounding is always to nearest.
class Real {
 public:
  Real();
  explicit Real(mpfr_prec_t bits);
  Real(long value, mpfr_prec_t bits);
  Real(const mpz_class& value, mpfr_prec_t bits);
  Real(const mpq_class& value, mpfr_prec_t bits);

  /// Parses a decimal literal (e.g. "-1.252448658", "3e-5"); throws on malformed input.
  static Real from_string(std::string_view text, mpfr_prec_t bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  /// Copy rounded (or zero-extended) to a new precision.
  Real with_precision(mpfr_prec_t bits) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Nearest integer (ties away from zero).
  mpz_class round_to_integer() const;
  /// Exact binary value as a rational.
  mpq_class to_rational() const;
  /// Base-2 exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
  long exponent2() const;
  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);
  friend Real operator*(const Real& a, long k);
  friend Real operator*(long k, const Real& a) { return a * k; }
  friend Real operator/(const Real& a, long k);
  friend Real operator+(const Real& a, long k);
  friend Real operator-(const Real& a, long k);

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

Real sqrt(const Real& x);
Real abs(const Real& x);
Real hypot(const Real& x, const Real& y);
/// 10^k at the given precision.
Real pow10(long k, mpfr_prec_t bits);
Real log10(const Real& x);

}  // namespace exreg
