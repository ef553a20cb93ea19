#pragma once

#include "exreg/real.hpp"

#include <string>
#include <string_view>

namespace exreg {

/// Arbitrary-precision complex number. Precision is carried by the parts;
/// results of binary operations carry the smaller precision.
class APComplex {
 public:
  APComplex() = default;
  explicit APComplex(mpfr_prec_t bits) : re_(bits), im_(bits) {}
  APComplex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  APComplex(long re, mpfr_prec_t bits) : re_(re, bits), im_(0L, bits) {}

  static APComplex from_decimal(std::string_view re, std::string_view im, int digits);
  static APComplex from_rational(const mpq_class& re, const mpq_class& im, mpfr_prec_t bits);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }

  mpfr_prec_t precision() const { return std::min(re_.precision(), im_.precision()); }
  int digits() const { return bits_to_digits(precision()); }
  APComplex with_precision(mpfr_prec_t bits) const {
    return {re_.with_precision(bits), im_.with_precision(bits)};
  }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  Real abs() const { return hypot(re_, im_); }
  Real norm_sq() const { return re_ * re_ + im_ * im_; }
  APComplex conj() const { return {re_, -im_}; }
  APComplex inverse() const;

  /// "a+bi" with `digits` significant digits in each part.
  std::string to_string(int digits = 20) const;

  APComplex& operator+=(const APComplex& o);
  APComplex& operator-=(const APComplex& o);
  APComplex& operator*=(const APComplex& o);
  APComplex& operator/=(const APComplex& o);

  friend APComplex operator+(const APComplex& a, const APComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend APComplex operator-(const APComplex& a, const APComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend APComplex operator*(const APComplex& a, const APComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend APComplex operator/(const APComplex& a, const APComplex& b) { return a * b.inverse(); }
  friend APComplex operator-(const APComplex& a) { return {-a.re_, -a.im_}; }
  friend APComplex operator*(const APComplex& a, long k) { return {a.re_ * k, a.im_ * k}; }
  friend APComplex operator*(long k, const APComplex& a) { return a * k; }
  friend APComplex operator*(const APComplex& a, const Real& k) { return {a.re_ * k, a.im_ * k}; }
  friend APComplex operator/(const APComplex& a, long k) { return {a.re_ / k, a.im_ / k}; }
  friend APComplex operator+(const APComplex& a, long k) { return {a.re_ + k, a.im_}; }
  friend APComplex operator-(const APComplex& a, long k) { return {a.re_ - k, a.im_}; }

 private:
  Real re_;
  Real im_;
};

/// Principal square root: nonnegative real part; nonnegative imaginary part
/// when the real part is zero.
APComplex sqrt(const APComplex& z);

/// The imaginary unit at the given precision.
APComplex imag_unit(mpfr_prec_t bits);

// Scalar-domain hooks used by Mat2<S>.
inline APComplex one_like(const APComplex& x) { return APComplex(1L, x.precision()); }
inline APComplex zero_like(const APComplex& x) { return APComplex(0L, x.precision()); }

}  // namespace exreg
