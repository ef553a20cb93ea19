#include "exreg/apcomplex.hpp"

namespace exreg {

APComplex APComplex::from_decimal(std::string_view re, std::string_view im, int digits) {
  const auto bits = digits_to_bits(digits);
  return {Real::from_string(re, bits), Real::from_string(im, bits)};
}

APComplex APComplex::from_rational(const mpq_class& re, const mpq_class& im, mpfr_prec_t bits) {
  return {Real(re, bits), Real(im, bits)};
}

APComplex APComplex::inverse() const {
  Real d = norm_sq();
  return {re_ / d, -im_ / d};
}

std::string APComplex::to_string(int digits) const {
  std::string s = re_.to_string(digits);
  std::string i = im_.to_string(digits);
  if (i.empty() || i[0] != '-') i = "+" + i;
  return s + i + "i";
}

APComplex& APComplex::operator+=(const APComplex& o) { return *this = *this + o; }
APComplex& APComplex::operator-=(const APComplex& o) { return *this = *this - o; }
APComplex& APComplex::operator*=(const APComplex& o) { return *this = *this * o; }
APComplex& APComplex::operator/=(const APComplex& o) { return *this = *this / o; }

APComplex sqrt(const APComplex& z) {
  const auto bits = z.precision();
  if (z.is_zero()) return APComplex(bits);
  Real r = z.abs();
  if (z.re().sign() >= 0) {
    Real s = sqrt((r + z.re()) / 2L);
    return {s, z.im() / (s * 2L)};
  }
  Real t = sqrt((r - z.re()) / 2L);
  if (z.im().sign() < 0) t = -t;
  return {z.im() / (t * 2L), t};
}

APComplex imag_unit(mpfr_prec_t bits) { return {Real(0L, bits), Real(1L, bits)}; }

}  // namespace exreg
