#include "exreg/real.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace exreg {

namespace {
constexpr mpfr_prec_t kDefaultBits = 64;
constexpr double kLog2Of10 = 3.32192809488736234787;

mpfr_prec_t min_prec(const Real& a, const Real& b) {
  return std::min(a.precision(), b.precision());
}
}  // namespace

mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(std::max(digits, 1) * kLog2Of10)) + 16;
}

int bits_to_digits(mpfr_prec_t bits) {
  return std::max(1, static_cast<int>(std::floor((bits - 16) / kLog2Of10)));
}

Real::Real() : Real(kDefaultBits) {}

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(const mpz_class& value, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

Real Real::from_string(std::string_view text, mpfr_prec_t bits) {
  Real r(bits);
  std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::invalid_argument("malformed decimal literal '" + s + "'");
  }
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_precision(mpfr_prec_t bits) const {
  Real r(bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

mpz_class Real::round_to_integer() const {
  mpz_class z;
  Real t(precision());
  mpfr_round(t.v_, v_);
  mpfr_get_z(z.get_mpz_t(), t.v_, MPFR_RNDN);
  return z;
}

mpq_class Real::to_rational() const {
  if (is_zero()) return mpq_class(0);
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  mpq_class q(m);
  if (e >= 0) {
    mpz_class s;
    mpz_mul_2exp(s.get_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    q *= s;
  } else {
    mpz_class s;
    mpz_mul_2exp(s.get_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    q /= s;
  }
  q.canonicalize();
  return q;
}

long Real::exponent2() const {
  if (is_zero()) return -(1L << 40);
  return static_cast<long>(mpfr_get_exp(v_));
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (is_zero()) return "0";
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", std::max(digits - 1, 0), v_);
  return std::string(buf.data());
}

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

Real operator+(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, long k) {
  Real r(a.precision());
  mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, long k) {
  Real r(a.precision());
  mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, long k) {
  Real r(a.precision());
  mpfr_add_si(r.v_, a.v_, k, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, long k) {
  Real r(a.precision());
  mpfr_sub_si(r.v_, a.v_, k, MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(std::min(x.precision(), y.precision()));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow10(long k, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(k < 0 ? -k : k), MPFR_RNDN);
  if (k < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
  return r;
}

Real log10(const Real& x) {
  Real r(x.precision());
  mpfr_log10(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace exreg
