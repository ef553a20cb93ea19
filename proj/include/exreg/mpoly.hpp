#pragma once

#include "exreg/apcomplex.hpp"
#include "exreg/numberfield.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace exreg {

/// Packed exponent vector: up to four variables, 16 bits each. The variable
/// of highest precedence sits in the top bits, so lex order is integer order.
using Monomial = std::uint64_t;

constexpr int kMaxVars = 4;
constexpr Monomial kExpMask = 0xFFFF;
constexpr Monomial kHighBits = 0x8000800080008000ULL;

inline int mono_shift(int var) { return 16 * (kMaxVars - 1 - var); }
inline unsigned mono_exp(Monomial m, int var) { return static_cast<unsigned>((m >> mono_shift(var)) & kExpMask); }
inline Monomial mono_var(int var, unsigned e = 1) { return static_cast<Monomial>(e) << mono_shift(var); }
/// a | b, valid while every exponent stays below 2^15.
inline bool mono_divides(Monomial a, Monomial b) { return (((b | kHighBits) - a) & kHighBits) == kHighBits; }
Monomial mono_lcm(Monomial a, Monomial b);
inline bool mono_coprime(Monomial a, Monomial b) {
  for (int v = 0; v < kMaxVars; ++v)
    if (mono_exp(a, v) && mono_exp(b, v)) return false;
  return true;
}
unsigned mono_degree(Monomial m);

class MPolyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Multivariate polynomial over ℚ in single-letter variables listed by
/// precedence (e.g. "zrqp": z > r > q > p in lex order). Terms are kept
/// sorted in decreasing order with no zero coefficients.
class MPoly {
 public:
  struct Term {
    Monomial mono;
    mpq_class coeff;
  };

  MPoly() = default;
  explicit MPoly(std::string vars);
  MPoly(std::string vars, std::vector<Term> terms);
  static MPoly constant(const std::string& vars, const mpq_class& c);
  static MPoly variable(const std::string& vars, char name, unsigned exponent = 1);

  const std::string& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == 0); }
  Monomial leading_monomial() const { return terms_.front().mono; }
  const mpq_class& leading_coeff() const { return terms_.front().coeff; }
  int var_index(char name) const;
  unsigned degree_in(int var) const;
  unsigned total_degree() const;
  /// Bit v set when variable v occurs.
  unsigned support() const;
  /// True when at most the variable `var` occurs.
  bool is_univariate_in(int var) const { return (support() & ~(1u << var)) == 0; }

  MPoly monic() const;
  /// Same polynomial over another ordering of (a superset of) the variables.
  MPoly reorder(const std::string& new_vars) const;
  MPoly partial(int var) const;
  /// Rename variables letter by letter, keeping the variable list.
  MPoly substitute_names(const std::string& from, const std::string& to) const;

  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const mpq_class& k);
  friend MPoly operator-(const MPoly& a);
  friend bool operator==(const MPoly& a, const MPoly& b);
  /// c·m·a
  MPoly mul_term(Monomial m, const mpq_class& c) const;

  /// Evaluates at values indexed like vars().
  template <class S>
  S eval(const std::vector<S>& values) const;

  std::string to_string() const;

 private:
  void check_same_ring(const MPoly& o) const;
  std::string vars_;
  std::vector<Term> terms_;
};

/// Parses text such as "rq+rp-r+qp-q-p+1", "p^4-2p^2+4", "2*z^2 - q*z + 1",
/// "(p-1)(p+1)" over the given variables. Juxtaposition means multiplication.
MPoly parse_mpoly(const std::string& text, const std::string& vars);

/// Quotient if b divides a exactly, else nullopt.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);

/// Remainder of full reduction by `divisors` (lex order, multivariate division).
MPoly reduce(const MPoly& f, const std::vector<MPoly>& divisors);

/// Lifts a rational into the scalar domain of `like` (used by MPoly::eval).
APComplex scalar_from_rational(const APComplex& like, const mpq_class& c);
inline NFElement scalar_from_rational(const NFElement& like, const mpq_class& c) {
  return NFElement::rational(like.field(), c);
}
inline mpq_class scalar_from_rational(const mpq_class&, const mpq_class& c) { return c; }
inline mpq_class zero_like(const mpq_class&) { return 0; }
inline mpq_class one_like(const mpq_class&) { return 1; }

template <class S>
S MPoly::eval(const std::vector<S>& values) const {
  if (values.size() < vars_.size()) throw MPolyError("MPoly::eval: too few values");
  if (values.empty()) throw MPolyError("MPoly::eval: no values");
  S acc = zero_like(values[0]);
  for (const auto& t : terms_) {
    S term = one_like(values[0]);
    for (int v = 0; v < static_cast<int>(vars_.size()); ++v) {
      for (unsigned e = mono_exp(t.mono, v); e > 0; --e) term = term * values[static_cast<size_t>(v)];
    }
    acc = acc + term * scalar_from_rational(values[0], t.coeff);
  }
  return acc;
}

}  // namespace exreg
