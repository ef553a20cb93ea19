#pragma once

#include "exreg/apcomplex.hpp"
#include "exreg/poly.hpp"

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace exreg {

using QMatrix = std::vector<std::vector<mpq_class>>;

/// ℚ[x]/(m) for a squarefree m of degree ≥ 1.
class NumberField {
 public:
  explicit NumberField(const IntPoly& minpoly);
  static std::shared_ptr<const NumberField> make(const IntPoly& minpoly) {
    return std::make_shared<const NumberField>(minpoly);
  }

  const IntPoly& minpoly() const { return m_; }
  const QPoly& monic_minpoly() const { return monic_; }
  int degree() const { return monic_.degree(); }

 private:
  IntPoly m_;
  QPoly monic_;
};

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Element of a NumberField, stored as its reduced representative.
class NFElement {
 public:
  NFElement() = default;
  NFElement(std::shared_ptr<const NumberField> k, const QPoly& rep);
  static NFElement rational(std::shared_ptr<const NumberField> k, const mpq_class& q);
  static NFElement generator(std::shared_ptr<const NumberField> k);

  const std::shared_ptr<const NumberField>& field() const { return k_; }
  const QPoly& rep() const { return rep_; }
  /// Coefficient vector of length deg m.
  std::vector<mpq_class> coeff_vector() const;

  bool is_zero() const { return rep_.is_zero(); }
  bool is_rational() const { return rep_.degree() <= 0; }
  NFElement inverse() const;
  /// Image under x ↦ root.
  APComplex embed(const APComplex& root) const { return rep_.eval(root); }
  std::string to_string(const std::string& var = "z") const { return rep_.to_string(var); }

  friend NFElement operator+(const NFElement& a, const NFElement& b);
  friend NFElement operator-(const NFElement& a, const NFElement& b);
  friend NFElement operator*(const NFElement& a, const NFElement& b);
  friend NFElement operator/(const NFElement& a, const NFElement& b) { return a * b.inverse(); }
  friend NFElement operator-(const NFElement& a);
  friend bool operator==(const NFElement& a, const NFElement& b);

 private:
  static const std::shared_ptr<const NumberField>& common(const NFElement& a, const NFElement& b);
  std::shared_ptr<const NumberField> k_;
  QPoly rep_;
};

inline NFElement one_like(const NFElement& x) { return NFElement::rational(x.field(), 1); }
inline NFElement zero_like(const NFElement& x) { return NFElement::rational(x.field(), 0); }

/// Matrix of multiplication by x on the power basis (column j = x·zʲ).
QMatrix multiplication_matrix(const NFElement& x);
/// Characteristic polynomial (monic) by reduction to Hessenberg form.
QPoly charpoly(const QMatrix& a);
/// Minimal polynomial of x over ℚ as a primitive integer polynomial.
IntPoly element_minpoly(const NFElement& x);

/// Solves A·v = b exactly (A is rows × cols); nullopt if inconsistent.
/// Free variables are set to zero.
std::optional<std::vector<mpq_class>> solve_rational(QMatrix a, std::vector<mpq_class> b);

/// Express x as a polynomial in t of degree < deg(minpoly of t), if x ∈ ℚ(t).
std::optional<QPoly> express_in_subfield(const NFElement& x, const NFElement& t);

}  // namespace exreg
