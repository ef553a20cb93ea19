#include "exreg/recognize.hpp"

#include <algorithm>

namespace exreg {

namespace {

mpz_class scaled_round(const Real& v, const Real& scale) { return (v * scale).round_to_integer(); }

// |P(x)| small relative to the size of its terms.
bool is_relation(const QPoly& p, const APComplex& x, int digits) {
  if (p.degree() < 1) return false;
  const auto bits = x.precision();
  Real size(0L, bits);
  Real xp(1L, bits);
  const Real ax = x.abs();
  for (const auto& c : p.coeffs()) {
    size += Real(mpq_class(abs(c)), bits) * xp;
    xp = xp * ax;
  }
  const Real tol = size * pow10(-(digits / 2), bits);
  return p.eval(x).abs() <= tol;
}

mpz_class height(const std::vector<mpz_class>& v, size_t count) {
  mpz_class h = 0;
  for (size_t i = 0; i < count; ++i) h = std::max<mpz_class>(h, abs(v[i]));
  return h;
}

}  // namespace

IntMatrix relation_lattice(const std::vector<APComplex>& values, int scale_digits) {
  const size_t n = values.size();
  const auto bits = values.empty() ? mpfr_prec_t(64) : values[0].precision();
  const Real scale = pow10(scale_digits, bits);
  IntMatrix b(n, std::vector<mpz_class>(n + 2, mpz_class(0)));
  for (size_t i = 0; i < n; ++i) {
    b[i][i] = 1;
    b[i][n] = scaled_round(values[i].re(), scale);
    b[i][n + 1] = scaled_round(values[i].im(), scale);
  }
  return b;
}

IntPoly algdep(const APComplex& x, int max_degree, int height_digits) {
  const int digits = x.digits();
  if (max_degree < 1) throw RecognitionError("algdep: max_degree must be >= 1");
  if (digits < (max_degree + 2) * height_digits / 2) {
    throw RecognitionError("algdep: " + std::to_string(digits) + " digits are too few for degree " +
                           std::to_string(max_degree));
  }
  std::vector<APComplex> powers{APComplex(1L, x.precision())};
  for (int k = 1; k <= max_degree; ++k) powers.push_back(powers.back() * x);
  IntMatrix red = lll_reduce(relation_lattice(powers, digits - 10));

  const mpz_class hmax = pow10(height_digits, 64).round_to_integer();
  QPoly g;
  for (const auto& row : red) {
    if (height(row, powers.size()) > hmax) continue;
    std::vector<mpq_class> c(row.begin(), row.begin() + static_cast<long>(powers.size()));
    QPoly p(std::move(c));
    if (!is_relation(p, x, digits)) continue;
    g = g.is_zero() ? p.monic() : gcd(g, p);
  }
  if (g.degree() < 1 || !is_relation(g, x, digits)) {
    throw RecognitionError("algdep: no relation of degree <= " + std::to_string(max_degree) +
                           " below height 10^" + std::to_string(height_digits));
  }
  return IntPoly::from_q(squarefree_part(g));
}

QPoly express_in_field(const APComplex& x, const APComplex& z, const IntPoly& z_minpoly, long denom_bound) {
  const int n = z_minpoly.degree();
  const int digits = std::min(x.digits(), z.digits());
  const auto bits = std::min(x.precision(), z.precision());
  std::vector<APComplex> vals{APComplex(1L, bits)};
  for (int k = 1; k < n; ++k) vals.push_back(vals.back() * z.with_precision(bits));
  vals.push_back(x.with_precision(bits));
  IntMatrix red = lll_reduce(relation_lattice(vals, digits - 10));

  for (const auto& row : red) {
    const mpz_class& den = row[static_cast<size_t>(n)];
    if (den == 0 || abs(den) > denom_bound) continue;
    std::vector<mpq_class> c;
    for (int j = 0; j < n; ++j) c.emplace_back(-row[static_cast<size_t>(j)], den);
    QPoly p(std::move(c));
    APComplex diff = p.eval(z.with_precision(bits)) - x.with_precision(bits);
    Real tol = (x.abs() + Real(1L, bits)) * pow10(-(digits / 2), bits);
    if (diff.abs() <= tol) return p;
  }
  throw RecognitionError("express_in_field: no relation with denominator <= " + std::to_string(denom_bound));
}

}  // namespace exreg
