#include "exreg/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace exreg {

namespace {

APComplex from_double(double re, double im, mpfr_prec_t bits) {
  return {Real(mpq_class(re), bits), Real(mpq_class(im), bits)};
}

// Value and derivative by Horner.
std::pair<APComplex, APComplex> horner2(const std::vector<APComplex>& c, const APComplex& z) {
  const auto bits = z.precision();
  APComplex p(bits), dp(bits);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

bool negligible(const APComplex& w, const APComplex& z, mpfr_prec_t bits) {
  if (w.is_zero()) return true;
  const long ew = std::max(w.re().exponent2(), w.im().exponent2());
  const long ez = std::max({z.re().exponent2(), z.im().exponent2(), 0L});
  return ew < ez - static_cast<long>(bits) + 12;
}

}  // namespace

std::vector<APComplex> aberth_roots(const std::vector<APComplex>& coeffs, int max_iter) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) return {};
  if (coeffs.back().is_zero()) throw std::invalid_argument("aberth_roots: zero leading coefficient");
  mpfr_prec_t bits = coeffs.back().precision();
  for (const auto& c : coeffs) bits = std::min(bits, c.precision());
  if (n == 1) return {-coeffs[0] / coeffs[1]};

  // Fujiwara-style radius from double magnitudes.
  const double lead = coeffs.back().abs().to_double();
  double radius = 0;
  for (int k = 0; k < n; ++k) {
    const double m = coeffs[static_cast<size_t>(k)].abs().to_double() / lead;
    if (m > 0) radius = std::max(radius, std::pow(m, 1.0 / (n - k)));
  }
  if (!(radius > 0) || !std::isfinite(radius)) radius = 1;
  std::vector<APComplex> z;
  for (int k = 0; k < n; ++k) {
    const double t = 2 * M_PI * k / n + 0.4;
    z.push_back(from_double(radius * std::cos(t), radius * std::sin(t), bits));
  }

  std::vector<bool> done(static_cast<size_t>(n), false);
  for (int it = 0; it < max_iter; ++it) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      if (done[static_cast<size_t>(i)]) continue;
      auto [p, dp] = horner2(coeffs, z[static_cast<size_t>(i)]);
      if (p.is_zero()) {
        done[static_cast<size_t>(i)] = true;
        continue;
      }
      APComplex ratio = p / dp;
      APComplex s(bits);
      for (int j = 0; j < n; ++j) {
        if (j != i) s += (z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]).inverse();
      }
      APComplex step = ratio / (APComplex(1L, bits) - ratio * s);
      z[static_cast<size_t>(i)] -= step;
      if (negligible(step, z[static_cast<size_t>(i)], bits)) done[static_cast<size_t>(i)] = true;
      else all = false;
    }
    if (all) break;
  }
  return z;
}

APComplex polish_root(const QPoly& p, APComplex z, int steps) {
  const QPoly dp = p.derivative();
  for (int k = 0; k < steps; ++k) {
    APComplex d = dp.eval(z);
    if (d.is_zero()) break;
    APComplex step = p.eval(z) / d;
    z -= step;
    if (negligible(step, z, z.precision())) break;
  }
  return z;
}

std::vector<APComplex> rational_poly_roots(const QPoly& p, int digits) {
  const QPoly s = squarefree_part(p);
  if (s.degree() < 1) return {};
  mpfr_prec_t bits = digits_to_bits(digits) + 32;
  std::vector<APComplex> roots;
  for (int attempt = 0; attempt < 3; ++attempt, bits *= 2) {
    std::vector<APComplex> c;
    for (const auto& q : s.coeffs()) c.push_back(APComplex::from_rational(q, 0, bits));
    roots = aberth_roots(c);
    for (auto& r : roots) r = polish_root(s, r, 3);
    // Separation versus Newton correction size.
    bool separated = true;
    const QPoly ds = s.derivative();
    for (size_t i = 0; i < roots.size() && separated; ++i) {
      const Real corr = (s.eval(roots[i]) / ds.eval(roots[i])).abs();
      for (size_t j = 0; j < roots.size(); ++j) {
        if (j != i && !((roots[i] - roots[j]).abs() > corr * 10L)) {
          separated = false;
          break;
        }
      }
    }
    if (separated) break;
  }
  return roots;
}

APComplex nearest_root(const QPoly& p, const APComplex& approx, int digits) {
  auto roots = rational_poly_roots(p, digits);
  if (roots.empty()) throw std::invalid_argument("nearest_root: constant polynomial");
  const APComplex a = approx.with_precision(roots[0].precision());
  auto best = std::min_element(roots.begin(), roots.end(), [&](const APComplex& x, const APComplex& y) {
    return (x - a).abs() < (y - a).abs();
  });
  return *best;
}

}  // namespace exreg
