#include "exreg/numberfield.hpp"

namespace exreg {

NumberField::NumberField(const IntPoly& minpoly) : m_(minpoly.normalized()), monic_(m_.to_q().monic()) {
  if (monic_.degree() < 1) throw std::invalid_argument("number field needs a polynomial of degree >= 1");
  if (squarefree_part(monic_).degree() != monic_.degree()) {
    throw std::invalid_argument("number field polynomial is not squarefree: " + m_.to_string());
  }
}

NFElement::NFElement(std::shared_ptr<const NumberField> k, const QPoly& rep) : k_(std::move(k)) {
  rep_ = rep.degree() >= k_->degree() ? rep % k_->monic_minpoly() : rep;
}

NFElement NFElement::rational(std::shared_ptr<const NumberField> k, const mpq_class& q) {
  return NFElement(std::move(k), QPoly::constant(q));
}

NFElement NFElement::generator(std::shared_ptr<const NumberField> k) {
  return NFElement(std::move(k), QPoly::x());
}

std::vector<mpq_class> NFElement::coeff_vector() const {
  std::vector<mpq_class> v(static_cast<size_t>(k_->degree()), mpq_class(0));
  for (int i = 0; i <= rep_.degree(); ++i) v[static_cast<size_t>(i)] = rep_.coeffs()[static_cast<size_t>(i)];
  return v;
}

const std::shared_ptr<const NumberField>& NFElement::common(const NFElement& a, const NFElement& b) {
  if (a.k_ == b.k_) return a.k_;
  if (!a.k_ || !b.k_ || !(a.k_->minpoly() == b.k_->minpoly())) {
    throw FieldMismatch("arithmetic between elements of different number fields");
  }
  return a.k_;
}

NFElement NFElement::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in number field");
  auto [g, s] = half_gcdext(rep_, k_->monic_minpoly());
  if (g.degree() != 0) {
    throw std::domain_error("element not invertible: defining polynomial is reducible (" +
                            k_->minpoly().to_string() + ")");
  }
  return NFElement(k_, s);
}

NFElement operator+(const NFElement& a, const NFElement& b) {
  const auto& k = NFElement::common(a, b);
  NFElement r;
  r.k_ = k;
  r.rep_ = a.rep_ + b.rep_;
  return r;
}

NFElement operator-(const NFElement& a, const NFElement& b) {
  const auto& k = NFElement::common(a, b);
  NFElement r;
  r.k_ = k;
  r.rep_ = a.rep_ - b.rep_;
  return r;
}

NFElement operator*(const NFElement& a, const NFElement& b) {
  const auto& k = NFElement::common(a, b);
  return NFElement(k, a.rep_ * b.rep_);
}

NFElement operator-(const NFElement& a) {
  NFElement r = a;
  r.rep_ = -a.rep_;
  return r;
}

bool operator==(const NFElement& a, const NFElement& b) {
  NFElement::common(a, b);
  return a.rep_ == b.rep_;
}

QMatrix multiplication_matrix(const NFElement& x) {
  const int n = x.field()->degree();
  QMatrix m(static_cast<size_t>(n), std::vector<mpq_class>(static_cast<size_t>(n), mpq_class(0)));
  NFElement basis = NFElement::rational(x.field(), 1);
  const NFElement z = NFElement::generator(x.field());
  for (int j = 0; j < n; ++j) {
    const auto col = (x * basis).coeff_vector();
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = col[static_cast<size_t>(i)];
    basis = basis * z;
  }
  return m;
}

QPoly charpoly(const QMatrix& a) {
  const size_t n = a.size();
  QMatrix h = a;
  for (size_t m = 1; m + 1 < n; ++m) {
    size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (size_t r = 0; r < n; ++r) std::swap(h[r][i], h[r][m]);
    }
    const mpq_class t = h[m][m - 1];
    for (size_t r = m + 1; r < n; ++r) {
      if (h[r][m - 1] == 0) continue;
      const mpq_class u = h[r][m - 1] / t;
      for (size_t c = 0; c < n; ++c) h[r][c] -= u * h[m][c];
      for (size_t c = 0; c < n; ++c) h[c][m] += u * h[c][r];
    }
  }
  std::vector<QPoly> p{QPoly::constant(1)};
  for (size_t m = 0; m < n; ++m) {
    QPoly pm = (QPoly::x() - QPoly::constant(h[m][m])) * p[m];
    mpq_class t = 1;
    for (size_t i = m; i-- > 0;) {
      t *= h[i + 1][i];
      if (h[i][m] != 0 && t != 0) pm = pm - p[i] * (h[i][m] * t);
    }
    p.push_back(std::move(pm));
  }
  return p.back();
}

IntPoly element_minpoly(const NFElement& x) {
  return IntPoly::from_q(squarefree_part(charpoly(multiplication_matrix(x))));
}

std::optional<std::vector<mpq_class>> solve_rational(QMatrix a, std::vector<mpq_class> b) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const mpq_class inv = 1 / a[r][c];
    for (size_t k = c; k < cols; ++k) a[r][k] *= inv;
    b[r] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpq_class f = a[i][c];
      for (size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  std::vector<mpq_class> v(cols, mpq_class(0));
  for (size_t i = 0; i < r; ++i) v[pivot_col[i]] = b[i];
  return v;
}

std::optional<QPoly> express_in_subfield(const NFElement& x, const NFElement& t) {
  const int d = element_minpoly(t).degree();
  const int n = x.field()->degree();
  QMatrix a(static_cast<size_t>(n), std::vector<mpq_class>(static_cast<size_t>(d)));
  NFElement power = NFElement::rational(x.field(), 1);
  for (int j = 0; j < d; ++j) {
    const auto col = power.coeff_vector();
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = col[static_cast<size_t>(i)];
    power = power * t;
  }
  auto sol = solve_rational(std::move(a), x.coeff_vector());
  if (!sol) return std::nullopt;
  return QPoly(*sol);
}

}  // namespace exreg
