#include "exreg/lll.hpp"

#include <algorithm>

namespace exreg {

namespace {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

mpz_class divexact(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Nearest integer to a/b for b > 0.
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  mpz_class num = 2 * a + b, den = 2 * b, q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

class IntegralLLL {
 public:
  IntegralLLL(IntMatrix& b, long dn, long dd)
      : b_(b), n_(b.size()), dn_(dn), dd_(dd), d_(n_ + 1), lam_(n_, std::vector<mpz_class>(n_)) {}

  void run() {
    if (n_ == 0) return;
    for (const auto& row : b_) {
      if (std::all_of(row.begin(), row.end(), [](const mpz_class& x) { return x == 0; })) {
        throw LatticeError("lll_reduce: zero row");
      }
    }
    d_[0] = 1;
    d_[1] = dot(b_[0], b_[0]);
    size_t k = 1, kmax = 0;
    while (k < n_) {
      if (k > kmax) {
        kmax = k;
        incorporate(k);
      }
      reduce(k, k - 1);
      mpz_class lhs = dd_ * d_[k + 1] * d_[k - 1];
      mpz_class rhs = dn_ * d_[k] * d_[k] - dd_ * lam_[k][k - 1] * lam_[k][k - 1];
      if (lhs < rhs) {
        swap(k, kmax);
        k = std::max<size_t>(1, k - 1);
        continue;
      }
      for (size_t l = k - 1; l-- > 0;) reduce(k, l);
      ++k;
    }
  }

 private:
  void incorporate(size_t k) {
    for (size_t j = 0; j <= k; ++j) {
      mpz_class u = dot(b_[k], b_[j]);
      for (size_t i = 0; i < j; ++i) u = divexact(d_[i + 1] * u - lam_[k][i] * lam_[j][i], d_[i]);
      if (j < k) {
        lam_[k][j] = u;
      } else {
        if (u == 0) throw LatticeError("lll_reduce: rows are linearly dependent");
        d_[k + 1] = u;
      }
    }
  }

  void reduce(size_t k, size_t l) {
    mpz_class twice = 2 * abs(lam_[k][l]);
    if (twice <= d_[l + 1]) return;
    const mpz_class q = round_div(lam_[k][l], d_[l + 1]);
    for (size_t c = 0; c < b_[k].size(); ++c) mpz_submul(b_[k][c].get_mpz_t(), q.get_mpz_t(), b_[l][c].get_mpz_t());
    lam_[k][l] -= q * d_[l + 1];
    for (size_t i = 0; i < l; ++i) lam_[k][i] -= q * lam_[l][i];
  }

  void swap(size_t k, size_t kmax) {
    std::swap(b_[k], b_[k - 1]);
    for (size_t j = 0; j + 1 < k; ++j) std::swap(lam_[k][j], lam_[k - 1][j]);
    const mpz_class lam = lam_[k][k - 1];
    const mpz_class bb = divexact(d_[k - 1] * d_[k + 1] + lam * lam, d_[k]);
    for (size_t i = k + 1; i <= kmax; ++i) {
      const mpz_class t = lam_[i][k];
      lam_[i][k] = divexact(d_[k + 1] * lam_[i][k - 1] - lam * t, d_[k]);
      lam_[i][k - 1] = divexact(bb * t + lam * lam_[i][k], d_[k + 1]);
    }
    d_[k] = bb;
  }

  IntMatrix& b_;
  size_t n_;
  long dn_, dd_;
  std::vector<mpz_class> d_;
  std::vector<std::vector<mpz_class>> lam_;
};

}  // namespace

IntMatrix lll_reduce(IntMatrix basis, long delta_num, long delta_den) {
  if (!basis.empty()) {
    const size_t m = basis[0].size();
    for (const auto& r : basis) {
      if (r.size() != m) throw LatticeError("lll_reduce: ragged basis");
    }
    if (basis.size() > m) throw LatticeError("lll_reduce: more rows than columns (dimension overflow)");
  }
  IntegralLLL(basis, delta_num, delta_den).run();
  return basis;
}

bool is_lll_reduced(const IntMatrix& basis, long delta_num, long delta_den) {
  const size_t n = basis.size();
  if (n == 0) return true;
  const size_t m = basis[0].size();
  std::vector<std::vector<mpq_class>> bstar(n, std::vector<mpq_class>(m));
  std::vector<mpq_class> norm2(n);
  std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t c = 0; c < m; ++c) bstar[i][c] = basis[i][c];
    for (size_t j = 0; j < i; ++j) {
      mpq_class d = 0;
      for (size_t c = 0; c < m; ++c) d += mpq_class(basis[i][c]) * bstar[j][c];
      mu[i][j] = d / norm2[j];
      for (size_t c = 0; c < m; ++c) bstar[i][c] -= mu[i][j] * bstar[j][c];
    }
    norm2[i] = 0;
    for (size_t c = 0; c < m; ++c) norm2[i] += bstar[i][c] * bstar[i][c];
    if (norm2[i] == 0) return false;
  }
  const mpq_class delta(delta_num, delta_den);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (abs(mu[i][j]) > mpq_class(1, 2)) return false;
    }
    if (i > 0 && norm2[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * norm2[i - 1]) return false;
  }
  return true;
}

mpz_class determinant(const IntMatrix& input) {
  IntMatrix a = input;
  const size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) a[i][j] = divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace exreg
