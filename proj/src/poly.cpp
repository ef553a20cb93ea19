#include "exreg/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace exreg {

QPoly::QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::constant(const mpq_class& c) { return QPoly(std::vector<mpq_class>{c}); }

QPoly QPoly::monomial(const mpq_class& c, int k) {
  std::vector<mpq_class> v(static_cast<size_t>(k) + 1, mpq_class(0));
  v.back() = c;
  return QPoly(std::move(v));
}

mpq_class QPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return c_[static_cast<size_t>(k)];
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  QPoly r = *this;
  const mpq_class lc = leading();
  for (auto& c : r.c_) c /= lc;
  return r;
}

QPoly QPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<mpq_class> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
  return QPoly(std::move(d));
}

mpq_class QPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

APComplex QPoly::eval(const APComplex& x) const {
  const auto bits = x.precision();
  APComplex acc(bits);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * x + APComplex::from_rational(*it, 0, bits);
  }
  return acc;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<mpq_class> r(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return QPoly(std::move(r));
}

QPoly operator-(const QPoly& a) {
  QPoly r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> r(a.c_.size() + b.c_.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(r));
}

QPoly operator*(const QPoly& a, const mpq_class& k) {
  if (k == 0) return {};
  QPoly r = a;
  for (auto& c : r.c_) c *= k;
  return r;
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const mpq_class& c = c_[static_cast<size_t>(k)];
    if (c == 0) continue;
    mpq_class a = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const bool unit = (a == 1);
    if (!unit || k == 0) os << a.get_str();
    if (k >= 1) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<mpq_class> rem = a.coeffs();
  const int db = b.degree();
  const mpq_class lb = b.leading();
  if (a.degree() < db) return {QPoly{}, a};
  std::vector<mpq_class> quo(static_cast<size_t>(a.degree() - db) + 1, mpq_class(0));
  for (int k = a.degree(); k >= db; --k) {
    const mpq_class t = rem[static_cast<size_t>(k)] / lb;
    if (t == 0) continue;
    quo[static_cast<size_t>(k - db)] = t;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(k - db + j)] -= t * b.coeffs()[static_cast<size_t>(j)];
  }
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = x % y;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::pair<QPoly, QPoly> half_gcdext(const QPoly& a, const QPoly& b) {
  QPoly r0 = a, r1 = b, s0 = QPoly::constant(1), s1;
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    QPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) return {r0, s0};
  const mpq_class lc = r0.leading();
  return {r0 * (1 / lc), s0 * (1 / lc)};
}

QPoly squarefree_part(const QPoly& p) {
  if (p.degree() < 1) return p.monic();
  return divmod(p, gcd(p, p.derivative())).first.monic();
}

mpq_class resultant(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const int m = a.degree(), n = b.degree();
  if (n == 0) {
    mpq_class r = 1;
    for (int i = 0; i < m; ++i) r *= b.leading();
    return r;
  }
  if (m < n) {
    mpq_class r = resultant(b, a);
    return ((m * n) % 2) ? mpq_class(-r) : r;
  }
  QPoly rem = a % b;
  if (rem.is_zero()) return 0;
  mpq_class f = 1;
  for (int i = 0; i < m - rem.degree(); ++i) f *= b.leading();
  if ((m * n) % 2) f = -f;
  return f * resultant(b, rem);
}

mpq_class discriminant(const QPoly& p) {
  const int n = p.degree();
  mpq_class r = resultant(p, p.derivative()) / p.leading();
  if (((n * (n - 1)) / 2) % 2) r = -r;
  return r;
}

IntPoly::IntPoly(std::vector<mpz_class> c) : coeffs(std::move(c)) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

IntPoly IntPoly::from_longs(const std::vector<long>& c) {
  std::vector<mpz_class> v;
  v.reserve(c.size());
  for (long x : c) v.emplace_back(x);
  return IntPoly(std::move(v));
}

IntPoly IntPoly::normalized() const {
  if (coeffs.empty()) return *this;
  mpz_class g = 0;
  for (const auto& c : coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (coeffs.back() < 0) g = -g;
  IntPoly r = *this;
  for (auto& c : r.coeffs) c /= g;
  return r;
}

QPoly IntPoly::to_q() const {
  std::vector<mpq_class> v;
  v.reserve(coeffs.size());
  for (const auto& c : coeffs) v.emplace_back(c);
  return QPoly(std::move(v));
}

IntPoly IntPoly::from_q(const QPoly& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    mpq_class t = c * l;
    v.push_back(t.get_num());
  }
  return IntPoly(std::move(v)).normalized();
}

namespace {
int sign_changes(const std::vector<int>& s) {
  int n = 0, last = 0;
  for (int x : s) {
    if (x == 0) continue;
    if (last != 0 && x != last) ++n;
    last = x;
  }
  return n;
}
}  // namespace

int count_real_roots(const QPoly& p) {
  QPoly s = squarefree_part(p);
  if (s.degree() < 1) return 0;
  std::vector<QPoly> seq{s, s.derivative()};
  while (seq.back().degree() > 0) {
    QPoly r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  std::vector<int> at_pos, at_neg;
  for (const auto& q : seq) {
    const int sg = sgn(q.leading());
    at_pos.push_back(sg);
    at_neg.push_back(q.degree() % 2 ? -sg : sg);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

bool is_rational_square(const mpq_class& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

mpq_class l1_norm(const QPoly& p) {
  mpq_class s = 0;
  for (const auto& c : p.coeffs()) s += abs(c);
  return s;
}

}  // namespace exreg
