#include "exreg/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace exreg {

Monomial mono_lcm(Monomial a, Monomial b) {
  Monomial m = 0;
  for (int v = 0; v < kMaxVars; ++v) m |= mono_var(v, std::max(mono_exp(a, v), mono_exp(b, v)));
  return m;
}

unsigned mono_degree(Monomial m) {
  unsigned d = 0;
  for (int v = 0; v < kMaxVars; ++v) d += mono_exp(m, v);
  return d;
}

namespace {

void check_vars(const std::string& vars) {
  if (vars.size() > static_cast<size_t>(kMaxVars)) throw MPolyError("MPoly: at most 4 variables");
  for (size_t i = 0; i < vars.size(); ++i) {
    if (!std::isalpha(static_cast<unsigned char>(vars[i]))) throw MPolyError("MPoly: variables must be letters");
    if (vars.find(vars[i], i + 1) != std::string::npos) throw MPolyError("MPoly: repeated variable");
  }
}

// Sort descending and combine like terms.
void normalize_terms(std::vector<MPoly::Term>& t) {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.mono > b.mono; });
  std::vector<MPoly::Term> out;
  out.reserve(t.size());
  for (auto& x : t) {
    if (!out.empty() && out.back().mono == x.mono) {
      out.back().coeff += x.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(x));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  t = std::move(out);
}

std::vector<MPoly::Term> merge(const std::vector<MPoly::Term>& a, const std::vector<MPoly::Term>& b, bool subtract) {
  std::vector<MPoly::Term> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back({b[j].mono, subtract ? mpq_class(-b[j].coeff) : b[j].coeff});
      ++j;
    } else {
      mpq_class c = subtract ? mpq_class(a[i].coeff - b[j].coeff) : mpq_class(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MPoly::MPoly(std::string vars) : vars_(std::move(vars)) { check_vars(vars_); }

MPoly::MPoly(std::string vars, std::vector<Term> terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
  check_vars(vars_);
  for (auto& t : terms_) t.coeff.canonicalize();
  normalize_terms(terms_);
}

MPoly MPoly::constant(const std::string& vars, const mpq_class& c) {
  return MPoly(vars, c == 0 ? std::vector<Term>{} : std::vector<Term>{{0, c}});
}

MPoly MPoly::variable(const std::string& vars, char name, unsigned exponent) {
  MPoly p(vars);
  const int v = p.var_index(name);
  p.terms_.push_back({mono_var(v, exponent), 1});
  return p;
}

int MPoly::var_index(char name) const {
  const auto pos = vars_.find(name);
  if (pos == std::string::npos) throw MPolyError(std::string("MPoly: unknown variable '") + name + "'");
  return static_cast<int>(pos);
}

unsigned MPoly::degree_in(int var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, mono_exp(t.mono, var));
  return d;
}

unsigned MPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, mono_degree(t.mono));
  return d;
}

unsigned MPoly::support() const {
  unsigned s = 0;
  for (const auto& t : terms_)
    for (int v = 0; v < kMaxVars; ++v)
      if (mono_exp(t.mono, v)) s |= 1u << v;
  return s;
}

MPoly MPoly::monic() const {
  if (is_zero()) return *this;
  return *this * mpq_class(1 / leading_coeff());
}

MPoly MPoly::reorder(const std::string& new_vars) const {
  check_vars(new_vars);
  std::vector<int> target(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    const auto pos = new_vars.find(vars_[i]);
    if (pos == std::string::npos) {
      if (degree_in(static_cast<int>(i)) > 0)
        throw MPolyError(std::string("MPoly::reorder: variable '") + vars_[i] + "' missing");
      target[i] = -1;
    } else {
      target[i] = static_cast<int>(pos);
    }
  }
  std::vector<Term> t;
  t.reserve(terms_.size());
  for (const auto& x : terms_) {
    Monomial m = 0;
    for (size_t i = 0; i < vars_.size(); ++i)
      if (target[i] >= 0) m |= mono_var(target[i], mono_exp(x.mono, static_cast<int>(i)));
    t.push_back({m, x.coeff});
  }
  return MPoly(new_vars, std::move(t));
}

MPoly MPoly::partial(int var) const {
  std::vector<Term> t;
  for (const auto& x : terms_) {
    const unsigned e = mono_exp(x.mono, var);
    if (e == 0) continue;
    t.push_back({x.mono - mono_var(var), x.coeff * e});
  }
  return MPoly(vars_, std::move(t));
}

MPoly MPoly::substitute_names(const std::string& from, const std::string& to) const {
  if (from.size() != to.size()) throw MPolyError("substitute_names: length mismatch");
  std::string renamed = vars_;
  for (auto& ch : renamed) {
    const auto pos = from.find(ch);
    if (pos != std::string::npos) ch = to[pos];
  }
  return MPoly(renamed, terms_).reorder(vars_);
}

void MPoly::check_same_ring(const MPoly& o) const {
  if (vars_ != o.vars_) throw MPolyError("MPoly: variable lists differ (" + vars_ + " vs " + o.vars_ + ")");
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  a.check_same_ring(b);
  MPoly r(a.vars_);
  r.terms_ = merge(a.terms_, b.terms_, false);
  return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
  a.check_same_ring(b);
  MPoly r(a.vars_);
  r.terms_ = merge(a.terms_, b.terms_, true);
  return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_same_ring(b);
  std::vector<MPoly::Term> t;
  t.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) t.push_back({x.mono + y.mono, x.coeff * y.coeff});
  MPoly r(a.vars_);
  normalize_terms(t);
  r.terms_ = std::move(t);
  return r;
}

MPoly operator*(const MPoly& a, const mpq_class& k) { return a.mul_term(0, k); }

MPoly operator-(const MPoly& a) { return a * mpq_class(-1); }

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

MPoly MPoly::mul_term(Monomial m, const mpq_class& c) const {
  MPoly r(vars_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& x : terms_) r.terms_.push_back({x.mono + m, x.coeff * c});
  return r;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class c = t.coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    first = false;
    std::string mono;
    for (size_t v = 0; v < vars_.size(); ++v) {
      const unsigned e = mono_exp(t.mono, static_cast<int>(v));
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[v];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      os << c.get_str();
    } else if (c == 1) {
      os << mono;
    } else {
      os << c.get_str() << "*" << mono;
    }
  }
  return os.str();
}

APComplex scalar_from_rational(const APComplex& like, const mpq_class& c) {
  return APComplex::from_rational(c, mpq_class(0), like.precision());
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::string& vars) : s_(text), vars_(vars) {}

  MPoly parse() {
    MPoly p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw MPolyError("parse_mpoly: " + what + " at position " + std::to_string(i_) + " in \"" + s_ + "\"");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool starts_factor() {
    skip();
    if (i_ >= s_.size()) return false;
    const char c = s_[i_];
    return c == '(' || c == '*' || std::isdigit(static_cast<unsigned char>(c)) ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  MPoly expr() {
    MPoly acc(vars_);
    bool negate = false;
    if (peek('+')) {
      ++i_;
    } else if (peek('-')) {
      ++i_;
      negate = true;
    }
    MPoly t = term();
    acc = negate ? acc - t : acc + t;
    while (true) {
      if (peek('+')) {
        ++i_;
        acc = acc + term();
      } else if (peek('-')) {
        ++i_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  MPoly term() {
    MPoly acc = power();
    while (starts_factor()) {
      if (peek('*')) ++i_;
      acc = acc * power();
    }
    return acc;
  }

  MPoly power() {
    MPoly base = atom();
    if (!peek('^')) return base;
    ++i_;
    skip();
    const size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected exponent");
    const unsigned long e = std::stoul(s_.substr(start, i_ - start));
    if (e > 10000) fail("exponent too large");
    MPoly r = MPoly::constant(vars_, 1);
    for (unsigned long k = 0; k < e; ++k) r = r * base;
    return r;
  }

  MPoly atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      MPoly e = expr();
      if (!peek(')')) fail("expected ')'");
      ++i_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return MPoly::constant(vars_, number());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      if (vars_.find(c) == std::string::npos) fail(std::string("unknown variable '") + c + "'");
      ++i_;
      return MPoly::variable(vars_, c);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  mpq_class number() {
    const size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    mpq_class v(mpz_class(s_.substr(start, i_ - start)));
    if (i_ < s_.size() && s_[i_] == '/') {
      ++i_;
      const size_t ds = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (ds == i_) fail("expected denominator");
      mpz_class den(s_.substr(ds, i_ - ds));
      if (den == 0) fail("zero denominator");
      v /= mpq_class(den);
    }
    return v;
  }

  std::string s_;
  std::string vars_;
  size_t i_ = 0;
};

}  // namespace

MPoly parse_mpoly(const std::string& text, const std::string& vars) {
  check_vars(vars);
  return Parser(text, vars).parse();
}

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw MPolyError("divide_exact: division by zero");
  if (a.vars() != b.vars()) throw MPolyError("divide_exact: variable lists differ");
  MPoly rem = a;
  std::vector<MPoly::Term> quot;
  const Monomial lb = b.leading_monomial();
  const mpq_class& cb = b.leading_coeff();
  while (!rem.is_zero()) {
    const Monomial lr = rem.leading_monomial();
    if (!mono_divides(lb, lr)) return std::nullopt;
    const Monomial m = lr - lb;
    const mpq_class c = rem.leading_coeff() / cb;
    quot.push_back({m, c});
    rem = rem - b.mul_term(m, c);
  }
  return MPoly(a.vars(), std::move(quot));
}

MPoly reduce(const MPoly& f, const std::vector<MPoly>& divisors) {
  MPoly p = f;
  std::vector<MPoly::Term> rem;
  while (!p.is_zero()) {
    const Monomial lp = p.leading_monomial();
    const MPoly* hit = nullptr;
    for (const auto& g : divisors) {
      if (!g.is_zero() && mono_divides(g.leading_monomial(), lp)) {
        hit = &g;
        break;
      }
    }
    if (hit) {
      p = p - hit->mul_term(lp - hit->leading_monomial(), p.leading_coeff() / hit->leading_coeff());
    } else {
      rem.push_back(p.terms().front());
      p = p - MPoly(p.vars(), {p.terms().front()});
    }
  }
  return MPoly(f.vars(), std::move(rem));
}

}  // namespace exreg
