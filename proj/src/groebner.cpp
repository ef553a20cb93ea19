#include "exreg/groebner.hpp"

#include "exreg/mat2.hpp"
#include "exreg/roots.hpp"
#include "exreg/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include <malloc.h>
#include <unistd.h>

namespace exreg {

// ---------------------------------------------------------------------------
// Symbolic entries over ℚ[z, r, q, p] / (z² − qz + 1)

namespace {

MPoly reduce_z(const MPoly& f) {
  // z² = qz − 1, applied until every z-degree is at most one.
  std::vector<MPoly::Term> terms(f.terms().begin(), f.terms().end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<MPoly::Term> next;
    next.reserve(terms.size() * 2);
    for (auto& t : terms) {
      if (mono_exp(t.mono, 0) >= 2) {
        const Monomial base = t.mono - mono_var(0, 2);
        next.push_back({base + mono_var(0) + mono_var(2), t.coeff});
        next.push_back({base, -t.coeff});
        changed = true;
      } else {
        next.push_back(std::move(t));
      }
    }
    terms = MPoly(kTraceVars, std::move(next)).terms();
  }
  return MPoly(kTraceVars, std::move(terms));
}

struct ZQ {
  MPoly v;
};
ZQ operator+(const ZQ& a, const ZQ& b) { return {a.v + b.v}; }
ZQ operator-(const ZQ& a, const ZQ& b) { return {a.v - b.v}; }
ZQ operator-(const ZQ& a) { return {-a.v}; }
ZQ operator*(const ZQ& a, const ZQ& b) { return {reduce_z(a.v * b.v)}; }
ZQ one_like(const ZQ&) { return {MPoly::constant(kTraceVars, 1)}; }
ZQ zero_like(const ZQ&) { return {MPoly(kTraceVars)}; }

std::vector<Mat2<ZQ>> symbolic_pair() {
  auto var = [](char c) { return ZQ{MPoly::variable(kTraceVars, c)}; };
  const ZQ p = var('p'), q = var('q'), r = var('r'), z = var('z');
  auto [f2, w2] = conjugate_pair(p, q, r, z);
  return {f2, w2};
}

void push_entries(std::vector<MPoly>& out, const Mat2<ZQ>& m) {
  for (const auto* e : {&m.m11, &m.m12, &m.m21, &m.m22}) out.push_back(e->v);
}

}  // namespace

std::vector<MPoly> symbolic_word_entries(const Word& w, int sigma) {
  const auto images = symbolic_pair();
  const Mat2<ZQ> m = eval_word<ZQ>(w, images);
  const Mat2<ZQ> s = Mat2<ZQ>::scalar_like(m.m11, ZQ{MPoly::constant(kTraceVars, sigma)});
  std::vector<MPoly> out;
  push_entries(out, m - s);
  return out;
}

std::vector<MPoly> symbolic_relator_entries(const RegionRecord& region, int sigma1, int sigma2, bool split) {
  const auto images = symbolic_pair();
  std::vector<MPoly> out;
  for (const auto& [w, sigma] : {std::pair{region.r1, sigma1}, std::pair{region.r2, sigma2}}) {
    if (!split) {
      for (auto& e : symbolic_word_entries(w, sigma)) out.push_back(std::move(e));
      continue;
    }
    // r = u·v = σI  ⇔  u = σ·v⁻¹
    const auto [u, v] = split_at(w, (w.length() + 1) / 2);
    const Mat2<ZQ> mu = eval_word<ZQ>(u, images);
    const Mat2<ZQ> mv = eval_word<ZQ>(invert_word(v), images);
    const ZQ s{MPoly::constant(kTraceVars, sigma)};
    push_entries(out, mu - Mat2<ZQ>::scalar_like(s, s) * mv);
  }
  out.push_back(parse_mpoly("z^2 - q*z + 1", kTraceVars));
  return out;
}

// ---------------------------------------------------------------------------
// Buchberger over ℤ (fraction-free, primitive representatives)

namespace {

struct ZTerm {
  Monomial m;
  mpz_class c;
};
using ZP = std::vector<ZTerm>;

struct BudgetExceeded {
  bool memory = false;
};

// Strict "greater than" in the chosen monomial order.
struct Ord {
  MonomialOrder kind = MonomialOrder::Lex;
  bool gt(Monomial a, Monomial b) const {
    if (kind == MonomialOrder::Lex) return a > b;
    const unsigned da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da > db;
    for (int v = kMaxVars - 1; v >= 0; --v) {
      const unsigned ea = mono_exp(a, v), eb = mono_exp(b, v);
      if (ea != eb) return ea < eb;
    }
    return false;
  }
};

void make_primitive(ZP& p) {
  if (p.empty()) return;
  mpz_class g = 0;
  for (const auto& t : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  if (p.front().c < 0) g = -g;
  if (g != 1)
    for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
}

ZP to_zp(const MPoly& f, const Ord& ord) {
  mpz_class den = 1;
  for (const auto& t : f.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  ZP p;
  p.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    mpz_class c = t.coeff.get_num() * (den / t.coeff.get_den());
    p.push_back({t.mono, std::move(c)});
  }
  std::sort(p.begin(), p.end(), [&](const ZTerm& a, const ZTerm& b) { return ord.gt(a.m, b.m); });
  make_primitive(p);
  return p;
}

// Monic with respect to the order the terms are sorted in.
MPoly to_mpoly(const ZP& p, const std::string& vars) {
  std::vector<MPoly::Term> t;
  t.reserve(p.size());
  for (const auto& x : p) t.push_back({x.m, mpq_class(x.c, p.front().c)});
  return MPoly(vars, std::move(t));
}

// Resident set size in MiB, or 0 where /proc is unavailable.
long resident_mib() {
  std::ifstream in("/proc/self/statm");
  long pages = 0, resident = 0;
  if (!(in >> pages >> resident)) return 0;
  return resident * (sysconf(_SC_PAGESIZE) / 1024) / 1024;
}

class Clock {
 public:
  explicit Clock(double seconds, long memory_mib = 0)
      : start_(std::chrono::steady_clock::now()),
        limit_(seconds),
        memory_mib_(memory_mib),
        baseline_mib_(memory_mib > 0 ? resident_mib() : 0) {}
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  void check() const {
    if (limit_ > 0 && elapsed() > limit_) throw BudgetExceeded{};
    // Coefficient growth can exhaust memory long before the time limit.
    // Measured as growth over the start, so earlier runs in the same process don't count.
    if (memory_mib_ > 0 && ++calls_ % 64 == 0 && resident_mib() - baseline_mib_ > memory_mib_)
      throw BudgetExceeded{true};
  }

 private:
  std::chrono::steady_clock::time_point start_;
  double limit_;
  long memory_mib_;
  long baseline_mib_;
  mutable long calls_ = 0;
};

// a·p[k+1..] − b·(m·g[1..]) with p[0..k) scaled by a; p[k] cancels.
ZP reduce_step(const ZP& p, size_t k, const mpz_class& a, const mpz_class& b, Monomial m, const ZP& g,
               const Ord& ord) {
  ZP out;
  out.reserve(p.size() + g.size());
  for (size_t i = 0; i < k; ++i) out.push_back({p[i].m, a == 1 ? p[i].c : mpz_class(a * p[i].c)});
  size_t i = k + 1, j = 1;
  while (i < p.size() || j < g.size()) {
    const Monomial gm = j < g.size() ? g[j].m + m : 0;
    if (j == g.size() || (i < p.size() && ord.gt(p[i].m, gm))) {
      out.push_back({p[i].m, a * p[i].c});
      ++i;
    } else if (i == p.size() || ord.gt(gm, p[i].m)) {
      out.push_back({gm, -b * g[j].c});
      ++j;
    } else {
      mpz_class c = a * p[i].c - b * g[j].c;
      if (c != 0) out.push_back({gm, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

// Reduces the terms of p from position `from` on by the polynomials in
// `reducers` (indices into polys).
ZP full_reduce(ZP p, const std::vector<ZP>& polys, const std::vector<size_t>& reducers, const Ord& ord,
               const Clock* clock, size_t from = 0) {
  size_t k = from;
  long steps = 0;
  while (k < p.size()) {
    const Monomial pm = p[k].m;
    const ZP* best = nullptr;
    for (size_t idx : reducers) {
      const ZP& g = polys[idx];
      if (mono_divides(g.front().m, pm) && (!best || g.size() < best->size())) best = &g;
    }
    if (!best) {
      ++k;
      continue;
    }
    mpz_class a = best->front().c, b = p[k].c;
    const mpz_class d = gcd(a, b);
    if (d != 1) {
      mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
      mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t());
    }
    p = reduce_step(p, k, a, b, pm - best->front().m, *best, ord);
    if (clock) clock->check();
    if (++steps % 16 == 0) make_primitive(p);
  }
  make_primitive(p);
  return p;
}

ZP s_poly(const ZP& f, const ZP& g, const Ord& ord) {
  const Monomial l = mono_lcm(f.front().m, g.front().m);
  mpz_class a = g.front().c, b = f.front().c;
  const mpz_class d = gcd(a, b);
  a /= d;
  b /= d;
  // a·(l/lm f)·f − b·(l/lm g)·g; position 0 cancels.
  const Monomial mf = l - f.front().m;
  const Monomial mg = l - g.front().m;
  ZP af;
  af.reserve(f.size());
  for (const auto& t : f) af.push_back({t.m + mf, a * t.c});
  return reduce_step(af, 0, 1, b, mg, g, ord);
}

struct Pair {
  size_t i, j;
  Monomial lcm;
  unsigned sugar;
};

// Normal strategy: smallest lcm first.
struct PairLess {
  Ord ord;
  bool operator()(const Pair& a, const Pair& b) const {
    if (a.lcm != b.lcm) return ord.gt(b.lcm, a.lcm);
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

class Engine {
 public:
  Engine(const GroebnerBudget& budget, Ord ord)
      : clock_(budget.seconds, budget.max_memory_mib), budget_(budget), ord_(ord), pairs_(PairLess{ord}) {}

  void add(ZP h, unsigned sugar) {
    if (h.empty()) return;
    polys_.push_back(std::move(h));
    sugar_.push_back(sugar);
    active_.push_back(false);
    update(polys_.size() - 1);
  }

  void run(GroebnerStats& stats) {
    while (!pairs_.empty()) {
      clock_.check();
      if (stats.pairs_processed >= budget_.max_pairs) throw BudgetExceeded{};
      const Pair pr = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      ++stats.pairs_processed;
      ZP h = full_reduce(s_poly(polys_[pr.i], polys_[pr.j], ord_), polys_, active_list(), ord_, &clock_);
      if (h.empty()) {
        ++stats.zero_reductions;
        continue;
      }
      add(std::move(h), pr.sugar);
      stats.max_basis_size = std::max<long>(stats.max_basis_size, static_cast<long>(active_list().size()));
    }
  }

  std::vector<size_t> active_list() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < active_.size(); ++i)
      if (active_[i]) out.push_back(i);
    return out;
  }

  // Minimal, fully reduced, primitive basis sorted by decreasing leading monomial.
  std::vector<ZP> reduced_basis() const {
    std::vector<size_t> act = active_list();
    std::vector<size_t> minimal;
    for (size_t a : act) {
      bool redundant = false;
      for (size_t b : act) {
        if (a == b) continue;
        const Monomial ma = polys_[a].front().m, mb = polys_[b].front().m;
        if (mono_divides(mb, ma) && (mb != ma || b < a)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) minimal.push_back(a);
    }
    std::vector<ZP> out;
    for (size_t a : minimal) {
      std::vector<size_t> others;
      for (size_t b : minimal)
        if (b != a) others.push_back(b);
      // The leading term is irreducible by the others; only the tail changes.
      out.push_back(full_reduce(polys_[a], polys_, others, ord_, nullptr, 1));
    }
    sort_basis(out);
    return out;
  }

  void release() {
    std::vector<ZP>().swap(polys_);
    pairs_.clear();
    malloc_trim(0);
  }

  std::vector<ZP> current_basis() const {
    std::vector<ZP> out;
    for (size_t a : active_list()) out.push_back(polys_[a]);
    sort_basis(out);
    return out;
  }

  double elapsed() const { return clock_.elapsed(); }
  long skipped() const { return skipped_; }

 private:
  void sort_basis(std::vector<ZP>& b) const {
    std::sort(b.begin(), b.end(), [&](const ZP& x, const ZP& y) { return ord_.gt(x.front().m, y.front().m); });
  }

  // Gebauer–Möller update for a new basis element h.
  void update(size_t h) {
    const Monomial mh = polys_[h].front().m;
    std::vector<size_t> c = active_list();
    std::vector<size_t> d;
    for (size_t idx = 0; idx < c.size(); ++idx) {
      const size_t g1 = c[idx];
      const Monomial l1 = mono_lcm(mh, polys_[g1].front().m);
      bool keep = true;
      if (!mono_coprime(mh, polys_[g1].front().m)) {
        for (size_t k = idx + 1; k < c.size() && keep; ++k)
          if (mono_divides(mono_lcm(mh, polys_[c[k]].front().m), l1)) keep = false;
        for (size_t g2 : d) {
          if (!keep) break;
          if (mono_divides(mono_lcm(mh, polys_[g2].front().m), l1)) keep = false;
        }
      }
      if (keep) {
        d.push_back(g1);
      } else {
        ++skipped_;
      }
    }
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      const Monomial mi = polys_[it->i].front().m, mj = polys_[it->j].front().m;
      if (mono_divides(mh, it->lcm) && mono_lcm(mi, mh) != it->lcm && mono_lcm(mh, mj) != it->lcm) {
        it = pairs_.erase(it);
        ++skipped_;
      } else {
        ++it;
      }
    }
    for (size_t g : d) {
      const Monomial mg = polys_[g].front().m;
      if (mono_coprime(mh, mg)) {
        ++skipped_;
        continue;
      }
      const Monomial l = mono_lcm(mh, mg);
      const unsigned s = std::max(sugar_[g] - mono_degree(mg), sugar_[h] - mono_degree(mh)) + mono_degree(l);
      pairs_.insert({g, h, l, s});
    }
    for (size_t g : active_list())
      if (mono_divides(mh, polys_[g].front().m)) active_[g] = false;
    active_[h] = true;
  }

  Clock clock_;
  GroebnerBudget budget_;
  Ord ord_;
  std::vector<ZP> polys_;
  std::vector<unsigned> sugar_;
  std::vector<bool> active_;
  std::set<Pair, PairLess> pairs_;
  long skipped_ = 0;
};

}  // namespace

Monomial leading_monomial(const MPoly& f, MonomialOrder kind) {
  if (f.is_zero()) throw std::invalid_argument("leading_monomial: zero polynomial");
  const Ord ord{kind};
  Monomial best = f.terms().front().mono;
  for (const auto& t : f.terms())
    if (ord.gt(t.mono, best)) best = t.mono;
  return best;
}

GroebnerResult buchberger(const std::vector<MPoly>& generators, const std::string& order, const GroebnerBudget& budget,
                          MonomialOrder kind) {
  if (generators.empty()) throw std::invalid_argument("buchberger: no generators");
  GroebnerResult res;
  res.order = order;
  res.kind = kind;
  res.method = kind == MonomialOrder::Lex ? "buchberger-lex" : "buchberger-grevlex";
  const Ord ord{kind};
  Engine eng(budget, ord);
  try {
    for (const auto& g : generators) {
      const MPoly f = g.reorder(order);
      if (f.is_zero()) continue;
      eng.add(to_zp(f, ord), f.total_degree());
    }
    eng.run(res.stats);
    for (const auto& p : eng.reduced_basis()) res.basis.push_back(to_mpoly(p, order));
    res.complete = true;
  } catch (const BudgetExceeded& e) {
    res.complete = false;
    if (e.memory) {
      res.notes.push_back("memory budget of " + std::to_string(budget.max_memory_mib) +
                          " MiB exceeded; partial basis dropped");
      eng.release();
      res.stats.pairs_skipped = eng.skipped();
      res.stats.seconds = eng.elapsed();
      return res;
    }
    // Integer representatives as they stand; normalizing huge partial
    // polynomials would cost more than the budget itself.
    for (const auto& p : eng.current_basis()) {
      std::vector<MPoly::Term> t;
      for (const auto& x : p) t.push_back({x.m, mpq_class(x.c)});
      res.basis.emplace_back(order, std::move(t));
    }
    res.complete = false;
  }
  res.stats.pairs_skipped = eng.skipped();
  res.stats.seconds = eng.elapsed();
  return res;
}

bool s_polynomials_reduce_to_zero(const std::vector<MPoly>& basis, MonomialOrder kind) {
  const Ord ord{kind};
  std::vector<ZP> polys;
  for (const auto& b : basis) {
    if (b.is_zero()) return false;
    polys.push_back(to_zp(b, ord));
  }
  std::vector<size_t> all(polys.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  for (size_t i = 0; i < polys.size(); ++i)
    for (size_t j = i + 1; j < polys.size(); ++j)
      if (!full_reduce(s_poly(polys[i], polys[j], ord), polys, all, ord, nullptr).empty()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// FGLM: change of order for zero-dimensional ideals

namespace {

struct QTerm {
  Monomial m;
  mpq_class c;
};

// Normal form over ℚ (terms sorted by `ord`) modulo a Gröbner basis in that order.
std::vector<QTerm> normal_form(std::vector<QTerm> p, const std::vector<ZP>& g, const Ord& ord) {
  size_t k = 0;
  while (k < p.size()) {
    const ZP* hit = nullptr;
    for (const auto& b : g)
      if (mono_divides(b.front().m, p[k].m)) {
        hit = &b;
        break;
      }
    if (!hit) {
      ++k;
      continue;
    }
    const Monomial shift = p[k].m - hit->front().m;
    const mpq_class f = p[k].c / mpq_class(hit->front().c);
    std::vector<QTerm> out(p.begin(), p.begin() + static_cast<long>(k));
    size_t i = k + 1, j = 1;
    while (i < p.size() || j < hit->size()) {
      const Monomial gm = j < hit->size() ? (*hit)[j].m + shift : 0;
      if (j == hit->size() || (i < p.size() && ord.gt(p[i].m, gm))) {
        out.push_back(p[i++]);
      } else if (i == p.size() || ord.gt(gm, p[i].m)) {
        out.push_back({gm, -f * (*hit)[j].c});
        ++j;
      } else {
        mpq_class c = p[i].c - f * (*hit)[j].c;
        if (c != 0) out.push_back({gm, std::move(c)});
        ++i;
        ++j;
      }
    }
    p = std::move(out);
  }
  return p;
}

}  // namespace

GroebnerResult fglm(const GroebnerResult& src, const std::string& lex_order, std::size_t max_dimension) {
  if (!src.complete) throw std::invalid_argument("fglm: source basis is incomplete");
  const std::string& vars = src.order;
  const int n = static_cast<int>(vars.size());
  if (lex_order.size() != vars.size() || !std::is_permutation(vars.begin(), vars.end(), lex_order.begin()))
    throw std::invalid_argument("fglm: target order must permute the source variables");
  const auto t0 = std::chrono::steady_clock::now();
  const Ord ord{src.kind};
  std::vector<ZP> g;
  for (const auto& b : src.basis) g.push_back(to_zp(b, ord));

  for (int v = 0; v < n; ++v) {
    bool pure = false;
    for (const auto& b : g)
      if (b.front().m == mono_var(v, mono_exp(b.front().m, v))) pure = true;
    if (!pure) throw std::runtime_error(std::string("fglm: ideal is not zero-dimensional (no pure power of ") + vars[v] + ")");
  }
  auto standard = [&](Monomial m) {
    for (const auto& b : g)
      if (mono_divides(b.front().m, m)) return false;
    return true;
  };

  // Staircase of the source order.
  std::vector<Monomial> stair;
  std::map<Monomial, size_t> index;
  {
    std::vector<Monomial> queue{0};
    std::set<Monomial> seen{0};
    while (!queue.empty()) {
      const Monomial m = queue.back();
      queue.pop_back();
      if (!standard(m)) continue;
      index[m] = stair.size();
      stair.push_back(m);
      if (stair.size() > max_dimension) throw std::runtime_error("fglm: quotient dimension exceeds the limit");
      for (int v = 0; v < n; ++v) {
        const Monomial next = m + mono_var(v);
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
  }
  const size_t dim = stair.size();
  if (dim == 0) throw std::runtime_error("fglm: ideal is the whole ring");

  using Sparse = std::vector<std::pair<size_t, mpq_class>>;
  auto to_sparse = [&](const std::vector<QTerm>& nf) {
    Sparse s;
    for (const auto& t : nf) s.emplace_back(index.at(t.m), t.c);
    return s;
  };
  // mult[v][j] = NF(x_v · stair[j])
  std::vector<std::vector<Sparse>> mult(static_cast<size_t>(n), std::vector<Sparse>(dim));
  for (int v = 0; v < n; ++v)
    for (size_t j = 0; j < dim; ++j)
      mult[static_cast<size_t>(v)][j] = to_sparse(normal_form({{stair[j] + mono_var(v), 1}}, g, ord));

  // Target lex order: permute exponent fields, then compare as integers.
  std::vector<int> target(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) target[static_cast<size_t>(v)] = static_cast<int>(lex_order.find(vars[static_cast<size_t>(v)]));
  auto to_target = [&](Monomial m) {
    Monomial r = 0;
    for (int v = 0; v < n; ++v) r |= mono_var(target[static_cast<size_t>(v)], mono_exp(m, v));
    return r;
  };
  auto less_target = [&](Monomial a, Monomial b) { return to_target(a) < to_target(b); };

  struct Row {
    size_t pivot;
    std::vector<mpq_class> v;     // reduced NF vector, pivot entry 1
    std::vector<mpq_class> comb;  // v = Σ comb_j NF(S_j)
  };
  std::vector<Row> rows;
  std::vector<Monomial> S;
  std::vector<std::vector<mpq_class>> s_nf;
  std::vector<Monomial> new_leads;
  std::vector<MPoly> out;
  std::set<Monomial, decltype(less_target)> cand(less_target);
  std::set<Monomial> done;
  cand.insert(0);

  while (!cand.empty()) {
    const Monomial m = *cand.begin();
    cand.erase(cand.begin());
    if (!done.insert(m).second) continue;
    bool divisible = false;
    for (Monomial l : new_leads)
      if (mono_divides(l, m)) divisible = true;
    if (divisible) continue;

    std::vector<mpq_class> vec(dim, mpq_class(0));
    if (m == 0) {
      vec[index.at(0)] = 1;
    } else {
      size_t parent = S.size();
      int via = -1;
      for (int v = 0; v < n && via < 0; ++v) {
        if (mono_exp(m, v) == 0) continue;
        const auto it = std::find(S.begin(), S.end(), m - mono_var(v));
        if (it != S.end()) {
          parent = static_cast<size_t>(it - S.begin());
          via = v;
        }
      }
      if (via < 0) throw std::logic_error("fglm: candidate without a standard parent");
      for (size_t j = 0; j < dim; ++j) {
        const mpq_class& a = s_nf[parent][j];
        if (a == 0) continue;
        for (const auto& [k, c] : mult[static_cast<size_t>(via)][j]) vec[k] += a * c;
      }
    }
    std::vector<mpq_class> w = vec;
    std::vector<mpq_class> comb(S.size() + 1, mpq_class(0));
    for (const auto& r : rows) {
      if (w[r.pivot] == 0) continue;
      const mpq_class f = w[r.pivot];
      for (size_t k = 0; k < dim; ++k)
        if (r.v[k] != 0) w[k] -= f * r.v[k];
      for (size_t k = 0; k < r.comb.size(); ++k)
        if (r.comb[k] != 0) comb[k] -= f * r.comb[k];
    }
    size_t pivot = dim;
    for (size_t k = 0; k < dim; ++k)
      if (w[k] != 0) {
        pivot = k;
        break;
      }
    if (pivot == dim) {
      // vec = −Σ comb_j NF(S_j): m + Σ comb_j S_j lies in the ideal.
      std::vector<MPoly::Term> terms{{m, 1}};
      for (size_t k = 0; k < S.size(); ++k)
        if (comb[k] != 0) terms.push_back({S[k], comb[k]});
      out.push_back(MPoly(vars, std::move(terms)).reorder(lex_order).monic());
      new_leads.push_back(m);
      continue;
    }
    comb[S.size()] = 1;
    const mpq_class inv = 1 / w[pivot];
    for (auto& x : w) x *= inv;
    for (auto& x : comb) x *= inv;
    for (auto& r : rows) r.comb.resize(S.size() + 1, mpq_class(0));
    rows.push_back({pivot, std::move(w), std::move(comb)});
    S.push_back(m);
    s_nf.push_back(std::move(vec));
    for (int v = 0; v < n; ++v) cand.insert(m + mono_var(v));
  }

  GroebnerResult res;
  res.order = lex_order;
  res.kind = MonomialOrder::Lex;
  res.method = src.method + "+fglm";
  res.complete = true;
  res.stats = src.stats;
  res.quotient_dimension = static_cast<long>(dim);
  std::sort(out.begin(), out.end(),
            [](const MPoly& a, const MPoly& b) { return a.leading_monomial() > b.leading_monomial(); });
  res.basis = std::move(out);
  res.stats.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

GroebnerResult lex_groebner(const std::vector<MPoly>& generators, const std::string& order,
                            const GroebnerBudget& budget) {
  GroebnerResult dr = buchberger(generators, order, budget, MonomialOrder::GrevLex);
  if (!dr.complete) return dr;
  try {
    return fglm(dr, order);
  } catch (const std::runtime_error&) {
    // Positive-dimensional: fall back to a direct lex run on what is left of the budget.
    GroebnerBudget rest = budget;
    if (rest.seconds > 0) rest.seconds = std::max(1.0, rest.seconds - dr.stats.seconds);
    GroebnerResult lr = buchberger(generators, order, rest, MonomialOrder::Lex);
    lr.stats.seconds += dr.stats.seconds;
    lr.notes.push_back("grevlex basis is not zero-dimensional; used direct lex");
    return lr;
  }
}

const MPoly& last_element(const std::vector<MPoly>& basis) {
  if (basis.empty()) throw std::invalid_argument("last_element: empty basis");
  return *std::min_element(basis.begin(), basis.end(), [](const MPoly& a, const MPoly& b) {
    return a.leading_monomial() < b.leading_monomial();
  });
}

FactorCheck check_paper_factor(const MPoly& gb_last, const std::vector<MPoly>& claimed) {
  FactorCheck fc;
  fc.product = MPoly::constant(gb_last.vars(), 1);
  for (const auto& f : claimed) fc.product = fc.product * f.reorder(gb_last.vars());
  fc.quotient = divide_exact(gb_last, fc.product);
  fc.divides = fc.quotient.has_value();
  return fc;
}

std::pair<MPoly, MPoly> content_split(const MPoly& g, int var) {
  // Group terms by their monomial in the other variables.
  std::map<Monomial, std::vector<mpq_class>> groups;
  const Monomial vmask = kExpMask << mono_shift(var);
  for (const auto& t : g.terms()) {
    auto& c = groups[t.mono & ~vmask];
    const unsigned e = mono_exp(t.mono, var);
    if (c.size() <= e) c.resize(e + 1, mpq_class(0));
    c[e] = t.coeff;
  }
  QPoly content;
  for (auto& [m, c] : groups) content = gcd(content, QPoly(c));
  std::vector<MPoly::Term> ct;
  for (int k = 0; k <= content.degree(); ++k)
    if (content.coeff(k) != 0) ct.push_back({mono_var(var, static_cast<unsigned>(k)), content.coeff(k)});
  MPoly c(g.vars(), std::move(ct));
  auto prim = divide_exact(g, c);
  if (!prim) throw std::logic_error("content_split: content does not divide");
  return {c, *prim};
}

// ---------------------------------------------------------------------------
// Solution counting

namespace {

// Coefficients in `var` after substituting the known values, with the size
// (sum of term moduli) each coefficient was accumulated from.
struct Specialized {
  std::vector<APComplex> c;
  std::vector<Real> size;
};

Specialized specialize(const MPoly& f, int var, const std::vector<std::optional<APComplex>>& known, mpfr_prec_t bits) {
  const size_t deg = f.degree_in(var);
  Specialized s{std::vector<APComplex>(deg + 1, APComplex(0L, bits)), std::vector<Real>(deg + 1, Real(0L, bits))};
  for (const auto& t : f.terms()) {
    APComplex term = APComplex::from_rational(t.coeff, mpq_class(0), bits);
    for (int v = 0; v < static_cast<int>(f.vars().size()); ++v) {
      if (v == var) continue;
      const unsigned e = mono_exp(t.mono, v);
      if (e == 0) continue;
      if (!known[static_cast<size_t>(v)]) throw std::logic_error("specialize: unknown variable value");
      for (unsigned k = 0; k < e; ++k) term = term * *known[static_cast<size_t>(v)];
    }
    const unsigned k = mono_exp(t.mono, var);
    s.size[k] = s.size[k] + term.abs();
    s.c[k] = s.c[k] + term;
  }
  return s;
}

// Drops leading coefficients that vanish to working precision.
void trim_small(Specialized& s, const Real& tol) {
  while (!s.c.empty() && s.c.back().abs() <= tol * s.size.back()) {
    s.c.pop_back();
    s.size.pop_back();
  }
}

APComplex horner(const std::vector<APComplex>& c, const APComplex& x) {
  APComplex acc = zero_like(x);
  for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

Real horner_abs(const std::vector<Real>& c, const Real& ax) {
  Real acc(0L, ax.precision());
  for (size_t k = c.size(); k-- > 0;) acc = acc * ax + c[k];
  return acc;
}

}  // namespace

BoxCount count_box_solutions(const RegionRecord& region, const std::vector<MPoly>& gb, int digits) {
  BoxCount bc;
  if (gb.empty()) throw std::invalid_argument("count_box_solutions: empty basis");
  const std::string vars = gb.front().vars();
  const int n = static_cast<int>(vars.size());
  const int last = n - 1;
  const auto bits = digits_to_bits(digits);
  const Real tight = pow10(-(digits / 2), bits);
  const Real loose = pow10(-(digits / 4), bits);

  const MPoly& g = last_element(gb);
  auto [content, prim] = content_split(g, last);
  if (!prim.is_constant()) {
    bc.excluded_factor = prim;
    bc.notes.push_back("last element has a factor in several variables: " + prim.to_string());
  }
  if (content.is_constant()) throw std::runtime_error("count_box_solutions: no univariate factor in the last variable");
  std::vector<mpq_class> uc(content.degree_in(last) + 1, mpq_class(0));
  for (const auto& t : content.terms()) uc[mono_exp(t.mono, last)] = t.coeff;
  const auto base_roots = rational_poly_roots(QPoly(uc), digits);

  using Partial = std::vector<std::optional<APComplex>>;
  std::vector<Partial> partials;
  for (const auto& r : base_roots) {
    Partial pt(static_cast<size_t>(n));
    pt[static_cast<size_t>(last)] = r.with_precision(bits);
    partials.push_back(std::move(pt));
  }

  for (int var = last - 1; var >= 0; --var) {
    const unsigned allowed = ((1u << n) - 1) & ~((1u << var) - 1);
    std::vector<const MPoly*> level;
    for (const auto& f : gb) {
      const unsigned s = f.support();
      if ((s & ~allowed) == 0 && (s & (1u << var))) level.push_back(&f);
    }
    std::vector<Partial> next;
    for (const auto& pt : partials) {
      std::vector<Specialized> specs;
      bool inconsistent = false;
      for (const MPoly* f : level) {
        auto c = specialize(*f, var, pt, bits);
        trim_small(c, tight);
        if (c.c.size() == 1) inconsistent = true;
        if (c.c.size() >= 2) specs.push_back(std::move(c));
      }
      if (inconsistent) continue;
      if (specs.empty()) {
        throw std::runtime_error(std::string("count_box_solutions: positive-dimensional fiber in ") + vars[var]);
      }
      const auto pick = std::min_element(specs.begin(), specs.end(),
                                         [](const auto& a, const auto& b) { return a.c.size() < b.c.size(); });
      std::vector<APComplex> roots;
      for (const auto& x : aberth_roots(pick->c)) {
        bool dup = false;
        for (const auto& y : roots)
          if ((x - y).abs() <= loose) dup = true;
        if (!dup) roots.push_back(x);
      }
      for (const auto& x : roots) {
        bool ok = true;
        const Real ax = x.abs();
        for (const auto& c : specs)
          if (horner(c.c, x).abs() > loose * horner_abs(c.size, ax)) ok = false;
        if (!ok) continue;
        Partial ext = pt;
        ext[static_cast<size_t>(var)] = x;
        next.push_back(std::move(ext));
      }
    }
    partials = std::move(next);
  }

  bc.roots = static_cast<long>(partials.size());
  std::vector<ParamPoint> inside;
  const Real same = pow10(-(digits / 3), bits);
  for (const auto& pt : partials) {
    auto value = [&](char c) { return *pt[vars.find(c)]; };
    const TracePoint tp{value('p'), value('q'), value('r'), value('z')};
    std::vector<BranchCandidate> cands;
    try {
      cands = trace_branch_candidates(tp);
    } catch (const SolverError& e) {
      bc.notes.push_back(std::string("skipped degenerate root: ") + e.what());
      bc.branch_candidates += 16;
      continue;
    }
    bc.branch_candidates += static_cast<long>(cands.size());
    for (const auto& c : cands) {
      if (!c.reproduces_traces) continue;
      if (!region.box.contains(Param::L, c.pt.Lp) || !region.box.contains(Param::D, c.pt.Dp) ||
          !region.box.contains(Param::R, c.pt.Rp))
        continue;
      bool dup = false;
      for (const auto& q : inside)
        if ((q.Lp - c.pt.Lp).abs() <= same && (q.Dp - c.pt.Dp).abs() <= same && (q.Rp - c.pt.Rp).abs() <= same)
          dup = true;
      if (!dup) inside.push_back(c.pt);
    }
  }
  bc.count = static_cast<long>(inside.size());
  return bc;
}

// ---------------------------------------------------------------------------
// Mean-value exclusion

std::array<APComplex, 3> midpoint_traces(const BoxRegion& box, int digits) {
  const ParamPoint mid{box.midpoint(Param::L, digits), box.midpoint(Param::D, digits), box.midpoint(Param::R, digits)};
  const TracePoint tp = trace_point(mid);
  return {tp.p, tp.q, tp.r};
}

MvtCertificate mvt_exclusion(const MPoly& factor, const RegionRecord& region, const std::string& radius_text,
                             int digits) {
  MvtCertificate cert;
  const auto bits = digits_to_bits(digits);
  const Real radius(parse_decimal_exact(radius_text), bits);
  if (radius.sign() <= 0) throw std::invalid_argument("mvt_exclusion: radius must be positive");
  cert.radius = radius.to_double();
  cert.midpoint_traces = midpoint_traces(region.box, digits);
  const auto& [p0, q0, r0] = cert.midpoint_traces;

  const std::string& vars = factor.vars();
  std::vector<APComplex> vals;
  std::vector<Real> bounds;  // |v₀| + radius
  for (char c : vars) {
    APComplex v = c == 'p' ? p0 : c == 'q' ? q0 : c == 'r' ? r0 : APComplex(0L, bits);
    if (c != 'p' && c != 'q' && c != 'r' && factor.degree_in(factor.var_index(c)) > 0)
      throw std::invalid_argument(std::string("mvt_exclusion: factor uses '") + c + "'");
    bounds.push_back(v.abs() + radius);
    vals.push_back(std::move(v));
  }
  const Real value = factor.eval(vals).abs();

  // Gradient bound by the triangle inequality on each partial derivative.
  Real sumsq(0L, bits);
  for (int v = 0; v < static_cast<int>(vars.size()); ++v) {
    const MPoly d = factor.partial(v);
    Real b(0L, bits);
    for (const auto& t : d.terms()) {
      Real term(mpq_class(abs(t.coeff)), bits);
      for (int u = 0; u < static_cast<int>(vars.size()); ++u)
        for (unsigned e = mono_exp(t.mono, u); e > 0; --e) term = term * bounds[static_cast<size_t>(u)];
      b = b + term;
    }
    sumsq = sumsq + b * b;
  }
  const Real bound = sqrt(sumsq);
  cert.value = value.to_double();
  cert.gradient_bound = bound.to_double();
  cert.ratio = (value / radius).to_double();
  cert.passes = value > bound * radius;

  // Image of the box in trace space, sampled on a 3-point grid per coordinate.
  Real worst(0L, bits);
  std::array<int, 6> idx{};
  const int total = 729;
  for (int code = 0; code < total; ++code) {
    int c = code;
    for (auto& i : idx) {
      i = c % 3;
      c /= 3;
    }
    std::array<Real, 6> coord;
    for (size_t k = 0; k < 6; ++k) {
      const auto& rg = region.box.ranges[k];
      const mpq_class x = idx[k] == 0 ? rg.lo_q : idx[k] == 1 ? mpq_class((rg.lo_q + rg.hi_q) / 2) : rg.hi_q;
      coord[k] = Real(x, bits);
    }
    const ParamPoint pt{APComplex(coord[0], coord[1]), APComplex(coord[2], coord[3]), APComplex(coord[4], coord[5])};
    const TracePoint tp = trace_point(pt);
    const Real d = sqrt((tp.p - p0).norm_sq() + (tp.q - q0).norm_sq() + (tp.r - r0).norm_sq());
    if (d > worst) worst = d;
  }
  cert.image_radius = worst.to_double();
  cert.covers_box = worst <= radius;
  return cert;
}

std::vector<MPoly> printed_factors(const RegionRecord& region, const std::string& order) {
  for (const auto& pf : region.printed_factors) {
    if (pf.order != order) continue;
    std::vector<MPoly> out;
    for (const auto& f : pf.factors) out.push_back(parse_mpoly(f, order));
    return out;
  }
  return {};
}

NFElement eval_at_group(const MPoly& f, const ExactGroup& g) {
  std::vector<NFElement> vals;
  for (char c : f.vars()) {
    switch (c) {
      case 'z': vals.push_back(g.z); break;
      case 'r': vals.push_back(g.r); break;
      case 'q': vals.push_back(g.q); break;
      case 'p': vals.push_back(g.p); break;
      default: throw std::invalid_argument(std::string("eval_at_group: unknown variable '") + c + "'");
    }
  }
  return f.eval(vals);
}

}  // namespace exreg
