#include "exreg/grouptheory.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>

namespace exreg {

Presentation Presentation::parse(const std::string& generators, const std::vector<std::string>& relator_texts) {
  Presentation p;
  for (char c : generators) p.generators.emplace_back(1, c);
  for (const auto& t : relator_texts) p.relators.push_back(parse_word(t, generators));
  return p;
}

Presentation Presentation::from(const GroupPresentationText& text) {
  Presentation p;
  for (char c : text.generators) p.generators.emplace_back(1, c);
  p.relators = text.relators;
  p.validate();
  return p;
}

int Presentation::index_of(const std::string& name) const {
  auto it = std::find(generators.begin(), generators.end(), name);
  return it == generators.end() ? -1 : static_cast<int>(it - generators.begin());
}

void Presentation::validate() const {
  const int n = static_cast<int>(generators.size());
  for (size_t i = 0; i < relators.size(); ++i) {
    if (relators[i].max_generator() >= n) {
      throw GroupError("relator " + std::to_string(i + 1) + " uses a generator outside the " + std::to_string(n) +
                       " declared");
    }
  }
}

std::string Presentation::letters() const {
  std::string out;
  for (const auto& g : generators) {
    if (g.size() != 1) throw GroupError("generator '" + g + "' is not a single character");
    out += g;
  }
  return out;
}

std::string Presentation::render() const {
  std::string out = "<";
  for (size_t i = 0; i < generators.size(); ++i) out += (i ? "," : "") + generators[i];
  out += " |";
  for (size_t i = 0; i < relators.size(); ++i) out += (i ? ", " : " ") + render_word(relators[i], generators);
  return out + ">";
}

// ---------------------------------------------------------------- integer matrices

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = a[0].size();
  if (inner != b.size()) throw GroupError("multiply: shape mismatch");
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix c(a.size(), std::vector<mpz_class>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

SmithForm smith_normal_form(const IntMatrix& a, std::size_t cols) {
  const std::size_t rows = a.size();
  for (const auto& row : a)
    if (row.size() != cols) throw GroupError("smith_normal_form: ragged matrix");
  SmithForm s{identity_matrix(rows), a, identity_matrix(cols), {}};
  IntMatrix& D = s.D;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(D[i], D[j]);
    std::swap(s.U[i], s.U[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : D) std::swap(row[i], row[j]);
    for (auto& row : s.V) std::swap(row[i], row[j]);
  };
  // row_i += k·row_j, col_i += k·col_j
  auto add_row = [&](std::size_t i, std::size_t j, const mpz_class& k) {
    for (std::size_t c = 0; c < cols; ++c) D[i][c] += k * D[j][c];
    for (std::size_t c = 0; c < rows; ++c) s.U[i][c] += k * s.U[j][c];
  };
  auto add_col = [&](std::size_t i, std::size_t j, const mpz_class& k) {
    for (std::size_t r = 0; r < rows; ++r) D[r][i] += k * D[r][j];
    for (std::size_t r = 0; r < cols; ++r) s.V[r][i] += k * s.V[r][j];
  };

  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (D[i][j] != 0 && (pi == rows || abs(D[i][j]) < abs(D[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) break;  // remaining block is zero
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D[i][t] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), D[i][t].get_mpz_t(), D[t][t].get_mpz_t());
        add_row(i, t, -q);
        if (D[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D[t][j] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), D[t][j].get_mpz_t(), D[t][t].get_mpz_t());
        add_col(j, t, -q);
        if (D[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D[i][j] % D[t][t] != 0) {
            add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D[t][t] < 0) {
      for (auto& v : D[t]) v = -v;
      for (auto& v : s.U[t]) v = -v;
    }
  }
  for (std::size_t t = 0; t < n; ++t) s.diagonal.push_back(D[t][t]);
  return s;
}

IntMatrix relation_matrix(const Presentation& p) {
  p.validate();
  const int n = static_cast<int>(p.generators.size());
  IntMatrix m;
  for (const auto& r : p.relators) {
    std::vector<mpz_class> row;
    for (long e : r.exponent_sums(n)) row.emplace_back(e);
    m.push_back(std::move(row));
  }
  return m;
}

std::vector<long> abelianization(const Presentation& p) {
  const SmithForm s = smith_normal_form(relation_matrix(p), p.generators.size());
  std::vector<long> torsion;
  std::size_t nonzero = 0;
  for (const auto& d : s.diagonal) {
    if (d == 0) continue;
    ++nonzero;
    if (d == 1) continue;
    if (!d.fits_slong_p()) throw GroupError("abelianization: invariant factor too large");
    torsion.push_back(d.get_si());
  }
  // The pivoting leaves nonzero entries first, already in divisibility order.
  torsion.resize(torsion.size() + (p.generators.size() - nonzero), 0);
  return torsion;
}

bool lattice_contains(const SmithForm& s, const std::vector<mpz_class>& v) {
  const std::size_t cols = s.V.size();
  if (v.size() != cols) throw GroupError("lattice_contains: vector length mismatch");
  for (std::size_t j = 0; j < cols; ++j) {
    mpz_class x = 0;
    for (std::size_t k = 0; k < cols; ++k) x += v[k] * s.V[k][j];
    const mpz_class d = j < s.diagonal.size() ? s.diagonal[j] : mpz_class(0);
    if (d == 0 ? x != 0 : x % d != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Tietze moves

namespace {

long occurrences(const Word& w, int gen) {
  long n = 0;
  for (const auto& l : w.runs())
    if (l.gen == gen) n += std::labs(l.exp);
  return n;
}

/// Free and cyclic reduction, dropping trivial relators and duplicates (up to inversion).
void normalize(std::vector<Word>& rels) {
  std::vector<Word> out;
  std::set<std::string> seen;
  for (const auto& r : rels) {
    Word c = cyclic_reduce(r);
    if (c.empty()) continue;
    std::vector<std::string> dummy;
    const int n = c.max_generator() + 1;
    for (int i = 0; i < n; ++i) dummy.push_back("g" + std::to_string(i) + ".");
    const std::string key = render_word(c, dummy);
    const std::string ikey = render_word(cyclic_reduce(invert_word(c)), dummy);
    if (seen.count(key) || seen.count(ikey)) continue;
    seen.insert(key);
    out.push_back(std::move(c));
  }
  rels = std::move(out);
}

/// Solves relator r for its single occurrence of `gen`.
Word solve_for(const Word& r, int gen) {
  std::vector<Letter> letters = expand_letters(r);
  auto it = std::find_if(letters.begin(), letters.end(), [&](const Letter& l) { return l.gen == gen; });
  std::rotate(letters.begin(), it, letters.end());
  const long e = letters.front().exp;
  const Word rest = Word::reduce(std::span<const Letter>(letters).subspan(1));
  return e > 0 ? invert_word(rest) : rest;
}

}  // namespace

TietzeResult tietze_simplify(const Presentation& p, const TietzeOptions& options) {
  p.validate();
  TietzeResult res;
  std::vector<std::string> names = p.generators;
  std::vector<Word> rels = p.relators;
  normalize(rels);
  auto kept = [&](int g) {
    return std::find(options.keep.begin(), options.keep.end(), names[static_cast<size_t>(g)]) != options.keep.end();
  };

  for (;;) {
    const int n = static_cast<int>(names.size());
    // Candidate (relator, generator) pairs, preferring definitions that bring
    // in the fewest other removable generators, then short relators.
    struct Candidate {
      long other_free, length, uses;
      size_t ri;
      int gen;
    };
    std::vector<Candidate> candidates;
    for (size_t ri = 0; ri < rels.size(); ++ri) {
      const Word& r = rels[ri];
      if (!options.single_occurrence && r.length() > 2) continue;
      for (int g = 0; g < n; ++g) {
        if (kept(g) || occurrences(r, g) != 1) continue;
        long other_free = 0, uses = 0;
        for (int h = 0; h < n; ++h)
          if (h != g && !kept(h) && occurrences(r, h) > 0) ++other_free;
        for (size_t j = 0; j < rels.size(); ++j)
          if (j != ri) uses += occurrences(rels[j], g);
        candidates.push_back({other_free, r.length(), uses, ri, g});
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
      return std::tie(x.other_free, x.length, x.uses) < std::tie(y.other_free, y.length, y.uses);
    });

    bool done = false;
    for (const auto& cand : candidates) {
      const size_t ri = cand.ri;
      const int best = cand.gen;
      const Word& r = rels[ri];
      const Word def = solve_for(r, best);
      // Shift indices above the eliminated generator down by one.
      std::vector<Word> images;
      for (int g = 0; g < n; ++g) {
        const Letter l{g > best ? g - 1 : g, 1};
        images.push_back(Word::reduce(std::span<const Letter>(&l, 1)));
      }
      images[static_cast<size_t>(best)] = substitute(def, images);
      std::vector<Word> next;
      bool too_long = false;
      for (size_t j = 0; j < rels.size() && !too_long; ++j) {
        if (j == ri) continue;
        next.push_back(substitute(rels[j], images));
        too_long = next.back().length() > options.max_relator_length;
      }
      if (too_long) continue;
      res.log.push_back(names[static_cast<size_t>(best)] + " = " + render_word(def, names));
      names.erase(names.begin() + best);
      rels = std::move(next);
      normalize(rels);
      done = true;
      break;
    }
    if (!done) break;
  }
  res.presentation = Presentation{names, rels};
  return res;
}

// ---------------------------------------------------------------- Reidemeister–Schreier

KernelResult rs_index2_kernel(const Presentation& p, const std::vector<int>& parity, const TietzeOptions& simplify) {
  p.validate();
  const int n = static_cast<int>(p.generators.size());
  if (static_cast<int>(parity.size()) != n) throw GroupError("rs_index2_kernel: one parity per generator required");
  int t = -1;
  for (int g = 0; g < n; ++g) {
    if (parity[static_cast<size_t>(g)] != 0 && parity[static_cast<size_t>(g)] != 1)
      throw GroupError("rs_index2_kernel: parities must be 0 or 1");
    if (t < 0 && parity[static_cast<size_t>(g)] == 1) t = g;
  }
  if (t < 0) throw GroupError("rs_index2_kernel: parity map is not surjective (no odd generator)");
  for (size_t i = 0; i < p.relators.size(); ++i) {
    long sum = 0;
    const auto e = p.relators[i].exponent_sums(n);
    for (int g = 0; g < n; ++g) sum += parity[static_cast<size_t>(g)] * e[static_cast<size_t>(g)];
    if (sum % 2 != 0)
      throw GroupError("rs_index2_kernel: relator " + std::to_string(i + 1) + " has odd parity; not a homomorphism");
  }

  KernelResult out;
  out.transversal = p.generators[static_cast<size_t>(t)];
  // Schreier generator (g, c) = rep(c)·g·rep(c + parity g)⁻¹; (t, 0) is trivial.
  std::vector<std::array<int, 2>> index(static_cast<size_t>(n), {-1, -1});
  Presentation& k = out.unsimplified;
  for (int g = 0; g < n; ++g)
    for (int c = 0; c < 2; ++c) {
      if (g == t && c == 0) continue;
      index[static_cast<size_t>(g)][static_cast<size_t>(c)] = static_cast<int>(k.generators.size());
      k.generators.push_back(p.generators[static_cast<size_t>(g)] + std::to_string(c));
    }
  for (const auto& r : p.relators) {
    const auto letters = expand_letters(r);
    for (int c0 = 0; c0 < 2; ++c0) {
      int c = c0;
      std::vector<Letter> runs;
      for (const auto& l : letters) {
        const int par = parity[static_cast<size_t>(l.gen)];
        if (l.exp > 0) {
          const int s = index[static_cast<size_t>(l.gen)][static_cast<size_t>(c)];
          if (s >= 0) runs.push_back({s, 1});
          c ^= par;
        } else {
          c ^= par;
          const int s = index[static_cast<size_t>(l.gen)][static_cast<size_t>(c)];
          if (s >= 0) runs.push_back({s, -1});
        }
      }
      k.relators.push_back(Word::reduce(runs));
    }
  }
  TietzeResult simplified = tietze_simplify(k, simplify);
  out.presentation = std::move(simplified.presentation);
  out.tietze_log = std::move(simplified.log);
  return out;
}

KernelResult rs_index2_kernel(const Presentation& p, const std::map<char, int>& parity, const TietzeOptions& simplify) {
  std::vector<int> par;
  for (const auto& g : p.generators) {
    auto it = g.size() == 1 ? parity.find(g[0]) : parity.end();
    if (it == parity.end()) throw GroupError("rs_index2_kernel: no parity for generator " + g);
    par.push_back(it->second);
  }
  return rs_index2_kernel(p, par, simplify);
}

Presentation rename_generators(const Presentation& p, const std::map<std::string, std::string>& names) {
  Presentation out = p;
  for (auto& g : out.generators) {
    auto it = names.find(g);
    if (it != names.end()) g = it->second;
  }
  return out;
}

std::vector<Word> parse_images(const std::map<char, std::string>& images, const std::string& source_letters,
                               const std::string& target_letters) {
  std::vector<Word> out;
  for (char g : source_letters) {
    auto it = images.find(g);
    if (it == images.end()) throw GroupError(std::string("no image for generator ") + g);
    out.push_back(parse_word(it->second, target_letters));
  }
  return out;
}

// ---------------------------------------------------------------- homomorphisms

HomCertificate verify_hom_kills_relators(const Presentation& source, const std::vector<Word>& images,
                                         const ExactGroup& group, const std::optional<std::vector<Word>>& inverse_images) {
  source.validate();
  HomCertificate cert;
  if (images.size() != source.generators.size()) {
    cert.error = "expected one image per source generator";
    return cert;
  }
  const std::array<NFMat, 2> fw{group.f2, group.w2};
  std::vector<Word> inverse_of_generators;
  for (size_t i = 0; i < source.relators.size(); ++i) {
    const Word w = substitute(source.relators[i], images);
    std::string where;
    const int s = scalar_sign(eval_word<NFElement>(w, fw), &where);
    cert.relator_signs.push_back(s);
    if (s == 0 && cert.error.empty()) cert.error = "relator " + std::to_string(i + 1) + " image is not +-I: " + where;
  }
  cert.ok = cert.error.empty();
  if (inverse_images) {
    cert.round_trip_checked = true;
    cert.round_trip_ok = inverse_images->size() == 2;
    for (size_t i = 0; i < inverse_images->size() && i < 2; ++i) {
      const Word composite = substitute((*inverse_images)[i], images);
      const NFMat m = eval_word<NFElement>(composite, fw) * fw[i].adjugate();
      std::string where;
      const int s = scalar_sign(m, &where);
      cert.round_trip_signs.push_back(s);
      if (s == 0) {
        cert.round_trip_ok = false;
        if (cert.error.empty())
          cert.error = std::string("round trip of ") + (i == 0 ? "f" : "w") + " is not +-identity: " + where;
      }
    }
    cert.ok = cert.ok && cert.round_trip_ok;
  }
  return cert;
}

AutomorphismCheck check_automorphism_order2_detail(const Presentation& p, const std::vector<Word>& images) {
  p.validate();
  const std::size_t n = p.generators.size();
  if (images.size() != n) throw GroupError("check_automorphism_order2: one image per generator required");
  AutomorphismCheck res;
  res.induced.assign(n, std::vector<mpz_class>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    if (images[j].max_generator() >= static_cast<int>(n)) throw GroupError("image uses an unknown generator");
    const auto e = images[j].exponent_sums(static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i) res.induced[i][j] = e[i];
  }
  res.det = determinant(res.induced);
  res.unimodular = abs(res.det) == 1;
  const IntMatrix rel = relation_matrix(p);
  const SmithForm snf = smith_normal_form(rel, n);
  auto apply = [&](const std::vector<mpz_class>& v) {
    std::vector<mpz_class> out(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i] += res.induced[i][j] * v[j];
    return out;
  };
  res.preserves_relations = std::all_of(rel.begin(), rel.end(), [&](const auto& r) { return lattice_contains(snf, apply(r)); });
  res.square_is_identity = true;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<mpz_class> e(n, 0);
    e[j] = 1;
    std::vector<mpz_class> d = apply(apply(e));
    d[j] -= 1;
    if (!lattice_contains(snf, d)) res.square_is_identity = false;
  }
  res.ok = res.unimodular && res.preserves_relations && res.square_is_identity;
  return res;
}

Presentation marked_group(const RegionRecord& region) { return Presentation{{"f", "w"}, {region.r1, region.r2}}; }

std::optional<Presentation> census_presentation(const RegionRecord& region) {
  if (!region.census || region.census->relators.empty()) return std::nullopt;
  Presentation p;
  for (char c : region.census->generators) p.generators.emplace_back(1, c);
  p.relators = region.census->relators;
  p.validate();
  return p;
}

}  // namespace exreg
