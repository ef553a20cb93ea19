#include "exreg/exactfield.hpp"

#include "exreg/lll.hpp"
#include "exreg/recognize.hpp"
#include "exreg/roots.hpp"
#include "exreg/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>
#include <vector>

namespace exreg {

ExactGroup make_exact_group(const GroupData& data, int digits) {
  ExactGroup g;
  g.field = NumberField::make(data.z_minpoly);
  g.z = NFElement::generator(g.field);
  g.p = NFElement(g.field, data.tr1);
  g.q = NFElement(g.field, data.tr2);
  g.r = NFElement(g.field, data.tr3);
  std::tie(g.f2, g.w2) = conjugate_pair(g.p, g.q, g.r, g.z);
  g.z_embedding = nearest_root(g.field->monic_minpoly(), data.z_approx.value(digits), digits);
  return g;
}

int scalar_sign(const NFMat& m, std::string* offending) {
  auto fail = [&](const char* entry, const NFElement& v) {
    if (offending) *offending = std::string("entry ") + entry + " = " + v.to_string();
    return 0;
  };
  const NFElement one = one_like(m.m11);
  int s = 0;
  if (m.m11 == one) {
    s = 1;
  } else if (m.m11 == -one) {
    s = -1;
  } else {
    return fail("(1,1)", m.m11);
  }
  if (!m.m12.is_zero()) return fail("(1,2)", m.m12);
  if (!m.m21.is_zero()) return fail("(2,1)", m.m21);
  const NFElement expect = s > 0 ? one : -one;
  if (!(m.m22 == expect)) return fail("(2,2)", m.m22);
  return s;
}

RelatorCertificate verify_relators_exact(const ExactGroup& g, const Word& r1, const Word& r2) {
  RelatorCertificate cert;
  const NFElement one = one_like(g.z);
  cert.det_f2_one = g.f2.det() == one;
  cert.det_w2_one = g.w2.det() == one;
  if (!cert.det_w2_one) {
    cert.error = "det w2 != 1: z is not a root of z^2 - tr2*z + 1";
    return cert;
  }
  const std::vector<NFMat> images{g.f2, g.w2};
  std::string where;
  cert.sign1 = scalar_sign(eval_word<NFElement>(r1, images), &where);
  if (cert.sign1 == 0) {
    cert.error = "r1 is not +-I: " + where;
    return cert;
  }
  cert.sign2 = scalar_sign(eval_word<NFElement>(r2, images), &where);
  if (cert.sign2 == 0) {
    cert.error = "r2 is not +-I: " + where;
    return cert;
  }
  cert.ok = cert.det_f2_one;
  return cert;
}

ItfResult exact_itf(const ExactGroup& g, long bound) {
  ItfResult res;
  const NFMat f2sq = g.f2 * g.f2;
  const NFMat w2sq = g.w2 * g.w2;
  res.trf2 = f2sq.trace();
  res.trw2 = w2sq.trace();
  res.trf2w2 = (f2sq * w2sq).trace();

  // Small combinations first, so the answer is stable and usually t = tr f².
  std::vector<std::pair<long, long>> order;
  for (long k = -bound; k <= bound; ++k)
    for (long l = -bound; l <= bound; ++l) order.emplace_back(k, l);
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return std::abs(a.first) + std::abs(a.second) < std::abs(b.first) + std::abs(b.second);
  });

  for (const auto& [k, l] : order) {
    const NFElement t = res.trf2 + NFElement::rational(g.field, k) * res.trw2 +
                        NFElement::rational(g.field, l) * res.trf2w2;
    if (!express_in_subfield(res.trf2, t) || !express_in_subfield(res.trw2, t) ||
        !express_in_subfield(res.trf2w2, t))
      continue;
    res.ok = true;
    res.k = k;
    res.l = l;
    res.t = t;
    res.minpoly = element_minpoly(t);
    return res;
  }
  res.error = "no primitive element A + kB + lC with |k|, |l| <= " + std::to_string(bound);
  return res;
}

namespace {

// An exact root of Q in ℚ[x]/(P), searched for by lattice reduction on the
// embeddings: for each complex root β of Q, look for an integer relation
// among (1, α, …, α^{n−1}, β). Denominators are unbounded; precision grows
// until a relation survives the exact check.
std::optional<QPoly> find_root_in_field(const IntPoly& P, const IntPoly& Q) {
  const int n = P.degree();
  const QPoly Pq = P.to_q();
  const QPoly Qq = Q.to_q();
  for (int digits = 40 * n + 60; digits <= 640 * n + 60; digits *= 2) {
    const auto alphas = rational_poly_roots(Pq, digits);
    const auto betas = rational_poly_roots(Qq, digits);
    const APComplex& alpha = alphas.front();
    const auto bits = alpha.precision();
    std::vector<APComplex> vals{APComplex(1L, bits)};
    for (int k = 1; k < n; ++k) vals.push_back(vals.back() * alpha);
    for (const auto& beta : betas) {
      auto row_vals = vals;
      row_vals.push_back(beta.with_precision(bits));
      IntMatrix red;
      try {
        red = lll_reduce(relation_lattice(row_vals, digits - 10));
      } catch (const LatticeError&) {
        continue;
      }
      for (const auto& row : red) {
        const mpz_class& den = row[static_cast<size_t>(n)];
        if (den == 0) continue;
        std::vector<mpq_class> c;
        for (int j = 0; j < n; ++j) c.emplace_back(-row[static_cast<size_t>(j)], den);
        QPoly cand(std::move(c));
        // Q(cand) ≡ 0 mod P, by Horner in ℚ[x]/(P).
        QPoly acc;
        for (int i = Qq.degree(); i >= 0; --i) acc = (acc * cand + QPoly::constant(Qq.coeff(i))) % Pq;
        if (acc.is_zero()) return cand;
      }
    }
  }
  return std::nullopt;
}

bool ordered_before(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.coeffs < b.coeffs;
}

}  // namespace

SameFieldResult same_field_detail(const IntPoly& P0, const IntPoly& Q0) {
  const IntPoly P = P0.normalized();
  const IntPoly Q = Q0.normalized();
  SameFieldResult res;
  if (P == Q) {
    res.isomorphic = true;
    res.reason = "equal";
    return res;
  }
  if (P.degree() != Q.degree()) {
    res.reason = "degree";
    return res;
  }
  const QPoly Pq = P.to_q(), Qq = Q.to_q();
  if (count_real_roots(Pq) != count_real_roots(Qq)) {
    res.reason = "signature";
    return res;
  }
  // Field discriminants differ from polynomial ones by squares.
  const mpq_class ratio = discriminant(Pq) / discriminant(Qq);
  if (!is_rational_square(ratio)) {
    res.reason = "discriminant";
    return res;
  }
  // Search in a canonical direction so the answer does not depend on argument order.
  const bool swap = ordered_before(Q, P);
  auto root = swap ? find_root_in_field(Q, P) : find_root_in_field(P, Q);
  if (!root) {
    res.reason = "no-root";
    return res;
  }
  res.isomorphic = true;
  res.reason = "root";
  if (!swap) res.root_of_q = root;
  return res;
}

bool same_field(const IntPoly& P, const IntPoly& Q) { return same_field_detail(P, Q).isomorphic; }

namespace {

// The root of x² − s·x + 1 in K that embeds nearest to `target`.
std::optional<NFElement> quadratic_root_near(const ExactGroup& g, const NFElement& s, const APComplex& target) {
  const NFElement one = one_like(g.z);
  auto is_root = [&](const NFElement& e) { return (e * e - s * e + one).is_zero(); };
  std::vector<NFElement> cands;
  for (const NFElement& e : {g.z, g.q - g.z, -g.z, g.z - g.q}) {
    if (is_root(e)) cands.push_back(e);
  }
  if (cands.empty()) {
    // Recognize a root numerically in the given embedding, then verify exactly.
    const APComplex sv = s.embed(g.z_embedding);
    const APComplex disc = sv * sv - APComplex(4L, sv.precision());
    const APComplex sq = sqrt(disc);
    for (int sgn : {1, -1}) {
      const APComplex root = (sgn > 0 ? sv + sq : sv - sq) * APComplex::from_rational(mpq_class(1, 2), mpq_class(0), sv.precision());
      try {
        NFElement e(g.field, express_in_field(root, g.z_embedding, g.field->minpoly(), 1L << 20));
        if (is_root(e)) cands.push_back(e);
      } catch (const RecognitionError&) {
      }
    }
  }
  if (cands.empty()) return std::nullopt;
  // Complete the pair: the other root is s − e.
  std::vector<NFElement> both{cands.front(), s - cands.front()};
  const auto bits = g.z_embedding.precision();
  const APComplex t = target.with_precision(bits);
  const Real d0 = (both[0].embed(g.z_embedding) - t).abs();
  const Real d1 = (both[1].embed(g.z_embedding) - t).abs();
  return d0 <= d1 ? both[0] : both[1];
}

}  // namespace

SymmetryResult verify_symmetries_exact(const ExactGroup& g, const BoxRegion& box, SymmetryKind kind) {
  SymmetryResult res;
  res.kind = kind;
  const int digits = g.z_embedding.digits();
  const NFElement one = one_like(g.z);

  // a = √L′ satisfies a + 1/a = tr f = p.
  const APComplex a_target = sqrt(box.midpoint(Param::L, digits));
  auto a = quadratic_root_near(g, g.p, a_target);
  if (!a) {
    res.detail = "sqrt(L') is not in Q(z)";
    return res;
  }
  res.a = *a;
  // R′ from (p, q, r) and a.
  const NFElement denom = g.r * res.a - g.q;
  if (denom.is_zero()) {
    res.detail = "r*a - q vanishes";
    return res;
  }
  res.Rp = (g.q * res.a * res.a - g.r * res.a) / denom;

  if (kind == SymmetryKind::LEqualsDROne) {
    if (!(res.Rp == one)) {
      res.detail = "R' = " + res.Rp.to_string() + " is not 1";
      return res;
    }
    // With b = 1, c = √D′ satisfies c + 1/c = tr w = q.
    const APComplex c_target = sqrt(box.midpoint(Param::D, digits));
    auto c = quadratic_root_near(g, g.q, c_target);
    if (!c) {
      res.detail = "sqrt(D') is not in Q(z)";
      return res;
    }
    res.c = *c;
    res.holds = res.c == res.a;
    res.sign = 1;
    res.detail = res.holds ? "b = 1 and a = c" : "a != c";
    return res;
  }
  if (res.Rp == res.a) {
    res.sign = 1;
  } else if (res.Rp == -res.a) {
    res.sign = -1;
  } else {
    res.detail = "R' = " + res.Rp.to_string() + " is neither a nor -a";
    return res;
  }
  res.holds = true;
  res.detail = res.sign > 0 ? "b^2 = a" : "b^2 = -a";
  return res;
}

}  // namespace exreg
