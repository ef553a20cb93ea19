#pragma once

#include "exreg/catalog.hpp"
#include "exreg/mat2.hpp"
#include "exreg/numberfield.hpp"

#include <memory>
#include <optional>
#include <string>

namespace exreg {

using NFMat = Mat2<NFElement>;

/// The normal-form pair f₂, w₂ over ℚ(z) built from catalog group data.
struct ExactGroup {
  std::shared_ptr<const NumberField> field;
  NFElement z, p, q, r;
  NFMat f2, w2;
  /// The complex embedding z ↦ z_approx, refined to `digits`.
  APComplex z_embedding;
};

ExactGroup make_exact_group(const GroupData& data, int digits = 120);

struct RelatorCertificate {
  bool ok = false;
  int sign1 = 0, sign2 = 0;
  bool det_f2_one = false, det_w2_one = false;
  /// Which relator/entry failed, with the entry's value.
  std::string error;
};

/// Evaluates r₁, r₂ at (f₂, w₂) over ℚ(z) and checks each is exactly ±I.
RelatorCertificate verify_relators_exact(const ExactGroup& g, const Word& r1, const Word& r2);

/// Returns the sign s if m = s·I exactly, otherwise 0 and the first offending entry.
int scalar_sign(const NFMat& m, std::string* offending = nullptr);

struct ItfResult {
  bool ok = false;
  IntPoly minpoly;
  long k = 0, l = 0;  // t = tr f² + k·tr w² + l·tr f²w²
  NFElement t;
  NFElement trf2, trw2, trf2w2;
  std::string error;
};

/// Invariant trace field ℚ(tr f², tr w², tr f²w²) via a primitive element
/// t = A + kB + lC with |k|, |l| ≤ bound.
ItfResult exact_itf(const ExactGroup& g, long bound = 8);

struct SameFieldResult {
  bool isomorphic = false;
  /// Which test decided: "equal", "degree", "signature", "discriminant", "root", "no-root".
  std::string reason;
  /// When isomorphic via a root: a root of Q written as a polynomial in a root of P.
  std::optional<QPoly> root_of_q;
};

/// Decides whether ℚ[x]/(P) ≅ ℚ[x]/(Q): invariants first, then an exact
/// check of a root of one polynomial found in the other field by lattice reduction.
SameFieldResult same_field_detail(const IntPoly& P, const IntPoly& Q);
bool same_field(const IntPoly& P, const IntPoly& Q);

struct SymmetryResult {
  bool holds = false;
  SymmetryKind kind = SymmetryKind::RHalfL;
  /// For R = L/2: +1 if b² = a, −1 if b² = −a.
  int sign = 0;
  NFElement a, c, Rp;
  std::string detail;
};

/// Exact form of the parameter symmetries: a = c and b = 1 (L = D, R = 0), or
/// b² = ±a (R = L/2). The box picks the branches of a = √L′ and c = √D′.
SymmetryResult verify_symmetries_exact(const ExactGroup& g, const BoxRegion& box, SymmetryKind kind);

}  // namespace exreg
