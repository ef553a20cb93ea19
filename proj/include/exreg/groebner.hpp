#pragma once

#include "exreg/catalog.hpp"
#include "exreg/exactfield.hpp"
#include "exreg/mpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exreg {

/// Ring used for the symbolic entries: z > r > q > p.
constexpr const char* kTraceVars = "zrqp";

/// Entries of eval(u) − σ·eval(v⁻¹) for each relator split as r = u·v with
/// |u| = ⌈|r|/2⌉, computed over ℚ[p,q,r,z] modulo z² − qz + 1, followed by
/// z² − qz + 1 itself. With split = false the entries of r − σI are used.
std::vector<MPoly> symbolic_relator_entries(const RegionRecord& region, int sigma1, int sigma2, bool split = true);

/// Entries of eval(w) − σI for one word (no splitting).
std::vector<MPoly> symbolic_word_entries(const Word& w, int sigma);

enum class MonomialOrder { Lex, GrevLex };

struct GroebnerBudget {
  double seconds = 60;
  long max_pairs = 2'000'000;
  /// Ceiling on resident-memory growth during one run; 0 disables the check.
  long max_memory_mib = 2048;
};

struct GroebnerStats {
  long pairs_processed = 0;
  long pairs_skipped = 0;
  long zero_reductions = 0;
  long max_basis_size = 0;
  double seconds = 0;
};

struct GroebnerResult {
  /// Variable precedence, e.g. "zrqp".
  std::string order;
  MonomialOrder kind = MonomialOrder::Lex;
  /// "buchberger-lex", "buchberger-grevlex" or "buchberger-grevlex+fglm".
  std::string method;
  /// Dimension of ℚ[vars]/I when known (FGLM).
  long quotient_dimension = -1;
  std::vector<std::string> notes;
  /// Reduced monic basis sorted by decreasing leading monomial when complete;
  /// otherwise the intermediate basis at the time the budget ran out.
  std::vector<MPoly> basis;
  bool complete = false;
  GroebnerStats stats;
};

/// Buchberger's algorithm with variables ranked as in `order` (normal pair
/// selection, Gebauer–Möller criteria, fraction-free reduction over ℤ).
/// Generators may be over any ordering of the same variables.
GroebnerResult buchberger(const std::vector<MPoly>& generators, const std::string& order,
                          const GroebnerBudget& budget = {}, MonomialOrder kind = MonomialOrder::Lex);

/// Converts a complete basis of a zero-dimensional ideal to the lex basis for
/// `lex_order` by linear algebra on the quotient (FGLM). Throws
/// std::runtime_error if the ideal is not zero-dimensional or the quotient is too large.
GroebnerResult fglm(const GroebnerResult& src, const std::string& lex_order, std::size_t max_dimension = 4000);

/// Lex basis via a grevlex run and FGLM, falling back to direct lex when the
/// ideal is positive-dimensional.
GroebnerResult lex_groebner(const std::vector<MPoly>& generators, const std::string& order,
                            const GroebnerBudget& budget = {});

Monomial leading_monomial(const MPoly& f, MonomialOrder kind);

/// Independent check that every S-polynomial of `basis` reduces to zero.
bool s_polynomials_reduce_to_zero(const std::vector<MPoly>& basis, MonomialOrder kind = MonomialOrder::Lex);

/// The smallest element of a basis (last in decreasing order).
const MPoly& last_element(const std::vector<MPoly>& basis);

struct FactorCheck {
  bool divides = false;
  MPoly product;
  std::optional<MPoly> quotient;
};

/// Whether the product of the claimed factors divides gb_last exactly.
FactorCheck check_paper_factor(const MPoly& gb_last, const std::vector<MPoly>& claimed);

/// Splits g into a polynomial in the variable `var` alone times a part with
/// no such factor (the content with respect to the remaining variables).
std::pair<MPoly, MPoly> content_split(const MPoly& g, int var);

struct BoxCount {
  long count = 0;
  long roots = 0;
  long branch_candidates = 0;
  /// Positive-dimensional part of the last element excluded separately (if any).
  std::optional<MPoly> excluded_factor;
  std::vector<std::string> notes;
};

/// Solves the triangular lex system numerically (working precision `digits`),
/// maps each solution through every branch of the inverse trace formulas and
/// counts distinct (L′, D′, R′) inside the box.
BoxCount count_box_solutions(const RegionRecord& region, const std::vector<MPoly>& gb, int digits = 60);

struct MvtCertificate {
  double value = 0;          // |f(p₀, q₀, r₀)|
  double gradient_bound = 0; // sup of the gradient norm over the ball
  double radius = 0;
  double ratio = 0;          // value / radius
  double image_radius = 0;   // max distance of box-corner trace images from the midpoint traces
  bool covers_box = false;
  bool passes = false;
  std::array<APComplex, 3> midpoint_traces;
};

/// Mean-value exclusion of zeros of a factor in (p, q, r) on the ball of the
/// given radius about the midpoint traces of the box.
MvtCertificate mvt_exclusion(const MPoly& factor, const RegionRecord& region, const std::string& radius, int digits = 40);

/// Traces (p, q, r) of build_fw at the box midpoint.
std::array<APComplex, 3> midpoint_traces(const BoxRegion& box, int digits);

/// Printed factors for one order parsed over that order's variables.
std::vector<MPoly> printed_factors(const RegionRecord& region, const std::string& order);

/// Exact value of a polynomial in (z, r, q, p) at the group's point.
NFElement eval_at_group(const MPoly& f, const ExactGroup& g);

}  // namespace exreg
