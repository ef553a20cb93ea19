#pragma once

#include "exreg/apcomplex.hpp"
#include "exreg/poly.hpp"
#include "exreg/word.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace exreg {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact value of a decimal literal such as "-1.17968" or "2.5e-3".
mpq_class parse_decimal_exact(const std::string& text);

struct ComplexDecimal {
  std::string re, im;
  APComplex value(int digits) const { return APComplex::from_decimal(re, im, digits); }
};

struct DecimalRange {
  std::string lo, hi;
  mpq_class lo_q, hi_q;
};

enum class Param { L = 0, D = 1, R = 2 };

/// Box in (L′, D′, R′): for each parameter a rectangle in the complex plane.
struct BoxRegion {
  std::string name;
  /// Order: L′ re, L′ im, D′ re, D′ im, R′ re, R′ im.
  std::array<DecimalRange, 6> ranges;
  /// True when the rectangle is reconstructed rather than printed.
  bool reconstructed = false;

  const DecimalRange& re(Param p) const { return ranges[2 * static_cast<size_t>(p)]; }
  const DecimalRange& im(Param p) const { return ranges[2 * static_cast<size_t>(p) + 1]; }
  APComplex midpoint(Param p, int digits) const;
  /// Largest half-width over the six ranges.
  mpq_class half_width() const;
  bool contains(Param p, const APComplex& v) const;
  /// Same rectangles scaled by `factor` about their midpoints.
  BoxRegion enlarged(const mpq_class& factor) const;
};

/// Group data used by the exact pipeline: z and the traces as polynomials in z.
struct GroupData {
  IntPoly z_minpoly;
  ComplexDecimal z_approx;
  QPoly tr1, tr2, tr3;
};

struct CensusRecord {
  std::string manifold;
  std::vector<long> h1;
  std::string volume, l_min;
  std::string generators;  // one character per generator, e.g. "ab"
  std::vector<std::string> relator_texts;
  std::vector<Word> relators;
  /// Images of census generators as words in f, w (the "inverse" direction).
  std::optional<std::vector<Word>> iso_images;
  /// Images of f, w as words in census generators (the "isomorphism" direction).
  std::optional<std::vector<Word>> inverse_images;
  /// Printed versions kept when the working map differs from the table.
  std::optional<std::vector<Word>> printed_iso_images;
  std::optional<std::vector<Word>> printed_inverse_images;
};

enum class SymmetryKind { LEqualsDROne, RHalfL };

/// A factor list as printed for one variable order, e.g. order "zrqp".
struct PrintedFactorization {
  std::string order;
  std::vector<std::string> factors;
};

struct MvtData {
  std::string radius;
  ComplexDecimal p0, q0, r0;
  std::string printed_ratio;  // value/radius as printed (approximate)
  std::string printed_bound;  // gradient bound as printed
  std::string factor;
};

struct RegionRecord {
  std::string name;
  BoxRegion box;
  std::string r1_text, r2_text;
  Word r1, r2;
  GroupData group;
  /// Verbatim table rows when the working group data had to be corrected.
  std::optional<GroupData> printed;
  IntPoly itf_minpoly;
  ComplexDecimal itf_approx;
  SymmetryKind symmetry = SymmetryKind::RHalfL;
  std::optional<CensusRecord> census;
  std::vector<PrintedFactorization> printed_factors;
  std::optional<MvtData> mvt;
  /// Midpoint as originally printed (only X₃).
  std::optional<std::array<ComplexDecimal, 3>> printed_midpoint;
};

struct GroupPresentationText {
  std::string generators;
  std::vector<std::string> relator_texts;
  std::vector<Word> relators;
};

/// Data for the X₄ double-cover chain.
struct CoverChain {
  std::string region;  // "X4"
  std::string manifold;
  GroupPresentationText pi1_m;
  std::map<char, int> phi;  // parity of each π₁(M) generator
  GroupPresentationText pi1_n;
  std::map<char, std::string> psi;  // images in π₁(N) generators
  std::vector<std::string> h_extra_relators;  // with t appended as a generator
  std::map<char, int> mu;
  GroupPresentationText g;
  std::map<char, std::string> nu;          // x, y ↦ words in f, w
  std::map<char, std::string> nu_inverse;  // f, w ↦ words in x, y (as printed)
  /// Inverse actually satisfying ν∘ν⁻¹ = id on f, w.
  std::map<char, std::string> nu_inverse_working;
  std::vector<long> h1_g;                  // recorded H₁ for X₄
};

struct Catalog {
  std::string source;
  std::vector<RegionRecord> regions;
  std::optional<CoverChain> cover;

  const RegionRecord& region(const std::string& name) const;
  bool has_region(const std::string& name) const;
};

/// Loads and validates a catalog file. Throws CatalogError naming the record
/// and field (or line, for JSON syntax errors).
Catalog load_catalog(const std::string& path);
Catalog parse_catalog(const std::string& text, const std::string& source = "<memory>");

/// EXREG_CATALOG, else the bundled default path.
std::string default_catalog_path();

constexpr const char* kRegionGenerators = "fw";

}  // namespace exreg
