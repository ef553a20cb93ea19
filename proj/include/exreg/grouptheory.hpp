#pragma once

#include "exreg/catalog.hpp"
#include "exreg/exactfield.hpp"
#include "exreg/lll.hpp"
#include "exreg/word.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace exreg {

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite presentation. Relators are freely reduced words over `generators`.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  /// Single-character generators, e.g. parse("abc", {"ab^-1a^-1c^2bc", ...}).
  static Presentation parse(const std::string& generators, const std::vector<std::string>& relator_texts);
  static Presentation from(const GroupPresentationText& text);

  int index_of(const std::string& name) const;
  /// Throws GroupError if a relator uses an out-of-range generator.
  void validate() const;
  /// Generator names joined when all are single characters (for parse_word).
  std::string letters() const;
  std::string render() const;
};

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// U·A·V = D with U, V unimodular and D diagonal with d₁ | d₂ | … (dᵢ ≥ 0).
struct SmithForm {
  IntMatrix U, D, V;
  std::vector<mpz_class> diagonal;  // min(rows, cols) entries
};

/// Pivots on the entry of smallest nonzero absolute value.
SmithForm smith_normal_form(const IntMatrix& a, std::size_t cols);
inline SmithForm smith_normal_form(const IntMatrix& a) { return smith_normal_form(a, a.empty() ? 0 : a[0].size()); }

/// Rows are the exponent sums of the relators.
IntMatrix relation_matrix(const Presentation& p);

/// Invariant factors > 1 in divisibility order followed by a 0 for each free
/// rank, e.g. ℤ₂ ⊕ ℤ₁₂ → [2, 12] and ℤ → [0].
std::vector<long> abelianization(const Presentation& p);

/// Whether the row vector lies in the row lattice of the matrix whose Smith
/// form is `s`.
bool lattice_contains(const SmithForm& s, const std::vector<mpz_class>& v);

struct TietzeOptions {
  /// Also eliminate a generator occurring exactly once in some relator
  /// (not only via relators of length 1 or 2).
  bool single_occurrence = false;
  /// Generators that must survive.
  std::vector<std::string> keep;
  /// Substitutions producing longer relators than this are skipped.
  long max_relator_length = 20000;
};

struct TietzeResult {
  Presentation presentation;
  /// "g = word" for each eliminated generator, in elimination order.
  std::vector<std::string> log;
};

TietzeResult tietze_simplify(const Presentation& p, const TietzeOptions& options = {});

struct KernelResult {
  /// Presentation after simplification.
  Presentation presentation;
  /// Before simplification: generators g0, g1 (g ranging over the original
  /// generators) for the Schreier generators rep(c)·g·rep(c·g)⁻¹, minus the
  /// trivial t0.
  Presentation unsimplified;
  std::string transversal;  // the odd generator t
  std::vector<std::string> tietze_log;
};

/// Reidemeister–Schreier for the kernel of a map to ℤ/2 given by generator
/// parities, with transversal {1, t} for the first odd generator t. Each
/// relator is rewritten from both cosets.
KernelResult rs_index2_kernel(const Presentation& p, const std::vector<int>& parity,
                              const TietzeOptions& simplify = {});
KernelResult rs_index2_kernel(const Presentation& p, const std::map<char, int>& parity,
                              const TietzeOptions& simplify = {});

/// Renames generators (old → new); unknown names stay.
Presentation rename_generators(const Presentation& p, const std::map<std::string, std::string>& names);

/// Images of single-character generators parsed over `target_letters`.
std::vector<Word> parse_images(const std::map<char, std::string>& images, const std::string& source_letters,
                               const std::string& target_letters);

struct HomCertificate {
  bool ok = false;
  /// ±1 per source relator, 0 where the image is not ±I.
  std::vector<int> relator_signs;
  bool round_trip_checked = false;
  bool round_trip_ok = false;
  /// ±1 per target generator (f, w) for the composite, 0 on mismatch.
  std::vector<int> round_trip_signs;
  std::string error;
};

/// Checks that generator images (words in f, w) kill every relator of
/// `source` exactly in the group, and, given words for f and w in the source
/// generators, that substituting the images gives back ±f and ±w.
HomCertificate verify_hom_kills_relators(const Presentation& source, const std::vector<Word>& images,
                                         const ExactGroup& group,
                                         const std::optional<std::vector<Word>>& inverse_images = std::nullopt);

struct AutomorphismCheck {
  bool ok = false;
  /// Column j holds the exponent sums of the image of generator j.
  IntMatrix induced;
  mpz_class det;
  bool unimodular = false;
  bool preserves_relations = false;
  bool square_is_identity = false;
};

/// Abelianization-level necessary conditions for an automorphism of order 2.
AutomorphismCheck check_automorphism_order2_detail(const Presentation& p, const std::vector<Word>& images);
inline bool check_automorphism_order2(const Presentation& p, const std::vector<Word>& images) {
  return check_automorphism_order2_detail(p, images).ok;
}

/// ⟨f, w | r₁, r₂⟩ for a region.
Presentation marked_group(const RegionRecord& region);
/// Census presentation of a region, if any.
std::optional<Presentation> census_presentation(const RegionRecord& region);

}  // namespace exreg
