#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exreg {

/// One run g^e of a word: generator index and nonzero exponent.
struct Letter {
  int gen = 0;
  long exp = 0;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced word in abstract generators, stored run-length encoded.
/// Adjacent runs always have distinct generators and exponents are nonzero.
class Word {
 public:
  Word() = default;
  /// Builds the free reduction of an arbitrary run sequence.
  static Word reduce(std::span<const Letter> runs);

  const std::vector<Letter>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }
  /// Number of runs.
  size_t size() const { return runs_.size(); }
  /// Total number of letters (sum of |exponent|).
  long length() const;

  /// Per-generator exponent sums over `num_generators` generators.
  std::vector<long> exponent_sums(int num_generators) const;
  /// Largest generator index used, or -1 for the empty word.
  int max_generator() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> runs_;
};

class WordParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `word := term+ ; term := (gen | '(' word ')') ('^' int)?` where each
/// generator name is a single character from `generators`. Whitespace is ignored.
Word parse_word(std::string_view text, std::string_view generators);

/// Renders in the same grammar; parse_word(render_word(w, g), g) == w.
std::string render_word(const Word& w, std::string_view generators);
/// Renders with arbitrary generator names (may not be parseable back).
std::string render_word(const Word& w, std::span<const std::string> names);

Word invert_word(const Word& w);
Word concat(const Word& a, const Word& b);
/// w^k for any integer k (k < 0 uses the inverse).
Word power(const Word& w, long k);
/// Cyclic reduction: strips matching head/tail runs.
Word cyclic_reduce(const Word& w);
/// Substitutes image words for generators (homomorphism of free groups).
Word substitute(const Word& w, std::span<const Word> images);

/// Letter-by-letter expansion: each entry is a run with exponent +1 or -1.
std::vector<Letter> expand_letters(const Word& w);
/// Splits after the first `prefix_letters` letters (w == concat(first, second)).
std::pair<Word, Word> split_at(const Word& w, long prefix_letters);

}  // namespace exreg
