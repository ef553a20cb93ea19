#include "exreg/word.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace exreg {

Word Word::reduce(std::span<const Letter> runs) {
  Word w;
  auto& out = w.runs_;
  for (const Letter& l : runs) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return w;
}

long Word::length() const {
  long n = 0;
  for (const auto& l : runs_) n += std::labs(l.exp);
  return n;
}

std::vector<long> Word::exponent_sums(int num_generators) const {
  std::vector<long> sums(static_cast<size_t>(num_generators), 0);
  for (const auto& l : runs_) sums.at(static_cast<size_t>(l.gen)) += l.exp;
  return sums;
}

int Word::max_generator() const {
  int m = -1;
  for (const auto& l : runs_) m = std::max(m, l.gen);
  return m;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::string_view gens) : text_(text), gens_(gens) {}

  Word parse() {
    std::vector<Letter> runs = word();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected ')'");
    return Word::reduce(runs);
  }

 private:
  std::vector<Letter> word() {
    std::vector<Letter> out;
    bool any = false;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] == ')') break;
      std::vector<Letter> term;
      if (text_[pos_] == '(') {
        ++pos_;
        term = word();
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
        ++pos_;
      } else {
        auto idx = gens_.find(text_[pos_]);
        if (idx == std::string_view::npos) {
          fail(std::string("unknown generator '") + text_[pos_] + "'");
        }
        term.push_back({static_cast<int>(idx), 1});
        ++pos_;
      }
      long e = exponent();
      append_power(out, term, e);
      any = true;
    }
    if (!any) fail("empty word or group");
    return out;
  }

  long exponent() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '^') return 1;
    ++pos_;
    skip_ws();
    size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("malformed exponent");
    return std::strtol(std::string(text_.substr(start, pos_ - start)).c_str(), nullptr, 10);
  }

  static void append_power(std::vector<Letter>& out, const std::vector<Letter>& term, long e) {
    if (e == 0) return;
    if (e > 0) {
      for (long k = 0; k < e; ++k) out.insert(out.end(), term.begin(), term.end());
    } else {
      for (long k = 0; k < -e; ++k) {
        for (auto it = term.rbegin(); it != term.rend(); ++it) out.push_back({it->gen, -it->exp});
      }
    }
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw WordParseError(what + " at position " + std::to_string(pos_) + " in '" +
                         std::string(text_) + "'");
  }

  std::string_view text_;
  std::string_view gens_;
  size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, std::string_view generators) {
  bool blank = std::all_of(text.begin(), text.end(),
                           [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (blank || text == "1") return Word{};
  return Parser(text, generators).parse();
}

std::string render_word(const Word& w, std::string_view generators) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& l : w.runs()) {
    s += generators.at(static_cast<size_t>(l.gen));
    if (l.exp != 1) s += "^" + std::to_string(l.exp);
  }
  return s;
}

std::string render_word(const Word& w, std::span<const std::string> names) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& l : w.runs()) {
    if (!s.empty()) s += ' ';
    s += names[static_cast<size_t>(l.gen)];
    if (l.exp != 1) s += "^" + std::to_string(l.exp);
  }
  return s;
}

Word invert_word(const Word& w) {
  std::vector<Letter> runs;
  runs.reserve(w.size());
  for (auto it = w.runs().rbegin(); it != w.runs().rend(); ++it) runs.push_back({it->gen, -it->exp});
  return Word::reduce(runs);
}

Word concat(const Word& a, const Word& b) {
  std::vector<Letter> runs = a.runs();
  runs.insert(runs.end(), b.runs().begin(), b.runs().end());
  return Word::reduce(runs);
}

Word power(const Word& w, long k) {
  const Word base = k < 0 ? invert_word(w) : w;
  std::vector<Letter> runs;
  for (long i = 0; i < std::labs(k); ++i) runs.insert(runs.end(), base.runs().begin(), base.runs().end());
  return Word::reduce(runs);
}

Word cyclic_reduce(const Word& w) {
  std::vector<Letter> runs = w.runs();
  while (runs.size() >= 2 && runs.front().gen == runs.back().gen) {
    long e = runs.front().exp + runs.back().exp;
    runs.pop_back();
    if (e == 0) {
      runs.erase(runs.begin());
    } else {
      runs.front().exp = e;
      break;
    }
  }
  return Word::reduce(runs);
}

Word substitute(const Word& w, std::span<const Word> images) {
  std::vector<Letter> runs;
  for (const auto& l : w.runs()) {
    if (l.gen < 0 || static_cast<size_t>(l.gen) >= images.size()) {
      throw std::out_of_range("substitute: no image for generator " + std::to_string(l.gen));
    }
    const Word piece = power(images[static_cast<size_t>(l.gen)], l.exp);
    runs.insert(runs.end(), piece.runs().begin(), piece.runs().end());
  }
  return Word::reduce(runs);
}

std::vector<Letter> expand_letters(const Word& w) {
  std::vector<Letter> out;
  out.reserve(static_cast<size_t>(w.length()));
  for (const auto& l : w.runs()) {
    const long s = l.exp > 0 ? 1 : -1;
    for (long k = 0; k < std::labs(l.exp); ++k) out.push_back({l.gen, s});
  }
  return out;
}

std::pair<Word, Word> split_at(const Word& w, long prefix_letters) {
  std::vector<Letter> head, tail;
  long remaining = prefix_letters;
  for (const auto& l : w.runs()) {
    const long n = std::labs(l.exp);
    const long s = l.exp > 0 ? 1 : -1;
    if (remaining >= n) {
      head.push_back(l);
      remaining -= n;
    } else if (remaining > 0) {
      head.push_back({l.gen, s * remaining});
      tail.push_back({l.gen, s * (n - remaining)});
      remaining = 0;
    } else {
      tail.push_back(l);
    }
  }
  return {Word::reduce(head), Word::reduce(tail)};
}

}  // namespace exreg
