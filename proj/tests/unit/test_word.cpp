#include "common.hpp"
#include "exreg/word.hpp"

#include "doctest.h"

#include <random>

using namespace exreg;

TEST_CASE("parse and render basic words") {
  Word w = parse_word("f^2w^-1fw", "fw");
  CHECK(render_word(w, "fw") == "f^2w^-1fw");
  CHECK(w.length() == 5);
  CHECK(w.exponent_sums(2) == std::vector<long>{3, 0});
  CHECK(parse_word("ff^-1", "fw").empty());
  CHECK(render_word(parse_word("", "fw"), "fw") == "1");
}

TEST_CASE("malformed words are rejected") {
  CHECK_THROWS_AS(parse_word("fx", "fw"), WordParseError);
  CHECK_THROWS_AS(parse_word("f^", "fw"), WordParseError);
  CHECK_THROWS_AS(parse_word("^2", "fw"), WordParseError);
}

TEST_CASE("every catalog word round-trips through render") {
  const auto& cat = test::catalog();
  int checked = 0;
  auto round_trip = [&](const std::string& text, const std::string& gens) {
    Word w = parse_word(text, gens);
    CHECK(parse_word(render_word(w, gens), gens) == w);
    ++checked;
  };
  for (const auto& r : cat.regions) {
    round_trip(r.r1_text, kRegionGenerators);
    round_trip(r.r2_text, kRegionGenerators);
    if (r.census) {
      for (const auto& t : r.census->relator_texts) round_trip(t, r.census->generators);
    }
  }
  for (const auto* p : {&cat.cover->pi1_m, &cat.cover->pi1_n, &cat.cover->g}) {
    for (const auto& t : p->relator_texts) round_trip(t, p->generators);
  }
  CHECK(checked > 20);
}

TEST_CASE("inverse, power and cyclic reduction") {
  Word w = parse_word("fw^2f^-1", "fw");
  CHECK(concat(w, invert_word(w)).empty());
  CHECK(render_word(power(parse_word("fw", "fw"), 3), "fw") == "fwfwfw");
  CHECK(render_word(cyclic_reduce(w), "fw") == "w^2");
  Word images[2] = {parse_word("w", "fw"), parse_word("f", "fw")};
  CHECK(render_word(substitute(w, images), "fw") == "wf^2w^-1");
  auto [a, b] = split_at(parse_word("f^3w", "fw"), 2);
  CHECK(render_word(a, "fw") == "f^2");
  CHECK(render_word(b, "fw") == "fw");
}

TEST_CASE("property: w * w^-1 reduces to empty for random words") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> gen(0, 2), exp(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Letter> runs;
    for (int i = 0; i < 12; ++i) {
      int e = exp(rng);
      if (e) runs.push_back({gen(rng), e});
    }
    Word w = Word::reduce(runs);
    CHECK(concat(w, invert_word(w)).empty());
    CHECK(invert_word(invert_word(w)) == w);
    CHECK(parse_word(render_word(w, "abc"), "abc") == w);
  }
}
