#include "common.hpp"
#include "exreg/grouptheory.hpp"

#include "doctest.h"

#include <random>

using namespace exreg;

namespace {

bool is_diagonal_divisibility(const SmithForm& s) {
  for (size_t i = 0; i < s.D.size(); ++i)
    for (size_t j = 0; j < s.D[i].size(); ++j)
      if (i != j && s.D[i][j] != 0) return false;
  for (size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
    if (s.diagonal[i] < 0) return false;
    if (s.diagonal[i] == 0 && s.diagonal[i + 1] != 0) return false;
    if (s.diagonal[i] != 0 && s.diagonal[i + 1] % s.diagonal[i] != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("property: Smith form U·A·V = D with unimodular U, V on 100 random matrices") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> d(-9, 9), dim(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    size_t rows = dim(rng), cols = dim(rng);
    IntMatrix a(rows, std::vector<mpz_class>(cols));
    for (auto& row : a)
      for (auto& x : row) x = d(rng);
    SmithForm s = smith_normal_form(a, cols);
    CHECK(multiply(multiply(s.U, a), s.V) == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    CHECK(is_diagonal_divisibility(s));
  }
}

TEST_CASE("abelianizations of small groups") {
  CHECK(abelianization(Presentation::parse("ab", {"a^2", "b^6"})) == std::vector<long>{2, 6});
  CHECK(abelianization(Presentation::parse("ab", {"a^4b^6"})) == std::vector<long>{2, 0});
  CHECK(abelianization(Presentation::parse("a", {})) == std::vector<long>{0});
  CHECK(abelianization(Presentation::parse("ab", {"ab^-1", "a^3"})) == std::vector<long>{3});
  CHECK(abelianization(Presentation::parse("ab", {"ab", "a^-1b^-1"})) == std::vector<long>{0});
}

TEST_CASE("lattice membership") {
  SmithForm s = smith_normal_form({{2, 0}, {0, 6}});
  CHECK(lattice_contains(s, {4, 12}));
  CHECK_FALSE(lattice_contains(s, {1, 0}));
}

TEST_CASE("marked groups have the expected first homology") {
  const std::map<std::string, std::vector<long>> expected = {
      {"X0", {3, 6}}, {"X1", {7, 7}}, {"X2", {4, 12}}, {"X3", {7, 7}},
      {"X4", {4, 12}}, {"X5", {4, 4}}, {"X6", {4, 4}}};
  for (const auto& [name, h1] : expected) {
    INFO(name);
    CHECK(abelianization(marked_group(test::region(name))) == h1);
  }
}

TEST_CASE("census presentations agree with the recorded homology") {
  for (const auto& r : test::catalog().regions) {
    auto p = census_presentation(r);
    if (!p) continue;
    INFO(r.name);
    CHECK(abelianization(*p) == r.census->h1);
    CHECK(abelianization(*p) == abelianization(marked_group(r)));
  }
}

TEST_CASE("Tietze moves preserve the abelianization") {
  auto p = Presentation::parse("abc", {"c^-1ab", "a^3b^-2", "abab^-1"});
  auto t = tietze_simplify(p, {true, {}, 20000});
  CHECK(t.presentation.generators.size() < 3);
  CHECK(abelianization(t.presentation) == abelianization(p));
  auto kept = tietze_simplify(p, {true, {"c"}, 20000});
  CHECK(kept.presentation.index_of("c") >= 0);
}

TEST_CASE("Reidemeister–Schreier on small examples") {
  // Trefoil ⟨a, b | a²b⁻³⟩ mapped onto ℤ/2 by a.
  auto trefoil = Presentation::parse("ab", {"a^2b^-3"});
  auto k = rs_index2_kernel(trefoil, std::vector<int>{1, 0});
  CHECK(abelianization(k.presentation) == std::vector<long>{3, 0});
  CHECK(abelianization(k.unsimplified) == std::vector<long>{3, 0});
  auto z2 = rs_index2_kernel(Presentation::parse("a", {"a^2"}), std::vector<int>{1});
  CHECK(abelianization(z2.presentation).empty());
}

TEST_CASE("cover chain groups") {
  const auto& cv = *test::catalog().cover;
  auto m = Presentation::from(cv.pi1_m);
  CHECK(abelianization(m) == std::vector<long>{2, 12});
  CHECK(abelianization(Presentation::from(cv.pi1_n)) == std::vector<long>{104});
  auto ker = rs_index2_kernel(m, cv.phi, {true, {"b0", "c0"}, 20000});
  CHECK(abelianization(ker.presentation) == std::vector<long>{2, 48});
  CHECK(abelianization(ker.unsimplified) == std::vector<long>{2, 48});
  CHECK(abelianization(Presentation::from(cv.g)) == std::vector<long>{4, 12});
}

TEST_CASE("homomorphism certificates for census maps") {
  for (const char* name : {"X1", "X2", "X5"}) {
    const auto& r = test::region(name);
    INFO(name);
    REQUIRE(r.census);
    auto src = *census_presentation(r);
    REQUIRE(r.census->iso_images);
    auto cert = verify_hom_kills_relators(src, *r.census->iso_images, make_exact_group(r.group),
                                          r.census->inverse_images);
    CHECK(cert.ok);
    CHECK(cert.round_trip_ok);
  }
}

TEST_CASE("a wrong image is caught") {
  const auto& r = test::region("X1");
  auto src = *census_presentation(r);
  auto images = *r.census->iso_images;
  images[0] = concat(images[0], parse_word("f", kRegionGenerators));
  auto cert = verify_hom_kills_relators(src, images, make_exact_group(r.group));
  CHECK_FALSE(cert.ok);
}

TEST_CASE("automorphism checks") {
  auto p = Presentation::parse("ab", {"a^2", "b^2"});
  std::vector<Word> swap = {parse_word("b", "ab"), parse_word("a", "ab")};
  CHECK(check_automorphism_order2(p, swap));
  std::vector<Word> square = {parse_word("a^2", "ab"), parse_word("b", "ab")};
  CHECK_FALSE(check_automorphism_order2(Presentation::parse("ab", {}), square));
}
