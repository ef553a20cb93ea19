#include "common.hpp"
#include "exreg/groebner.hpp"

#include "doctest.h"

#include <algorithm>
#include <random>

using namespace exreg;

namespace {

MPoly P(const std::string& text, const std::string& vars = kTraceVars) { return parse_mpoly(text, vars); }

GroebnerResult region_basis(const std::string& name, const std::string& order) {
  const auto& r = test::region(name);
  auto c = verify_relators_exact(make_exact_group(r.group), r.r1, r.r2);
  return lex_groebner(symbolic_relator_entries(r, c.sign1, c.sign2), order, {120, 2'000'000});
}

}  // namespace

TEST_CASE("toy ideal has reduced basis {x - y, y^2 - 1}") {
  auto res = buchberger({P("x^2 - 1", "xy"), P("x*y - 1", "xy")}, "xy");
  REQUIRE(res.complete);
  std::vector<std::string> got;
  for (const auto& g : res.basis) got.push_back(g.monic().to_string());
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::string>{"x - y", "y^2 - 1"});
  CHECK(s_polynomials_reduce_to_zero(res.basis));
}

TEST_CASE("multivariate reduction") {
  MPoly f = P("x^2*y + x*y^2 + y^2", "xy");
  MPoly rem = reduce(f, {P("x*y - 1", "xy"), P("y^2 - 1", "xy")});
  CHECK(rem == P("x + y + 1", "xy"));
}

TEST_CASE("property: random small systems give bases whose S-polynomials reduce to zero") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 2);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<MPoly> gens;
    for (int k = 0; k < 3; ++k) {
      MPoly f("xyz");
      for (int t = 0; t < 3; ++t) {
        MPoly m = MPoly::constant("xyz", c(rng));
        m = m * MPoly::variable("xyz", 'x', e(rng)) * MPoly::variable("xyz", 'y', e(rng)) *
            MPoly::variable("xyz", 'z', e(rng));
        f = f + m;
      }
      if (!f.is_zero()) gens.push_back(f);
    }
    if (gens.empty()) continue;
    auto res = buchberger(gens, "xyz", {20, 200000});
    if (!res.complete) continue;
    CHECK(s_polynomials_reduce_to_zero(res.basis));
    for (const auto& g : gens) CHECK(reduce(g, res.basis).is_zero());
  }
}

TEST_CASE("X0 bases match independent computations") {
  auto zrqp = region_basis("X0", "zrqp");
  REQUIRE(zrqp.complete);
  CHECK(s_polynomials_reduce_to_zero(zrqp.basis));
  CHECK(last_element(zrqp.basis).monic() == P("p^6 - 3*p^4 + 6*p^2 - 4"));

  auto zpqr = region_basis("X0", "zpqr");
  REQUIRE(zpqr.complete);
  CHECK(last_element(zpqr.basis).monic() == P("r^3 + 1", "zpqr"));
}

TEST_CASE("X2 last element in zrqp") {
  auto res = region_basis("X2", "zrqp");
  REQUIRE(res.complete);
  CHECK(last_element(res.basis).monic() == P("p^9 - 3*p^7 + 5*p^5 - 12*p^3 + 4*p"));
}

TEST_CASE("printed factors divide the last element, a wrong factor does not") {
  const auto& r = test::region("X0");
  auto res = region_basis("X0", "zrqp");
  REQUIRE(res.complete);
  const MPoly& last = last_element(res.basis);
  auto printed = printed_factors(r, "zrqp");
  REQUIRE_FALSE(printed.empty());
  CHECK(check_paper_factor(last, printed).divides);
  CHECK_FALSE(check_paper_factor(last, {P("p - 3")}).divides);
}

TEST_CASE("X0 has exactly one solution in its box") {
  const auto& r = test::region("X0");
  auto res = region_basis("X0", "zrqp");
  REQUIRE(res.complete);
  auto bc = count_box_solutions(r, res.basis);
  CHECK(bc.count == 1);
}

TEST_CASE("MVT exclusion") {
  const auto& x3 = test::region("X3");
  REQUIRE(x3.mvt);
  auto good = mvt_exclusion(parse_mpoly(x3.mvt->factor, kTraceVars), x3, x3.mvt->radius);
  CHECK(good.passes);
  CHECK(good.covers_box);
  CHECK(good.ratio > 100 * good.gradient_bound);

  // Negative control: a factor vanishing at the box's own solution cannot be excluded.
  const auto& x0 = test::region("X0");
  auto res = region_basis("X0", "zrqp");
  REQUIRE(res.complete);
  auto bad = mvt_exclusion(last_element(res.basis), x0, "0.002");
  CHECK_FALSE(bad.passes);
}
