#include "common.hpp"
#include "exreg/exactfield.hpp"
#include "exreg/lll.hpp"
#include "exreg/recognize.hpp"
#include "exreg/solver.hpp"

#include "doctest.h"

#include <random>

using namespace exreg;

namespace {

QPoly qpoly(std::vector<mpq_class> c) { return QPoly(std::move(c)); }

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("LLL on small lattices") {
  IntMatrix id = {{1, 0}, {0, 1}};
  CHECK(is_lll_reduced(lll_reduce(id)));
  auto r = lll_reduce({{1, 0}, {10, 1}});
  CHECK(is_lll_reduced(r));
  CHECK(abs(determinant(r)) == 1);
  for (const auto& row : r) CHECK(dot(row, row) == 1);
  CHECK_THROWS_AS(lll_reduce({{1, 2}, {2, 4}}), LatticeError);
}

TEST_CASE("knapsack lattice finds the relation among 1, sqrt 2, 2") {
  // Rows: identity plus 10^30 times the value.
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 30);
  Real s2 = sqrt(Real(2L, digits_to_bits(60)));
  mpz_class v = (s2 * Real(scale, digits_to_bits(60))).round_to_integer();
  IntMatrix b = {{1, 0, 0, scale}, {0, 1, 0, v}, {0, 0, 1, 2 * scale}};
  auto r = lll_reduce(b);
  std::vector<mpz_class> first = r[0];
  if (first[2] < 0)
    for (auto& x : first) x = -x;
  CHECK(first == std::vector<mpz_class>{-2, 0, 1, 0});
}

TEST_CASE("property: LLL output satisfies the Lovász conditions on 100 random lattices") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> d(-50, 50);
  int tested = 0;
  while (tested < 100) {
    size_t n = 2 + tested % 4;
    IntMatrix b(n, std::vector<mpz_class>(n));
    for (auto& row : b)
      for (auto& x : row) x = d(rng);
    mpz_class det = determinant(b);
    if (det == 0) continue;
    auto r = lll_reduce(b);
    CHECK(is_lll_reduced(r));
    CHECK(abs(determinant(r)) == abs(det));
    ++tested;
  }
}

TEST_CASE("algdep recovers sqrt 2 and rejects too little precision") {
  APComplex x = sqrt(APComplex(2L, digits_to_bits(60)));
  CHECK(algdep(x, 4, 8) == IntPoly::from_longs({-2, 0, 1}));
  CHECK_THROWS_AS(algdep(APComplex(2L, digits_to_bits(30)), 24, 8), RecognitionError);
}

TEST_CASE("X0 is recognized from the Newton solution") {
  const auto& r = test::region("X0");
  auto sol = newton_solve(r, 150);
  REQUIRE(sol.inside_box);
  TracePoint tp = trace_point(sol.pt);
  IntPoly mp = algdep(tp.z, 24, 8);
  CHECK(mp == IntPoly::from_longs({1, 0, 2, 0, 6, 0, 2, 0, 1}));
  CHECK(mp == r.group.z_minpoly);
  QPoly tr1 = express_in_field(tp.p, tp.z, mp);
  QPoly tr3 = express_in_field(tp.r, tp.z, mp);
  CHECK(tr1 == qpoly({0, -1, 0, -6, 0, -2, 0, -1}));
  CHECK(tr3 == qpoly({0, 0, mpq_class(-5, 2), 0, -1, 0, mpq_class(-1, 2)}));
  CHECK(express_in_field(tp.q, tp.z, mp) == r.group.tr2);
}

TEST_CASE("X4 invariant trace field is the cubic field of t^3 - t - 2") {
  const auto& r = test::region("X4");
  IntPoly cubic = IntPoly::from_longs({-2, -1, 0, 1});
  auto g = make_exact_group(r.group, 120);
  auto itf = exact_itf(g);
  REQUIRE(itf.ok);
  CHECK(same_field(itf.minpoly, cubic));

  auto sol = newton_solve(r, 150);
  REQUIRE(sol.inside_box);
  auto sq = traces_from_params(sol.pt);
  APComplex t = sq.trf2 + sq.trw2 * itf.k + sq.trf2w2 * itf.l;
  IntPoly numeric = algdep(t, 24, 8);
  CHECK(numeric.degree() == 3);
  CHECK(same_field(numeric, cubic));
}
