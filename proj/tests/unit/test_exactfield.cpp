#include "common.hpp"
#include "exreg/exactfield.hpp"

#include "doctest.h"

using namespace exreg;

TEST_CASE("number field arithmetic") {
  auto k = NumberField::make(IntPoly::from_longs({-2, 0, 1}));
  NFElement a = NFElement::generator(k);
  CHECK(a * a == NFElement::rational(k, 2));
  NFElement b = a + NFElement::rational(k, 1);
  CHECK(b * b.inverse() == NFElement::rational(k, 1));
}

TEST_CASE("every region's relators are exactly plus or minus I") {
  for (const auto& r : test::catalog().regions) {
    INFO(r.name);
    auto g = make_exact_group(r.group, 120);
    auto c = verify_relators_exact(g, r.r1, r.r2);
    CHECK(c.ok);
    CHECK(c.det_f2_one);
    CHECK(c.det_w2_one);
    CHECK((c.sign1 == 1 || c.sign1 == -1));
  }
}

TEST_CASE("X0 relators evaluate to +I") {
  const auto& r = test::region("X0");
  auto c = verify_relators_exact(make_exact_group(r.group), r.r1, r.r2);
  CHECK(c.sign1 == 1);
  CHECK(c.sign2 == 1);
}

TEST_CASE("a corrupted trace is caught at the first entry") {
  const auto& r = test::region("X0");
  GroupData bad = r.group;
  bad.tr1 = bad.tr1 + QPoly::constant(1);
  auto c = verify_relators_exact(make_exact_group(bad), r.r1, r.r2);
  CHECK_FALSE(c.ok);
  CHECK(c.error.find("entry (1,1)") != std::string::npos);
}

TEST_CASE("scalar_sign") {
  auto k = NumberField::make(IntPoly::from_longs({1, 0, 1}));
  NFElement one = NFElement::rational(k, 1), zero = NFElement::rational(k, 0);
  CHECK(scalar_sign(NFMat{one, zero, zero, one}) == 1);
  CHECK(scalar_sign(NFMat{-one, zero, zero, -one}) == -1);
  std::string why;
  CHECK(scalar_sign(NFMat{one, one, zero, one}, &why) == 0);
  CHECK(why.find("(1,2)") != std::string::npos);
}

TEST_CASE("same_field decisions") {
  auto P = [](std::vector<long> c) { return IntPoly::from_longs(c); };
  // Both generate Q(sqrt -3).
  auto d = same_field_detail(P({4, 2, 1}), P({3, 0, 1}));
  CHECK(d.isomorphic);
  CHECK(same_field(P({-2, 0, 1}), P({-8, 0, 1})));
  CHECK_FALSE(same_field(P({-2, 0, 1}), P({-3, 0, 1})));
  CHECK(same_field_detail(P({-2, 0, 1}), P({-2, 0, 0, 1})).reason == "degree");
  // x^3 - 2 and x^3 - 3: same degree and signature, different discriminant class.
  CHECK_FALSE(same_field(P({-2, 0, 0, 1}), P({-3, 0, 0, 1})));
  // x^3 - x - 2 and the minimal polynomial of its root plus one.
  CHECK(same_field(P({-2, -1, 0, 1}), P({-2, 2, -3, 1})));
}

TEST_CASE("exact invariant trace fields agree with the catalog") {
  for (const auto& r : test::catalog().regions) {
    INFO(r.name);
    auto itf = exact_itf(make_exact_group(r.group));
    REQUIRE(itf.ok);
    CHECK(same_field(itf.minpoly, r.itf_minpoly));
  }
}

TEST_CASE("parameter symmetries hold exactly") {
  for (const auto& r : test::catalog().regions) {
    INFO(r.name);
    auto s = verify_symmetries_exact(make_exact_group(r.group), r.box, r.symmetry);
    CHECK(s.holds);
  }
}
