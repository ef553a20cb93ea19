#include "common.hpp"

#include "doctest.h"
#include "json.hpp"

#include <fstream>
#include <sstream>

using namespace exreg;
using nlohmann::json;

namespace {

json raw_catalog() {
  std::ifstream in(EXREG_TEST_CATALOG);
  return json::parse(in);
}

std::string error_of(const std::string& text) {
  try {
    parse_catalog(text, "test.json");
  } catch (const CatalogError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("bundled catalog loads") {
  const auto& cat = test::catalog();
  CHECK(cat.regions.size() == 7);
  for (const char* name : {"X0", "X1", "X2", "X3", "X4", "X5", "X6"}) CHECK(cat.has_region(name));
  CHECK_FALSE(cat.has_region("X9"));
  CHECK_THROWS_AS(cat.region("X9"), CatalogError);
  REQUIRE(cat.cover);
  CHECK(cat.cover->region == "X4");
  const auto& x0 = cat.region("X0");
  CHECK(x0.group.z_minpoly == IntPoly::from_longs({1, 0, 2, 0, 6, 0, 2, 0, 1}));
  CHECK(x0.r1.length() > 0);
}

TEST_CASE("decimals are parsed exactly") {
  CHECK(parse_decimal_exact("-0.25") == mpq_class(-1, 4));
  CHECK(parse_decimal_exact("1.5e2") == mpq_class(150));
  CHECK(parse_decimal_exact("3") == mpq_class(3));
  CHECK_THROWS_AS(parse_decimal_exact("1.2.3"), CatalogError);
  CHECK_THROWS_AS(parse_decimal_exact("abc"), CatalogError);
}

TEST_CASE("syntax errors report the line") {
  std::string err = error_of("{\n \"regions\": [\n ,\n]}");
  CHECK(contains(err, "test.json"));
  CHECK(contains(err, "line 3"));
}

TEST_CASE("missing and malformed fields name the record and field") {
  json doc = raw_catalog();
  doc["regions"][0].erase("z_minpoly");
  std::string err = error_of(doc.dump());
  CHECK(contains(err, "X0"));
  CHECK(contains(err, "z_minpoly"));

  doc = raw_catalog();
  doc["regions"][2]["r1"] = "fwq";
  err = error_of(doc.dump());
  CHECK(contains(err, "X2"));
  CHECK(contains(err, "r1"));

  doc = raw_catalog();
  doc["regions"][1]["box"]["Lp_re"] = json::array({"x", "1"});
  err = error_of(doc.dump());
  CHECK(contains(err, "X1"));

  CHECK(contains(error_of("{}"), "regions"));
}

TEST_CASE("missing file") { CHECK_THROWS_AS(load_catalog("/nonexistent/catalog.json"), CatalogError); }
