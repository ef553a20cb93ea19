#pragma once

#include "exreg/catalog.hpp"

namespace test {

inline const exreg::Catalog& catalog() {
  static const exreg::Catalog c = exreg::load_catalog(EXREG_TEST_CATALOG);
  return c;
}

inline const exreg::RegionRecord& region(const std::string& name) { return catalog().region(name); }

}  // namespace test
