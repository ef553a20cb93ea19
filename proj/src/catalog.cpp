#include "exreg/catalog.hpp"

#include "exreg/roots.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

namespace exreg {

using nlohmann::json;

mpq_class parse_decimal_exact(const std::string& text) {
  static const std::regex re(R"(\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re) || (m[2].length() == 0 && m[3].length() == 0)) {
    throw CatalogError("malformed decimal '" + text + "'");
  }
  const std::string int_part = m[2].str(), frac = m[3].str();
  mpz_class num(int_part.empty() && frac.empty() ? std::string("0") : int_part + frac, 10);
  long exp10 = -static_cast<long>(frac.size());
  if (m[4].length()) exp10 += std::stol(m[4].str());
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  mpq_class q = exp10 >= 0 ? mpq_class(num * p) : mpq_class(num, p);
  q.canonicalize();
  return m[1].str() == "-" ? mpq_class(-q) : q;
}

APComplex BoxRegion::midpoint(Param p, int digits) const {
  const auto bits = digits_to_bits(digits);
  const auto& a = re(p);
  const auto& b = im(p);
  return APComplex::from_rational((a.lo_q + a.hi_q) / 2, (b.lo_q + b.hi_q) / 2, bits);
}

mpq_class BoxRegion::half_width() const {
  mpq_class h = 0;
  for (const auto& r : ranges) h = std::max<mpq_class>(h, (r.hi_q - r.lo_q) / 2);
  return h;
}

bool BoxRegion::contains(Param p, const APComplex& v) const {
  const auto bits = v.precision();
  const auto& a = re(p);
  const auto& b = im(p);
  return Real(a.lo_q, bits) <= v.re() && v.re() <= Real(a.hi_q, bits) && Real(b.lo_q, bits) <= v.im() &&
         v.im() <= Real(b.hi_q, bits);
}

BoxRegion BoxRegion::enlarged(const mpq_class& factor) const {
  BoxRegion out = *this;
  for (auto& r : out.ranges) {
    const mpq_class mid = (r.lo_q + r.hi_q) / 2, half = (r.hi_q - r.lo_q) / 2 * factor;
    r.lo_q = mid - half;
    r.hi_q = mid + half;
    r.lo = r.lo_q.get_str();
    r.hi = r.hi_q.get_str();
  }
  return out;
}

const RegionRecord& Catalog::region(const std::string& name) const {
  for (const auto& r : regions) {
    if (r.name == name) return r;
  }
  throw CatalogError("unknown region '" + name + "'");
}

bool Catalog::has_region(const std::string& name) const {
  return std::any_of(regions.begin(), regions.end(), [&](const RegionRecord& r) { return r.name == name; });
}

std::string default_catalog_path() {
  if (const char* env = std::getenv("EXREG_CATALOG"); env && *env) return env;
  return EXREG_DEFAULT_CATALOG;
}

namespace {

class Ctx {
 public:
  Ctx(std::string where) : where_(std::move(where)) {}
  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw CatalogError(where_ + ": field '" + field + "': " + what);
  }
  const json& need(const json& obj, const std::string& key) const {
    if (!obj.is_object() || !obj.contains(key)) fail(key, "missing");
    return obj.at(key);
  }
  std::string str(const json& obj, const std::string& key) const {
    const json& v = need(obj, key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

mpq_class rational_of(const json& v, const Ctx& ctx, const std::string& field) {
  try {
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    if (v.is_string()) {
      mpq_class q(v.get<std::string>(), 10);
      q.canonicalize();
      return q;
    }
  } catch (const std::invalid_argument&) {
  }
  ctx.fail(field, "expected an integer or a rational string, got " + v.dump());
}

IntPoly int_poly(const json& obj, const std::string& key, const Ctx& ctx) {
  const json& v = ctx.need(obj, key);
  if (!v.is_array() || v.empty()) ctx.fail(key, "expected a nonempty integer list");
  std::vector<mpz_class> c;
  for (const auto& x : v) {
    if (x.is_number_integer()) c.emplace_back(x.get<long>());
    else if (x.is_string()) c.emplace_back(x.get<std::string>(), 10);
    else ctx.fail(key, "non-integer coefficient " + x.dump());
  }
  IntPoly p(std::move(c));
  if (p.degree() < 1) ctx.fail(key, "polynomial must have degree >= 1");
  return p;
}

QPoly rat_poly(const json& v, const Ctx& ctx, const std::string& key) {
  if (!v.is_array()) ctx.fail(key, "expected a coefficient list");
  std::vector<mpq_class> c;
  for (const auto& x : v) c.push_back(rational_of(x, ctx, key));
  return QPoly(std::move(c));
}

ComplexDecimal complex_decimal(const json& obj, const std::string& key, const Ctx& ctx) {
  const json& v = ctx.need(obj, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_string()) {
    ctx.fail(key, "expected two decimal strings");
  }
  ComplexDecimal c{v[0].get<std::string>(), v[1].get<std::string>()};
  try {
    parse_decimal_exact(c.re);
    parse_decimal_exact(c.im);
  } catch (const CatalogError& e) {
    ctx.fail(key, e.what());
  }
  return c;
}

Word word_of(const std::string& text, const std::string& gens, const Ctx& ctx, const std::string& field) {
  try {
    return parse_word(text, gens);
  } catch (const WordParseError& e) {
    ctx.fail(field, e.what());
  }
}

GroupData group_data(const json& obj, const Ctx& ctx) {
  GroupData g;
  g.z_minpoly = int_poly(obj, "z_minpoly", ctx);
  g.z_approx = complex_decimal(obj, "z_approx", ctx);
  g.tr1 = rat_poly(ctx.need(obj, "tr1"), ctx, "tr1");
  for (const char* key : {"tr2", "tr3"}) {
    const json& v = ctx.need(obj, key);
    QPoly p = (v.is_string() && v.get<std::string>() == "tr1") ? g.tr1 : rat_poly(v, ctx, key);
    (std::string(key) == "tr2" ? g.tr2 : g.tr3) = p;
  }
  return g;
}

BoxRegion box_of(const json& obj, const std::string& name, const Ctx& ctx) {
  static const std::array<const char*, 6> keys = {"Lp_re", "Lp_im", "Dp_re", "Dp_im", "Rp_re", "Rp_im"};
  const json& b = ctx.need(obj, "box");
  BoxRegion box;
  box.name = name;
  box.reconstructed = b.value("reconstructed", false);
  for (size_t i = 0; i < keys.size(); ++i) {
    const std::string field = std::string("box.") + keys[i];
    const json& r = ctx.need(b, keys[i]);
    if (!r.is_array() || r.size() != 2 || !r[0].is_string() || !r[1].is_string()) {
      ctx.fail(field, "expected [lo, hi] decimal strings");
    }
    DecimalRange dr{r[0].get<std::string>(), r[1].get<std::string>(), 0, 0};
    try {
      dr.lo_q = parse_decimal_exact(dr.lo);
      dr.hi_q = parse_decimal_exact(dr.hi);
    } catch (const CatalogError& e) {
      ctx.fail(field, e.what());
    }
    if (dr.lo_q > dr.hi_q) ctx.fail(field, "invariant violated: min > max");
    box.ranges[i] = dr;
  }
  return box;
}

std::vector<Word> images_of(const json& obj, const std::string& key, const std::string& source_gens,
                            const std::string& target_gens, const Ctx& ctx) {
  const json& m = ctx.need(obj, key);
  if (!m.is_object()) ctx.fail(key, "expected an object of generator images");
  std::vector<Word> out;
  for (char g : source_gens) {
    const std::string k(1, g);
    if (!m.contains(k) || !m.at(k).is_string()) ctx.fail(key, "no image for generator " + k);
    out.push_back(word_of(m.at(k).get<std::string>(), target_gens, ctx, key + "." + k));
  }
  return out;
}

std::vector<long> long_list(const json& v, const Ctx& ctx, const std::string& key) {
  if (!v.is_array()) ctx.fail(key, "expected an integer list");
  std::vector<long> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) ctx.fail(key, "expected integers");
    out.push_back(x.get<long>());
  }
  return out;
}

CensusRecord census_of(const json& c, const Ctx& ctx) {
  CensusRecord r;
  r.manifold = ctx.str(c, "manifold");
  r.h1 = long_list(ctx.need(c, "h1"), ctx, "census.h1");
  r.volume = ctx.str(c, "volume");
  r.l_min = ctx.str(c, "l_min");
  r.generators = c.value("generators", std::string("ab"));
  if (c.contains("relators")) {
    for (const auto& t : c.at("relators")) {
      r.relator_texts.push_back(t.get<std::string>());
      r.relators.push_back(word_of(r.relator_texts.back(), r.generators, ctx, "census.relators"));
    }
  }
  const std::string fw = kRegionGenerators;
  if (c.contains("iso_images")) r.iso_images = images_of(c, "iso_images", r.generators, fw, ctx);
  if (c.contains("inverse_images")) r.inverse_images = images_of(c, "inverse_images", fw, r.generators, ctx);
  if (c.contains("printed_iso_images")) {
    r.printed_iso_images = images_of(c, "printed_iso_images", r.generators, fw, ctx);
  }
  if (c.contains("printed_inverse_images")) {
    r.printed_inverse_images = images_of(c, "printed_inverse_images", fw, r.generators, ctx);
  }
  return r;
}

GroupPresentationText presentation_of(const json& obj, const Ctx& ctx, const std::string& key) {
  const json& p = ctx.need(obj, key);
  GroupPresentationText g;
  g.generators = ctx.str(p, "generators");
  for (const auto& t : ctx.need(p, "relators")) {
    g.relator_texts.push_back(t.get<std::string>());
    g.relators.push_back(word_of(g.relator_texts.back(), g.generators, ctx, key + ".relators"));
  }
  return g;
}

std::map<char, int> parity_of(const json& obj, const Ctx& ctx, const std::string& key) {
  std::map<char, int> out;
  for (const auto& [k, v] : ctx.need(obj, key).items()) out[k.at(0)] = v.get<int>();
  return out;
}

std::map<char, std::string> map_of(const json& obj, const Ctx& ctx, const std::string& key) {
  std::map<char, std::string> out;
  for (const auto& [k, v] : ctx.need(obj, key).items()) out[k.at(0)] = v.get<std::string>();
  return out;
}

// Distance from `approx` to the nearest root of `p` must be below 1e-6.
void check_root(const IntPoly& p, const ComplexDecimal& approx, const Ctx& ctx, const std::string& field) {
  const APComplex a = approx.value(30);
  const APComplex r = nearest_root(p.to_q(), a, 30);
  if (!((r - a).abs() < Real::from_string("1e-6", a.precision()))) {
    ctx.fail(field, "invariant violated: approximation is not a root of the minimal polynomial");
  }
}

RegionRecord region_of(const json& obj) {
  Ctx pre("region");
  const std::string name = pre.str(obj, "name");
  Ctx ctx("region " + name);
  RegionRecord r;
  r.name = name;
  r.box = box_of(obj, name, ctx);
  r.r1_text = ctx.str(obj, "r1");
  r.r2_text = ctx.str(obj, "r2");
  r.r1 = word_of(r.r1_text, kRegionGenerators, ctx, "r1");
  r.r2 = word_of(r.r2_text, kRegionGenerators, ctx, "r2");
  for (const Word* w : {&r.r1, &r.r2}) {
    if (w->max_generator() != 1 || std::none_of(w->runs().begin(), w->runs().end(),
                                                [](const Letter& l) { return l.gen == 0; })) {
      ctx.fail(w == &r.r1 ? "r1" : "r2", "invariant violated: quasi-relator must use both f and w");
    }
  }
  r.group = group_data(obj, ctx);
  if (squarefree_part(r.group.z_minpoly.to_q()).degree() != r.group.z_minpoly.degree()) {
    ctx.fail("z_minpoly", "invariant violated: not squarefree");
  }
  check_root(r.group.z_minpoly, r.group.z_approx, ctx, "z_approx");
  if (obj.contains("printed")) r.printed = group_data(obj.at("printed"), Ctx(ctx.where() + " (printed)"));
  r.itf_minpoly = int_poly(obj, "itf_minpoly", ctx);
  r.itf_approx = complex_decimal(obj, "itf_approx", ctx);
  check_root(r.itf_minpoly, r.itf_approx, ctx, "itf_approx");
  const std::string sym = ctx.str(obj, "symmetry");
  if (sym == "L=D,R=0") r.symmetry = SymmetryKind::LEqualsDROne;
  else if (sym == "R=L/2") r.symmetry = SymmetryKind::RHalfL;
  else ctx.fail("symmetry", "expected \"L=D,R=0\" or \"R=L/2\"");
  if (obj.contains("census")) r.census = census_of(obj.at("census"), Ctx(ctx.where() + " census"));
  if (obj.contains("groebner_factors")) {
    for (const auto& [order, list] : obj.at("groebner_factors").items()) {
      PrintedFactorization pf{order, {}};
      for (const auto& f : list) pf.factors.push_back(f.get<std::string>());
      r.printed_factors.push_back(std::move(pf));
    }
  }
  if (obj.contains("mvt")) {
    const json& m = obj.at("mvt");
    MvtData d;
    d.radius = ctx.str(m, "radius");
    d.p0 = complex_decimal(m, "p0", ctx);
    d.q0 = complex_decimal(m, "q0", ctx);
    d.r0 = complex_decimal(m, "r0", ctx);
    d.printed_ratio = ctx.str(m, "printed_ratio");
    d.printed_bound = ctx.str(m, "printed_bound");
    d.factor = ctx.str(m, "factor");
    r.mvt = d;
  }
  if (obj.contains("printed_midpoint")) {
    const json& m = obj.at("printed_midpoint");
    r.printed_midpoint = std::array<ComplexDecimal, 3>{complex_decimal(m, "Lp", ctx), complex_decimal(m, "Dp", ctx),
                                                       complex_decimal(m, "Rp", ctx)};
  }
  return r;
}

CoverChain cover_of(const json& c) {
  Ctx ctx("cover");
  CoverChain ch;
  ch.region = ctx.str(c, "region");
  ch.manifold = ctx.str(c, "manifold");
  ch.pi1_m = presentation_of(c, ctx, "pi1_M");
  ch.phi = parity_of(c, ctx, "phi");
  ch.pi1_n = presentation_of(c, ctx, "pi1_N");
  ch.psi = map_of(c, ctx, "psi");
  for (const auto& t : ctx.need(c, "H_extra_relators")) ch.h_extra_relators.push_back(t.get<std::string>());
  ch.mu = parity_of(c, ctx, "mu");
  ch.g = presentation_of(c, ctx, "G");
  ch.nu = map_of(c, ctx, "nu");
  ch.nu_inverse = map_of(c, ctx, "nu_inverse");
  ch.nu_inverse_working = c.contains("nu_inverse_working") ? map_of(c, ctx, "nu_inverse_working") : ch.nu_inverse;
  ch.h1_g = long_list(ctx.need(c, "h1_G"), ctx, "h1_G");
  return ch;
}

}  // namespace

Catalog parse_catalog(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const size_t upto = std::min(text.size(), static_cast<size_t>(e.byte));
    const long line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw CatalogError(source + ": line " + std::to_string(line) + ": " + e.what());
  }
  Catalog cat;
  cat.source = source;
  if (!doc.contains("regions") || !doc.at("regions").is_array()) {
    throw CatalogError(source + ": field 'regions' missing or not a list");
  }
  try {
    for (const auto& r : doc.at("regions")) cat.regions.push_back(region_of(r));
    if (doc.contains("cover")) cat.cover = cover_of(doc.at("cover"));
  } catch (const json::exception& e) {
    throw CatalogError(source + ": " + e.what());
  }
  return cat;
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str(), path);
}

}  // namespace exreg
