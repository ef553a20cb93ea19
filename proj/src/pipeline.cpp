#include "exreg/pipeline.hpp"

#include "exreg/recognize.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace exreg {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string ratio_text(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

ComplexDecimal decimal_of(const APComplex& x, int digits) {
  return {x.re().to_string(digits), x.im().to_string(digits)};
}

json mvt_json(const MvtCertificate& m) {
  return {{"value", m.value},
          {"gradient_bound", m.gradient_bound},
          {"radius", m.radius},
          {"value_over_radius", m.ratio},
          {"image_radius", m.image_radius},
          {"covers_box", m.covers_box},
          {"passes", m.passes},
          {"margin_100x", m.ratio > 100 * m.gradient_bound},
          {"midpoint_traces",
           {m.midpoint_traces[0].to_string(12), m.midpoint_traces[1].to_string(12), m.midpoint_traces[2].to_string(12)}}};
}

/// Exact signs of the relators at the catalog point (needed for the ideal).
std::pair<int, int> catalog_signs(const RegionRecord& region, int digits) {
  const ExactGroup g = make_exact_group(region.group, digits);
  const RelatorCertificate c = verify_relators_exact(g, region.r1, region.r2);
  if (!c.ok) throw std::runtime_error("catalog group data does not satisfy the relators: " + c.error);
  return {c.sign1, c.sign2};
}

std::string render_named(const Word& w, const std::vector<std::string>& names) {
  bool single = true;
  for (const auto& n : names) single = single && n.size() == 1;
  if (single) {
    std::string letters;
    for (const auto& n : names) letters += n;
    return render_word(w, letters);
  }
  return render_word(w, names);
}

json presentation_json(const Presentation& p) {
  json rels = json::array();
  for (const auto& r : p.relators) rels.push_back(render_named(r, p.generators));
  return {{"generators", p.generators}, {"relators", rels}};
}

json hom_json(const HomCertificate& c) {
  json j{{"ok", c.ok}, {"relator_signs", c.relator_signs}};
  if (c.round_trip_checked) {
    j["round_trip_ok"] = c.round_trip_ok;
    j["round_trip_signs"] = c.round_trip_signs;
  }
  if (!c.error.empty()) j["error"] = c.error;
  return j;
}

json aut_json(const AutomorphismCheck& a) {
  json m = json::array();
  for (const auto& row : a.induced) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v.get_si());
    m.push_back(r);
  }
  return {{"ok", a.ok},
          {"induced_matrix", m},
          {"det", a.det.get_si()},
          {"unimodular", a.unimodular},
          {"preserves_relations", a.preserves_relations},
          {"square_is_identity", a.square_is_identity}};
}

}  // namespace

json skipped_block(const std::string& reason) { return {{"status", "skipped"}, {"reason", reason}}; }

json params_json(const ParamPoint& pt, int digits) {
  return {{"Lp", pt.Lp.to_string(digits)}, {"Dp", pt.Dp.to_string(digits)}, {"Rp", pt.Rp.to_string(digits)}};
}

json list_json(const std::vector<long>& v) { return json(v); }

// ---------------------------------------------------------------- solve

Block solve_block(const RegionRecord& region, const PipelineOptions& opt, std::optional<NewtonResult>* solved) {
  Block b;
  Stopwatch sw;
  try {
    NewtonResult nr = newton_solve(region, opt.digits);
    const double log_res = nr.residual.is_zero() ? -1e9 : log10(nr.residual).to_double();
    b.data = {{"status", "done"},
              {"digits", opt.digits},
              {"iterations", nr.iterations},
              {"residual", nr.residual.to_string(6)},
              {"log10_residual", log_res},
              {"signs", {nr.sigma1, nr.sigma2}},
              {"params", params_json(nr.pt)},
              {"inside_box", nr.inside_box},
              {"jacobian_fd_gap", nr.jacobian_fd_gap}};
    b.ok = nr.inside_box && log_res < -(opt.digits - 10);
    if (solved) *solved = std::move(nr);
  } catch (const std::exception& e) {
    b.data = {{"status", "error"}, {"error", e.what()}};
  }
  b.data["seconds"] = sw.seconds();
  return b;
}

// ---------------------------------------------------------------- recognize

Block recognition_block(const RegionRecord& region, const NewtonResult& solved, const PipelineOptions& opt,
                        std::optional<Recognition>* out) {
  Block b;
  Stopwatch sw;
  try {
    const TracePoint tp = trace_point(solved.pt);
    Recognition rec;
    rec.z_minpoly = algdep(tp.z, opt.max_degree, opt.height_digits);
    rec.z_matches_catalog = rec.z_minpoly == region.group.z_minpoly;
    const GroupData& table = region.printed ? *region.printed : region.group;
    rec.z_matches_printed = rec.z_minpoly == table.z_minpoly;
    rec.tr1 = express_in_field(tp.p, tp.z, rec.z_minpoly);
    const QPoly tr2 = express_in_field(tp.q, tp.z, rec.z_minpoly);
    rec.tr3 = express_in_field(tp.r, tp.z, rec.z_minpoly);
    rec.traces_match_catalog = rec.z_matches_catalog && rec.tr1 == region.group.tr1 && tr2 == region.group.tr2 &&
                               rec.tr3 == region.group.tr3;
    rec.group = GroupData{rec.z_minpoly, decimal_of(tp.z, 40), rec.tr1, tr2, rec.tr3};

    // Invariant trace field: the primitive combination comes from the exact
    // field, the polynomial from algdep on the solved traces.
    const ExactGroup g = make_exact_group(rec.group, opt.digits);
    const ItfResult itf = exact_itf(g);
    json itf_json = {{"exact_ok", itf.ok}};
    bool itf_ok = false;
    if (itf.ok) {
      const SquareTraces st = traces_from_params(solved.pt);
      const APComplex t = st.trf2 + st.trw2 * itf.k + st.trf2w2 * itf.l;
      const int deg = static_cast<int>(itf.minpoly.degree());
      const IntPoly guess = algdep(t, std::max(deg, 2), opt.height_digits);
      const SameFieldResult sf = same_field_detail(guess, region.itf_minpoly);
      itf_ok = guess == itf.minpoly && sf.isomorphic;
      itf_json.update({{"k", itf.k},
                       {"l", itf.l},
                       {"numeric_minpoly", guess.to_string("t")},
                       {"exact_minpoly", itf.minpoly.to_string("t")},
                       {"numeric_equals_exact", guess == itf.minpoly},
                       {"table_minpoly", region.itf_minpoly.to_string("t")},
                       {"same_field_as_table", sf.isomorphic},
                       {"same_field_reason", sf.reason}});
    } else {
      itf_json["error"] = itf.error;
    }
    b.data = {{"status", "done"},
              {"z_minpoly", rec.z_minpoly.to_string("x")},
              {"z_matches_catalog", rec.z_matches_catalog},
              {"z_matches_printed_table", rec.z_matches_printed},
              {"tr1", rec.tr1.to_string("z")},
              {"tr3", rec.tr3.to_string("z")},
              {"traces_match_catalog", rec.traces_match_catalog},
              {"itf", itf_json}};
    if (region.printed) b.data["printed_table_z_minpoly"] = region.printed->z_minpoly.to_string("x");
    b.ok = rec.z_matches_catalog && rec.traces_match_catalog && itf_ok;
    if (out) *out = std::move(rec);
  } catch (const std::exception& e) {
    b.data = {{"status", "error"}, {"error", e.what()}};
  }
  b.data["seconds"] = sw.seconds();
  return b;
}

// ---------------------------------------------------------------- exact

Block exact_block(const RegionRecord& region, const GroupData& data, const PipelineOptions& opt) {
  Block b;
  Stopwatch sw;
  try {
    const ExactGroup g = make_exact_group(data, opt.digits);
    const RelatorCertificate rc = verify_relators_exact(g, region.r1, region.r2);
    json rel{{"ok", rc.ok}, {"signs", {rc.sign1, rc.sign2}}, {"det_f2_one", rc.det_f2_one},
             {"det_w2_one", rc.det_w2_one}, {"field", data.z_minpoly.to_string("x")}};
    if (!rc.error.empty()) rel["error"] = rc.error;
    b.data = {{"status", "done"}, {"relators", rel}};
    if (!rc.ok) {
      b.data["failed_check"] = "relators";
      b.data["seconds"] = sw.seconds();
      return b;
    }
    const ItfResult itf = exact_itf(g);
    json itf_json{{"ok", itf.ok}};
    bool itf_ok = false;
    if (itf.ok) {
      const SameFieldResult sf = same_field_detail(itf.minpoly, region.itf_minpoly);
      itf_ok = sf.isomorphic;
      itf_json.update({{"minpoly", itf.minpoly.to_string("t")},
                       {"k", itf.k},
                       {"l", itf.l},
                       {"table_minpoly", region.itf_minpoly.to_string("t")},
                       {"same_field_as_table", sf.isomorphic},
                       {"same_field_reason", sf.reason}});
    } else {
      itf_json["error"] = itf.error;
    }
    b.data["itf"] = itf_json;
    const SymmetryResult sym = verify_symmetries_exact(g, region.box, region.symmetry);
    json sj{{"holds", sym.holds},
            {"kind", region.symmetry == SymmetryKind::LEqualsDROne ? "L=D,R=0" : "R=L/2"},
            {"detail", sym.detail}};
    if (region.symmetry == SymmetryKind::RHalfL && sym.holds) sj["sign"] = sym.sign;
    b.data["symmetry"] = sj;
    b.ok = itf_ok && sym.holds;
    if (!itf_ok) b.data["failed_check"] = "itf";
    else if (!sym.holds) b.data["failed_check"] = "symmetry";
  } catch (const std::exception& e) {
    b.data = {{"status", "error"}, {"error", e.what()}, {"failed_check", "exception"}};
  }
  b.data["seconds"] = sw.seconds();
  return b;
}

Block printed_row_block(const RegionRecord& region, const PipelineOptions& opt) {
  Block b;
  if (!region.printed) {
    b.ok = true;
    b.data = skipped_block("working data equals the printed row");
    return b;
  }
  try {
    const ExactGroup g = make_exact_group(*region.printed, opt.digits);
    const RelatorCertificate rc = verify_relators_exact(g, region.r1, region.r2);
    b.data = {{"status", "done"},
              {"field", region.printed->z_minpoly.to_string("x")},
              {"relators_ok", rc.ok},
              {"signs", {rc.sign1, rc.sign2}}};
    if (!rc.error.empty()) b.data["error"] = rc.error;
    b.ok = rc.ok;
  } catch (const std::exception& e) {
    b.data = {{"status", "error"}, {"error", e.what()}};
  }
  return b;
}

// ---------------------------------------------------------------- groebner

Block groebner_block(const RegionRecord& region, const PipelineOptions& opt) {
  Block b;
  Stopwatch sw;
  try {
    const auto [s1, s2] = catalog_signs(region, opt.digits);
    const std::vector<MPoly> gens = symbolic_relator_entries(region, s1, s2);
    const ExactGroup g = make_exact_group(region.group, opt.digits);
    json orders = json::object();
    bool all_ok = true, any_incomplete = false;
    for (const auto& order : opt.orders) {
      const GroebnerResult res = lex_groebner(gens, order, {opt.budget_seconds, 2'000'000});
      json o{{"method", res.method},
             {"complete", res.complete},
             {"generators", gens.size()},
             {"basis_size", res.basis.size()},
             {"seconds", res.stats.seconds},
             {"pairs_processed", res.stats.pairs_processed},
             {"pairs_skipped", res.stats.pairs_skipped},
             {"notes", res.notes}};
      if (res.quotient_dimension >= 0) o["quotient_dimension"] = res.quotient_dimension;
      if (!res.complete) {
        o["budget_status"] = "exhausted";
        any_incomplete = true;
        all_ok = false;
        orders[order] = o;
        continue;
      }
      o["budget_status"] = "completed";
      const bool spoly = s_polynomials_reduce_to_zero(res.basis);
      bool vanish = true;
      for (const auto& p : res.basis) vanish = vanish && eval_at_group(p, g).is_zero();
      const MPoly& last = last_element(res.basis);
      o["s_polynomials_reduce_to_zero"] = spoly;
      o["vanishes_at_exact_point"] = vanish;
      o["last_element"] = last.to_string();
      bool ok = spoly && vanish;
      const auto printed = printed_factors(region, order);
      if (!printed.empty()) {
        const FactorCheck fc = check_paper_factor(last, printed);
        o["printed_factors_divide"] = fc.divides;
        ok = ok && fc.divides;
      }
      const BoxCount bc = count_box_solutions(region, res.basis);
      o["solution_count"] = bc.count;
      o["roots"] = bc.roots;
      o["branch_candidates"] = bc.branch_candidates;
      o["count_notes"] = bc.notes;
      ok = ok && bc.count == 1;
      if (bc.excluded_factor) {
        o["excluded_factor"] = bc.excluded_factor->to_string();
        MvtCertificate m = mvt_exclusion(*bc.excluded_factor, region, region.mvt ? region.mvt->radius : "0.002");
        if (!m.covers_box) m = mvt_exclusion(*bc.excluded_factor, region, ratio_text(2 * m.image_radius));
        o["mvt"] = mvt_json(m);
        ok = ok && m.passes && m.covers_box;
      }
      o["ok"] = ok;
      all_ok = all_ok && ok;
      orders[order] = o;
    }
    b.data = {{"status", "done"}, {"signs", {s1, s2}}, {"orders", orders}};
    b.budget_exhausted = any_incomplete;

    // Without a complete basis the printed factorization can still be tested:
    // the printed product must vanish at the exact point, the multivariate
    // factor must be the same in every order, and it must be excluded by MVT.
    if (any_incomplete && region.mvt && !region.printed_factors.empty()) {
      json fallback;
      bool ok = true;
      std::optional<MPoly> common;
      bool same_factor = true;
      for (const auto& pf : region.printed_factors) {
        const auto factors = printed_factors(region, pf.order);
        MPoly product = MPoly::constant(pf.order, 1);
        json vanishing = json::array();
        for (size_t i = 0; i < factors.size(); ++i) {
          product = product * factors[i];
          if (eval_at_group(factors[i].reorder(kTraceVars), g).is_zero()) vanishing.push_back(pf.factors[i]);
        }
        const bool zero = eval_at_group(product.reorder(kTraceVars), g).is_zero();
        const FactorCheck fc = check_paper_factor(product, factors);
        fallback["orders"][pf.order] = {{"product_vanishes_at_exact_point", zero},
                                        {"vanishing_factors", vanishing},
                                        {"factors_divide_product", fc.divides}};
        ok = ok && zero && fc.divides;
        for (const auto& f : factors) {
          if (f.is_univariate_in(f.var_index('p')) || f.is_univariate_in(f.var_index('q')) ||
              f.is_univariate_in(f.var_index('r')))
            continue;
          const MPoly canon = f.reorder(kTraceVars);
          if (!common) common = canon;
          else same_factor = same_factor && canon == *common;
        }
      }
      fallback["multivariate_factor_same_in_all_orders"] = same_factor;
      const MPoly factor = parse_mpoly(region.mvt->factor, kTraceVars);
      const MvtCertificate m = mvt_exclusion(factor, region, region.mvt->radius);
      fallback["mvt"] = mvt_json(m);
      fallback["printed_ratio"] = region.mvt->printed_ratio;
      fallback["printed_bound"] = region.mvt->printed_bound;
      const bool mvt_ok = m.passes && m.covers_box && m.ratio > 100 * m.gradient_bound;
      fallback["ok"] = ok && same_factor && mvt_ok;
      b.data["timeout_path"] = fallback;
      b.ok = ok && same_factor && mvt_ok;
    } else {
      b.ok = all_ok;
    }
  } catch (const std::exception& e) {
    b.data = {{"status", "error"}, {"error", e.what()}};
  }
  b.data["seconds"] = sw.seconds();
  return b;
}

// ---------------------------------------------------------------- groups

Block groups_block(const RegionRecord& region, const Catalog& catalog) {
  Block b;
  Stopwatch sw;
  try {
    const Presentation marked = marked_group(region);
    const std::vector<long> h1_marked = abelianization(marked);
    b.data = {{"status", "done"}, {"h1_marked_group", h1_marked}};
    bool ok = true;
    if (region.census) {
      const CensusRecord& c = *region.census;
      b.data["census_manifold"] = c.manifold;
      b.data["h1_table"] = c.h1;
      const bool marked_matches = h1_marked == c.h1;
      b.data["marked_matches_table"] = marked_matches;
      ok = ok && marked_matches;
      if (auto cp = census_presentation(region)) {
        const std::vector<long> h1_census = abelianization(*cp);
        b.data["h1_census"] = h1_census;
        b.data["census_matches_table"] = h1_census == c.h1;
        ok = ok && h1_census == c.h1;
        if (c.iso_images) {
          const ExactGroup g = make_exact_group(region.group);
          const HomCertificate hc = verify_hom_kills_relators(*cp, *c.iso_images, g, c.inverse_images);
          b.data["map"] = hom_json(hc);
          ok = ok && hc.ok;
          if (c.printed_iso_images) {
            const HomCertificate pc = verify_hom_kills_relators(*cp, *c.printed_iso_images, g, c.printed_inverse_images);
            b.data["printed_map"] = hom_json(pc);
          }
        } else {
          b.data["map"] = skipped_block("no isomorphism listed for this region");
        }
      }
    }
    if (catalog.cover && catalog.cover->region == region.name) {
      const Block chain = cover_chain_block(catalog);
      b.data["cover_chain"] = chain.data;
      ok = ok && chain.ok;
    }
    b.ok = ok;
  } catch (const std::exception& e) {
    b.data = {{"status", "error"}, {"error", e.what()}};
  }
  b.data["seconds"] = sw.seconds();
  return b;
}

Block cover_chain_block(const Catalog& catalog) {
  Block b;
  if (!catalog.cover) {
    b.data = skipped_block("catalog has no cover chain");
    return b;
  }
  const CoverChain& ch = *catalog.cover;
  const Presentation M = Presentation::from(ch.pi1_m);
  const Presentation N_printed = Presentation::from(ch.pi1_n);
  const Presentation G = Presentation::from(ch.g);

  TietzeOptions keep_bc;
  keep_bc.single_occurrence = true;
  for (const auto& [gen, par] : ch.phi)
    if (par == 0) keep_bc.keep.push_back(std::string(1, gen) + "0");
  const KernelResult ker_phi = rs_index2_kernel(M, ch.phi, keep_bc);
  std::map<std::string, std::string> back;
  for (const auto& k : keep_bc.keep) back[k] = k.substr(0, 1);
  const Presentation N_derived = rename_generators(ker_phi.presentation, back);
  bool reached_bc = N_derived.generators.size() == N_printed.generators.size();
  for (const auto& gname : N_derived.generators)
    reached_bc = reached_bc && gname.size() == 1 && N_printed.letters().find(gname) != std::string::npos;

  auto make_h = [&](const Presentation& n) {
    // H is generated by π₁(N) and t; order generators as b, c, t.
    Presentation h = n;
    const std::string letters = n.letters() + "t";
    h.generators.push_back("t");
    for (const auto& t : ch.h_extra_relators) h.relators.push_back(parse_word(t, letters));
    return h;
  };
  // The printed relators are over "bc"; reorder the derived presentation to match.
  Presentation N_derived_bc = N_derived;
  if (reached_bc && N_derived.letters() != N_printed.letters()) {
    std::vector<Word> images;
    for (const auto& gname : N_derived.generators)
      images.push_back(parse_word(gname, N_printed.letters()));
    N_derived_bc.generators = N_printed.generators;
    for (auto& r : N_derived_bc.relators) r = substitute(r, images);
  }
  const Presentation H_derived = make_h(N_derived_bc);
  const Presentation H_printed = make_h(N_printed);
  const KernelResult ker_mu_derived = rs_index2_kernel(H_derived, ch.mu);
  const KernelResult ker_mu_printed = rs_index2_kernel(H_printed, ch.mu);

  const auto h1_M = abelianization(M);
  const auto h1_ker_phi = abelianization(ker_phi.presentation);
  const auto h1_N_printed = abelianization(N_printed);
  const auto h1_G = abelianization(G);
  const auto h1_mu_derived = abelianization(ker_mu_derived.presentation);
  const auto h1_mu_printed = abelianization(ker_mu_printed.presentation);

  const std::vector<Word> psi = parse_images(ch.psi, N_printed.letters(), N_printed.letters());
  const AutomorphismCheck psi_printed = check_automorphism_order2_detail(N_printed, psi);
  const AutomorphismCheck psi_derived = check_automorphism_order2_detail(N_derived_bc, psi);

  const RegionRecord& region = catalog.region(ch.region);
  const ExactGroup g4 = make_exact_group(region.group);
  const std::vector<Word> nu = parse_images(ch.nu, G.letters(), "fw");
  const HomCertificate nu_cert =
      verify_hom_kills_relators(G, nu, g4, parse_images(ch.nu_inverse_working, "fw", G.letters()));
  const HomCertificate nu_printed = verify_hom_kills_relators(G, nu, g4, parse_images(ch.nu_inverse, "fw", G.letters()));

  const bool derived_ok = reached_bc && h1_mu_derived == h1_G && h1_G == ch.h1_g && psi_derived.ok;
  b.data = {
      {"status", "done"},
      {"h1_pi1_M", h1_M},
      {"ker_phi", {{"h1", h1_ker_phi},
                   {"schreier_generators", ker_phi.unsimplified.generators},
                   {"tietze", ker_phi.tietze_log},
                   {"presentation", presentation_json(N_derived_bc)},
                   {"reached_printed_generators", reached_bc}}},
      {"printed_pi1_N", {{"h1", h1_N_printed}, {"matches_ker_phi", h1_N_printed == h1_ker_phi}}},
      {"psi", {{"printed_relators", aut_json(psi_printed)}, {"derived_relators", aut_json(psi_derived)}}},
      {"H", {{"h1_from_derived_N", abelianization(H_derived)}, {"h1_from_printed_N", abelianization(H_printed)}}},
      {"ker_mu", {{"h1_from_derived_N", h1_mu_derived},
                  {"h1_from_printed_N", h1_mu_printed},
                  {"h1_G", h1_G},
                  {"h1_table", ch.h1_g},
                  {"derived_matches_G", h1_mu_derived == h1_G},
                  {"printed_matches_G", h1_mu_printed == h1_G}}},
      {"nu", hom_json(nu_cert)},
      {"nu_printed_inverse", hom_json(nu_printed)},
      {"derived_chain_ok", derived_ok}};
  b.ok = derived_ok && nu_cert.ok;
  return b;
}

}  // namespace exreg
