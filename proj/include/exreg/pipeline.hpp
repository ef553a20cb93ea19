#pragma once

#include "exreg/catalog.hpp"
#include "exreg/exactfield.hpp"
#include "exreg/groebner.hpp"
#include "exreg/grouptheory.hpp"
#include "exreg/solver.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exreg {

using json = nlohmann::json;

struct PipelineOptions {
  int digits = 120;
  /// Use the catalog's group data instead of solving and recognizing.
  bool from_catalog = false;
  std::vector<std::string> orders = {"zrqp", "zrpq", "zpqr"};
  double budget_seconds = 60;
  int max_degree = 24;
  int height_digits = 8;
};

/// One certificate block and whether its checks passed.
struct Block {
  json data;
  bool ok = false;
  /// A computation stopped at its budget (partial result recorded).
  bool budget_exhausted = false;
};

json skipped_block(const std::string& reason);

/// Newton from the box midpoint.
Block solve_block(const RegionRecord& region, const PipelineOptions& opt, std::optional<NewtonResult>* solved = nullptr);

struct Recognition {
  IntPoly z_minpoly;
  QPoly tr1, tr3;
  GroupData group;
  bool z_matches_catalog = false;
  bool z_matches_printed = false;
  bool traces_match_catalog = false;
};

/// algdep on z, express_in_field for tr₁ and tr₃, then the invariant trace
/// field numerically (algdep on the primitive combination) and exactly.
Block recognition_block(const RegionRecord& region, const NewtonResult& solved, const PipelineOptions& opt,
                        std::optional<Recognition>* out = nullptr);

/// Relator signs, itf and symmetries over ℚ(z) for the given group data.
Block exact_block(const RegionRecord& region, const GroupData& data, const PipelineOptions& opt);

/// Literal comparisons against a printed row that differs from the working data.
Block printed_row_block(const RegionRecord& region, const PipelineOptions& opt);

/// Gröbner bases for each order, factor checks, box counts and MVT exclusion.
Block groebner_block(const RegionRecord& region, const PipelineOptions& opt);

/// Abelianizations and homomorphism certificates; for the cover region also the
/// Reidemeister–Schreier chain.
Block groups_block(const RegionRecord& region, const Catalog& catalog);

/// The kernel/ψ/H/ν chain on its own.
Block cover_chain_block(const Catalog& catalog);

json params_json(const ParamPoint& pt, int digits = 30);
json list_json(const std::vector<long>& v);

}  // namespace exreg
