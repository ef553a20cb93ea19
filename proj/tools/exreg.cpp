// exreg: solve, verify and certify the exceptional regions from the catalog.

#include "exreg/pipeline.hpp"

#include "CLI11.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace fs = std::filesystem;
using namespace exreg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Settings {
  std::string catalog_path;
  std::string out_dir = "certificates";
  int jobs = 1;
  PipelineOptions opt;
  std::string region;
  bool all = false;
};

std::string default_catalog() {
  if (const char* env = std::getenv("EXREG_CATALOG"); env && *env) return env;
  return EXREG_DEFAULT_CATALOG;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) return json::object();
  try {
    return json::parse(in);
  } catch (const json::parse_error&) {
    return json::object();
  }
}

void write_json(const fs::path& p, const json& j) {
  fs::create_directories(p.parent_path());
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(2) << "\n";
  }
  fs::rename(tmp, p);
}

std::mutex io_mutex;

/// Merges blocks into certificates/<region>.json and refreshes summary.json.
void record(const Settings& s, const std::string& region, const std::map<std::string, Block>& blocks) {
  std::lock_guard<std::mutex> lock(io_mutex);
  const fs::path dir(s.out_dir);
  const fs::path file = dir / (region + ".json");
  json cert = read_json(file);
  cert["region"] = region;
  for (const char* name : {"solver", "recognition", "exact", "groebner", "groups"})
    if (!cert.contains(name)) cert[name] = skipped_block("not run");
  for (const auto& [name, b] : blocks) {
    json data = b.data;
    data["ok"] = b.ok;
    if (b.budget_exhausted) data["budget_exhausted"] = true;
    cert[name] = data;
    if (data.contains("seconds")) cert["timings"][name] = data["seconds"];
  }
  write_json(file, cert);

  json summary = json::object();
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string stem = entry.path().stem().string();
    if (entry.path().extension() != ".json" || stem == "summary" || stem == "report") continue;
    const json c = read_json(entry.path());
    json row = json::object();
    for (const auto& [k, v] : c.items())
      if (v.is_object() && v.contains("ok")) row[k] = v["ok"];
      else if (v.is_object() && v.value("status", "") == "skipped") row[k] = "skipped";
    summary[stem] = row;
  }
  write_json(dir / "summary.json", summary);
}

void say(const std::string& line) {
  std::lock_guard<std::mutex> lock(io_mutex);
  std::cout << line << std::endl;
}

std::string status(const Block& b) { return b.ok ? "ok" : (b.budget_exhausted ? "budget exhausted" : "FAILED"); }

int exit_code(const std::vector<Block>& blocks) {
  bool failed = false, budget = false;
  for (const auto& b : blocks) {
    if (b.ok) continue;
    if (b.budget_exhausted) budget = true;
    else failed = true;
  }
  return failed ? kExitCheckFailed : (budget ? kExitBudget : kExitOk);
}

int cmd_solve(const Catalog& cat, const Settings& s) {
  const RegionRecord& r = cat.region(s.region);
  const Block b = solve_block(r, s.opt);
  record(s, r.name, {{"solver", b}});
  if (b.data.value("status", "") == "error") {
    std::cerr << "solve " << r.name << ": " << b.data["error"].get<std::string>() << "\n";
    return kExitCheckFailed;
  }
  say("solve " + r.name + ": " + status(b) + "  residual " + b.data["residual"].get<std::string>() + "  L'=" +
      b.data["params"]["Lp"].get<std::string>() + "  D'=" + b.data["params"]["Dp"].get<std::string>() +
      "  R'=" + b.data["params"]["Rp"].get<std::string>());
  return b.ok ? kExitOk : kExitCheckFailed;
}

/// Solve → recognize → exact, or exact on the catalog data.
std::map<std::string, Block> verify_blocks(const RegionRecord& r, const Settings& s) {
  std::map<std::string, Block> blocks;
  if (s.opt.from_catalog) {
    blocks["exact"] = exact_block(r, r.group, s.opt);
    blocks["exact"].data["source"] = "catalog";
  } else {
    std::optional<NewtonResult> solved;
    blocks["solver"] = solve_block(r, s.opt, &solved);
    std::optional<Recognition> rec;
    if (solved) blocks["recognition"] = recognition_block(r, *solved, s.opt, &rec);
    if (rec) {
      blocks["exact"] = exact_block(r, rec->group, s.opt);
      blocks["exact"].data["source"] = "recognized";
    } else {
      Block skipped;
      skipped.data = skipped_block("recognition did not produce group data");
      blocks["exact"] = skipped;
    }
  }
  if (r.printed) blocks["printed_row"] = printed_row_block(r, s.opt);
  return blocks;
}

int cmd_verify(const Catalog& cat, const Settings& s) {
  const RegionRecord& r = cat.region(s.region);
  std::map<std::string, Block> blocks = verify_blocks(r, s);
  record(s, r.name, blocks);
  int code = kExitOk;
  for (const char* name : {"solver", "recognition", "exact"}) {
    auto it = blocks.find(name);
    if (it == blocks.end()) continue;
    say("verify " + r.name + " " + name + ": " + status(it->second));
    if (!it->second.ok) {
      std::string what = it->second.data.value("failed_check", std::string(name));
      if (it->second.data.contains("error")) what += " (" + it->second.data["error"].get<std::string>() + ")";
      else if (it->second.data.contains("relators") && it->second.data["relators"].contains("error"))
        what += " (" + it->second.data["relators"]["error"].get<std::string>() + ")";
      std::cerr << "verify " << r.name << ": failed check: " << what << "\n";
      code = kExitCheckFailed;
    }
  }
  if (blocks["exact"].ok) {
    const json& e = blocks["exact"].data;
    say("  relator signs " + e["relators"]["signs"].dump() + ", itf " + e["itf"].value("minpoly", "?") +
        " (table " + e["itf"].value("table_minpoly", "?") + ")");
  }
  if (r.printed) say("  printed row: " + status(blocks["printed_row"]) + " (reported, not gating)");
  return code;
}

int cmd_uniqueness(const Catalog& cat, const Settings& s) {
  const RegionRecord& r = cat.region(s.region);
  const Block b = groebner_block(r, s.opt);
  record(s, r.name, {{"groebner", b}});
  if (b.data.contains("orders")) {
    for (const auto& [order, o] : b.data["orders"].items()) {
      std::string line = "uniqueness " + r.name + " " + order + ": " + o["budget_status"].get<std::string>();
      if (o.contains("solution_count")) line += ", count " + std::to_string(o["solution_count"].get<long>());
      if (o.contains("printed_factors_divide"))
        line += std::string(", printed factors ") + (o["printed_factors_divide"].get<bool>() ? "divide" : "DO NOT divide");
      say(line);
    }
  }
  if (b.data.contains("timeout_path")) {
    const json& t = b.data["timeout_path"];
    say("  timeout path: value/radius " + t["mvt"]["value_over_radius"].dump() + ", gradient bound " +
        t["mvt"]["gradient_bound"].dump() + ", " + (t["ok"].get<bool>() ? "excluded" : "NOT excluded"));
  }
  if (b.data.value("status", "") == "error") {
    std::cerr << "uniqueness " << r.name << ": " << b.data["error"].get<std::string>() << "\n";
    return kExitCheckFailed;
  }
  if (b.ok) return b.budget_exhausted ? kExitBudget : kExitOk;
  return b.budget_exhausted ? kExitBudget : kExitCheckFailed;
}

int cmd_groups(const Catalog& cat, const Settings& s) {
  const RegionRecord& r = cat.region(s.region);
  const Block b = groups_block(r, cat);
  record(s, r.name, {{"groups", b}});
  say("groups " + r.name + ": " + status(b) + "  H1 " + b.data.value("h1_marked_group", json::array()).dump());
  if (b.data.contains("map")) say("  map " + b.data["map"].dump());
  if (b.data.contains("cover_chain")) {
    const json& c = b.data["cover_chain"];
    say("  nu kills s1..s3: " + std::string(c["nu"]["ok"].get<bool>() ? "yes" : "no") + ", ker mu H1 " +
        c["ker_mu"]["h1_from_derived_N"].dump() + " vs G " + c["ker_mu"]["h1_G"].dump());
  }
  return b.ok ? kExitOk : kExitCheckFailed;
}

int cmd_report(const Catalog& cat, const Settings& s) {
  std::vector<const RegionRecord*> todo;
  for (const auto& r : cat.regions)
    if (s.all || r.name == s.region) todo.push_back(&r);
  if (todo.empty()) throw std::invalid_argument("report: give a region or --all");
  std::vector<std::vector<Block>> results(todo.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < todo.size(); i = next++) {
      const RegionRecord& r = *todo[i];
      std::map<std::string, Block> blocks = verify_blocks(r, s);
      blocks["groebner"] = groebner_block(r, s.opt);
      blocks["groups"] = groups_block(r, cat);
      record(s, r.name, blocks);
      std::string line = "report " + r.name + ":";
      for (const auto& [name, b] : blocks) {
        if (name == "printed_row") continue;
        line += " " + name + "=" + status(b);
        results[i].push_back(b);
      }
      say(line);
    }
  };
  std::vector<std::thread> pool;
  const int jobs = std::max(1, std::min<int>(s.jobs, static_cast<int>(todo.size())));
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  json report = json::object();
  for (const auto* r : todo) report[r->name] = read_json(fs::path(s.out_dir) / (r->name + ".json"));
  write_json(fs::path(s.out_dir) / "report.json", report);
  say("wrote " + (fs::path(s.out_dir) / "report.json").string());
  std::vector<Block> flat;
  for (auto& v : results) flat.insert(flat.end(), v.begin(), v.end());
  return exit_code(flat);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruct and certify the exceptional regions"};
  app.require_subcommand(1);
  Settings s;
  s.catalog_path = default_catalog();
  app.add_option("--catalog", s.catalog_path, "catalog JSON (default: $EXREG_CATALOG or the bundled one)");
  app.add_option("--out", s.out_dir, "certificate directory")->capture_default_str();
  app.add_option("--jobs", s.jobs, "regions run concurrently by report")->check(CLI::PositiveNumber);

  auto region_arg = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("region", s.region, "region name, e.g. X0");
    if (required) o->required();
  };
  auto digits_opt = [&](CLI::App* c) {
    c->add_option("--digits", s.opt.digits, "working precision in decimal digits")
        ->capture_default_str()
        ->check(CLI::Range(30, 2000));
  };
  auto budget_opt = [&](CLI::App* c) {
    c->add_option("--budget", s.opt.budget_seconds, "seconds per Groebner run")->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Newton iteration from the box midpoint");
  region_arg(solve, true);
  digits_opt(solve);

  auto* verify = app.add_subcommand("verify", "recognize and verify exactly over Q(z)");
  region_arg(verify, true);
  digits_opt(verify);
  verify->add_flag("--from-catalog", s.opt.from_catalog, "use the catalog field data instead of solving");

  std::vector<std::string> orders;
  auto* uniq = app.add_subcommand("uniqueness", "Groebner basis uniqueness certificate");
  region_arg(uniq, true);
  budget_opt(uniq);
  uniq->add_option("--order", orders, "variable order (repeatable)")->check(CLI::IsMember({"zrqp", "zrpq", "zpqr"}));

  auto* groups = app.add_subcommand("groups", "abelianizations and homomorphism checks");
  region_arg(groups, true);

  auto* report = app.add_subcommand("report", "run every block and merge the certificates");
  region_arg(report, false);
  report->add_flag("--all", s.all, "all regions in the catalog");
  digits_opt(report);
  budget_opt(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!orders.empty()) s.opt.orders = orders;

  Catalog cat;
  try {
    cat = load_catalog(s.catalog_path);
  } catch (const std::exception& e) {
    std::cerr << "exreg: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!s.region.empty() && !cat.has_region(s.region)) {
    std::cerr << "exreg: unknown region '" << s.region << "'\n";
    return kExitUsage;
  }
  try {
    if (*solve) return cmd_solve(cat, s);
    if (*verify) return cmd_verify(cat, s);
    if (*uniq) return cmd_uniqueness(cat, s);
    if (*groups) return cmd_groups(cat, s);
    if (*report) {
      if (!s.all && s.region.empty()) {
        std::cerr << "exreg report: give a region or --all\n";
        return kExitUsage;
      }
      return cmd_report(cat, s);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "exreg: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "exreg: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
