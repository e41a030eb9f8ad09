#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcx/cli/report.hpp"
#include "gcx/cli/suites.hpp"

using gcx::cli::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr std::uint64_t kDefaultSeed = 20240611;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

// "4..8", "4,6,8" or "5"; several tokens are concatenated.
std::vector<int> parse_ints(const std::vector<std::string>& tokens) {
  std::vector<int> out;
  for (const auto& tok : tokens) {
    std::stringstream ss(tok);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      auto dots = part.find("..");
      if (dots == std::string::npos) {
        out.push_back(parse_int(part));
        continue;
      }
      int lo = parse_int(part.substr(0, dots)), hi = parse_int(part.substr(dots + 2));
      if (lo > hi) throw UsageError("empty range '" + part + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  return out;
}

// "1,2 1,3": one pair per token.
std::vector<std::pair<int, int>> parse_pairs(const std::vector<std::string>& tokens) {
  std::vector<std::pair<int, int>> out;
  for (const auto& tok : tokens) {
    auto comma = tok.find(',');
    if (comma == std::string::npos) throw UsageError("expected a pair 'a,b', got '" + tok + "'");
    out.push_back({parse_int(tok.substr(0, comma)), parse_int(tok.substr(comma + 1))});
  }
  return out;
}

struct Global {
  std::string format = "json";
  std::string output;
  std::string cache_dir;
  bool no_cache = false;
  std::uint64_t seed = kDefaultSeed;
  std::string mode = "modular";
  int workers = 1;
  int edge_cap = 12;
  bool truncate = false;
  double max_generators = gcx::FeasibilityBounds{}.max_generators;
  double max_lie_generators = gcx::FeasibilityBounds{}.max_lie_generators;
};

gcx::cli::SuiteOptions suite_options(const Global& gl) {
  gcx::cli::SuiteOptions o;
  o.rank_mode = gl.mode == "exact" ? gcx::RankMode::ExactRational : gcx::RankMode::ModularVerified;
  o.workers = gl.workers;
  o.bounds.edge_cap = gl.edge_cap;
  o.bounds.truncate = gl.truncate;
  o.bounds.max_generators = gl.max_generators;
  o.bounds.max_lie_generators = gl.max_lie_generators;
  o.cache_dir = gl.cache_dir;
  o.use_cache = !gl.no_cache;
  return o;
}

json base_config(const Global& gl, const std::string& command) {
  json c;
  c["command"] = command;
  c["mode"] = gl.mode == "exact" ? "ExactRational" : "ModularVerified";
  c["seed"] = gl.seed;
  c["primes"] = gcx::session_primes();
  c["workers"] = gl.workers;
  c["edge_cap"] = gl.edge_cap;
  c["truncate"] = gl.truncate;
  c["cache"] = gl.no_cache ? "off" : gcx::cache_directory(gl.cache_dir).string();
  return c;
}

void emit(const Global& gl, const gcx::cli::Report& r) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!gl.output.empty()) {
    file.open(gl.output);
    if (!file) throw UsageError("cannot write " + gl.output);
    os = &file;
  }
  if (gl.format == "csv")
    gcx::cli::write_csv(*os, r);
  else
    *os << r.to_json().dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph complex computations and verification suites"};
  app.require_subcommand(1);
  app.fallthrough();
  Global gl;
  app.add_option("--format", gl.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", gl.output, "Write the report to a file instead of stdout");
  app.add_option("--cache-dir", gl.cache_dir, "Cache directory (default: $GCX_CACHE_DIR, then ./.gcx-cache)");
  app.add_flag("--no-cache", gl.no_cache, "Neither read nor write cached complexes");
  app.add_option("--seed", gl.seed, "Seed for the modular primes")->capture_default_str();
  app.add_option("--mode", gl.mode, "Rank computation")->check(CLI::IsMember({"exact", "modular"}))->capture_default_str();
  app.add_option("--workers", gl.workers, "Parallel cases")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--edge-cap", gl.edge_cap, "Refuse types with graphs above this edge count")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--truncate", gl.truncate, "Build complexes up to the edge cap instead of refusing");
  app.add_option("--max-generators", gl.max_generators, "Generator budget for commutative sectors")->capture_default_str();
  app.add_option("--max-lie-generators", gl.max_lie_generators, "Generator budget for the Lie sector")->capture_default_str();

  auto* en = app.add_subcommand("enumerate", "Count isomorphism classes of stable graphs");
  std::vector<std::string> en_g{"0"}, en_n{"3"};
  bool no_tadpoles = false, no_genus = false, unlabeled = false;
  en->add_option("--g", en_g, "Genus or range")->expected(1, -1);
  en->add_option("--n", en_n, "Leg count or range")->expected(1, -1);
  en->add_flag("--no-tadpoles", no_tadpoles, "Exclude graphs with tadpoles");
  en->add_flag("--no-genus", no_genus, "Exclude vertices of positive genus");
  en->add_flag("--unlabeled", unlabeled, "Count with interchangeable legs");

  auto* ho = app.add_subcommand("homology", "Homology dimensions of a sector complex");
  std::string sector = "com-bar";
  int hg = 0, hn = 3;
  bool anti = false;
  ho->add_option("--sector", sector, "Sector")->check(CLI::IsMember({"com-bar", "com", "lie", "gc2"}))->capture_default_str();
  ho->add_option("--g", hg, "Genus")->required();
  ho->add_option("--n", hn, "Leg count")->required();
  ho->add_flag("--anti", anti, "Anti-invariants (legs interchangeable with the sign character)");

  auto* ve = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  std::vector<std::string> v_n, v_cases, v_pairs, v_bracket, v_sectors, v_g;
  int dsq_cap = 10;
  std::size_t lie_assignments = gcx::cli::SuiteOptions{}.dsq_lie_assignments;
  ve->add_option("--suite", suite, "Suite")->required()->check(CLI::IsMember(gcx::cli::suite_names()));
  ve->add_option("--n", v_n, "Leg counts (genus1, genus2-anti, theta, identity, dsq)")->expected(1, -1);
  ve->add_option("--g", v_g, "Genera (dsq)")->expected(1, -1);
  ve->add_option("--cases", v_cases, "Types g,n (eggs, support)")->expected(1, -1);
  ve->add_option("--pairs", v_pairs, "Index pairs r,s (nu)")->expected(1, -1);
  ve->add_option("--bracket-n", v_bracket, "Even n for the bracket report (nu)")->expected(1, -1);
  ve->add_option("--sectors", v_sectors, "Sectors (dsq)")->expected(1, -1);
  ve->add_option("--dsq-edge-cap", dsq_cap, "Edge cap of the d^2 grid")->capture_default_str();
  ve->add_option("--lie-assignments", lie_assignments, "Sampled endpoint words per edge pair in large Lie cells (0: all)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    gcx::seed_session_primes(gl.seed);
    gcx::cli::Report report;

    if (*en) {
      auto gs = parse_ints(en_g), ns = parse_ints(en_n);
      report.config = base_config(gl, "enumerate");
      report.config["params"] = {{"g", gs}, {"n", ns}, {"tadpoles", !no_tadpoles}, {"genus", !no_genus},
                                 {"legs", unlabeled ? "unlabeled" : "labeled"}};
      bool single = gs.size() == 1 && ns.size() == 1;
      gcx::GraphConstraints cons{!no_tadpoles, !no_genus};
      for (int g : gs)
        for (int n : ns) {
          if (!gcx::is_stable_type(g, n)) {
            if (single) throw std::invalid_argument("unstable type");
            continue;
          }
          int top = gcx::max_edges_for_type(g, n);
          if (top > gl.edge_cap && !gl.truncate)
            throw gcx::InfeasibleRequest("(g,n)=(" + std::to_string(g) + "," + std::to_string(n) + ") has graphs with " +
                                         std::to_string(top) + " edges, above the edge cap " + std::to_string(gl.edge_cap));
        }
      for (int g : gs)
        for (int n : ns) {
          if (!gcx::is_stable_type(g, n)) continue;
          int cap = gcx::max_edges_for_type(g, n) > gl.edge_cap ? gl.edge_cap : -1;
          auto levels = gcx::enumerate_graphs_by_edges(g, n, cons, unlabeled ? gcx::LegMode::Unlabeled : gcx::LegMode::Labeled, cap);
          gcx::cli::Case c;
          c.id = "enumerate g=" + std::to_string(g) + " n=" + std::to_string(n);
          c.inputs = {{"g", g}, {"n", n}, {"tadpoles", !no_tadpoles}, {"genus", !no_genus}};
          std::size_t total = 0;
          json by = json::object();
          for (std::size_t k = 0; k < levels.size(); ++k) {
            total += levels[k].size();
            if (!levels[k].empty()) by[std::to_string(k)] = levels[k].size();
          }
          c.computed = {{"count", total}, {"by_edges", by}, {"truncated", cap >= 0}};
          c.status = "info";
          report.cases.push_back(std::move(c));
        }
      emit(gl, report);
      return kExitPass;
    }

    if (*ho) {
      auto s = gcx::parse_sector(sector);
      auto opt = suite_options(gl);
      int cap = gcx::feasible_edge_cap(s, hg, hn, anti, opt.bounds);
      report.config = base_config(gl, "homology");
      report.config["params"] = {{"sector", sector}, {"g", hg}, {"n", hn}, {"anti", anti}};
      auto cx = gcx::load_or_build(s, hg, hn, anti, cap, opt.cache_dir, opt.use_cache);
      auto h = gcx::homology_dims(cx, opt.rank_mode);
      gcx::cli::Case c;
      c.id = "homology " + sector + " g=" + std::to_string(hg) + " n=" + std::to_string(hn) + (anti ? " anti" : "");
      c.inputs = {{"sector", sector}, {"g", hg}, {"n", hn}, {"anti", anti}, {"edge_cap", cap}};
      c.computed["chain_dims"] = gcx::cli::detail::dims_json(gcx::chain_dims(cx));
      c.computed["euler_characteristic"] = gcx::euler_characteristic(gcx::chain_dims(cx));
      if (s == gcx::Sector::Lie) {
        auto cal = gcx::calibrate_lie_degrees();
        std::map<int, std::size_t> gamma;
        for (const auto& [e, d] : h)
          if (d) gamma[cal.gamma_degree(e, hg, hn)] += d;
        c.computed["degree"] = "gamma";
        c.computed["calibration"] = cal.describe();
        c.computed["homology"] = gcx::cli::detail::dims_json(gamma);
        c.computed["homology_by_edges"] = gcx::cli::detail::dims_json(h);
      } else {
        std::map<int, std::size_t> shifted;
        for (const auto& [e, d] : h)
          if (d) shifted[gcx::reported_degree(cx, e)] += d;
        c.computed["degree"] = cx.meta.degree_convention;
        c.computed["homology"] = gcx::cli::detail::dims_json(shifted);
      }
      c.status = "info";
      report.cases.push_back(std::move(c));
      emit(gl, report);
      return kExitPass;
    }

    auto opt = suite_options(gl);
    json params = {{"suite", suite}};
    if (!v_n.empty()) {
      auto ns = parse_ints(v_n);
      params["n"] = ns;
      if (suite == "genus1") opt.genus1_n = ns;
      if (suite == "genus2-anti") opt.genus2_n = ns;
      if (suite == "identity") opt.identity_n = ns;
      if (suite == "theta") {
        opt.theta_n = ns;
        opt.theta_dims_n.clear();
        for (int n : ns)
          if (n % 2 == 0) opt.theta_dims_n.push_back(n);
      }
    }
    if (!v_cases.empty()) {
      auto cs = parse_pairs(v_cases);
      params["cases"] = cs;
      if (suite == "eggs") opt.egg_cases = cs;
      if (suite == "support") opt.support_cases = cs;
    }
    if (!v_pairs.empty()) {
      opt.nu_pairs = parse_pairs(v_pairs);
      params["pairs"] = opt.nu_pairs;
    }
    if (!v_bracket.empty()) {
      opt.bracket_n = parse_ints(v_bracket);
      params["bracket_n"] = opt.bracket_n;
    }
    if (suite == "dsq") {
      opt.dsq_edge_cap = dsq_cap;
      opt.dsq_lie_assignments = lie_assignments;
      params["dsq_edge_cap"] = dsq_cap;
      params["lie_assignments"] = lie_assignments;
      if (!v_sectors.empty() || !v_g.empty() || !v_n.empty()) {
        std::vector<gcx::Sector> sectors;
        for (const auto& s : v_sectors) sectors.push_back(gcx::parse_sector(s));
        std::vector<gcx::cli::Cell> cells;
        for (const auto& cell : gcx::cli::default_dsq_grid()) {
          bool keep = (sectors.empty() || std::find(sectors.begin(), sectors.end(), cell.sector) != sectors.end());
          if (!v_g.empty()) {
            auto gs = parse_ints(v_g);
            keep = keep && std::find(gs.begin(), gs.end(), cell.g) != gs.end();
          }
          if (!v_n.empty()) {
            auto ns = parse_ints(v_n);
            keep = keep && std::find(ns.begin(), ns.end(), cell.n) != ns.end();
          }
          if (keep) cells.push_back(cell);
        }
        opt.dsq_cells = cells;
        if (!v_sectors.empty()) params["sectors"] = v_sectors;
        if (!v_g.empty()) params["g"] = parse_ints(v_g);
      }
    }
    report.config = base_config(gl, "verify");
    report.config["params"] = params;
    report.cases = gcx::cli::run_suite(suite, opt);
    emit(gl, report);
    return report.failed() ? kExitFail : kExitPass;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gcx::InfeasibleRequest& e) {
    std::cerr << "error: infeasible request: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gcx::DifferentialSquareError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
