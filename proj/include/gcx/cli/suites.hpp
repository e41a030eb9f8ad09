#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "gcx/cli/report.hpp"
#include "gcx/complex/cache.hpp"
#include "gcx/complex/feasibility.hpp"
#include "gcx/complex/local_check.hpp"
#include "gcx/complex/operations.hpp"
#include "gcx/grt/grt.hpp"
#include "gcx/theta/theta.hpp"

namespace gcx::cli {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"dsq", "eggs", "support", "genus1", "genus2-anti", "theta", "nu", "identity"};
  return names;
}

struct Cell {
  Sector sector;
  int g;
  int n;
};

// Sectors × (g ≤ 2, n ≤ 8), plus (3,0) and (3,1) for com-bar and gc2.
inline std::vector<Cell> default_dsq_grid() {
  std::vector<Cell> out;
  for (Sector s : {Sector::ComBar, Sector::Com, Sector::Lie, Sector::GC2}) {
    for (int g = 0; g <= 2; ++g)
      for (int n = 0; n <= 8; ++n) {
        if (!is_stable_type(g, n) || (s == Sector::GC2 && g < 1)) continue;
        out.push_back({s, g, n});
      }
    if (s == Sector::ComBar || s == Sector::GC2) {
      out.push_back({s, 3, 0});
      out.push_back({s, 3, 1});
    }
  }
  return out;
}

struct SuiteOptions {
  RankMode rank_mode = RankMode::ModularVerified;
  int workers = 1;
  FeasibilityBounds bounds;
  std::string cache_dir;
  bool use_cache = true;

  std::vector<Cell> dsq_cells = default_dsq_grid();
  int dsq_edge_cap = 10;
  double dsq_assembly_budget = 50000;      // commutative generators assembled in full
  double dsq_lie_assembly_budget = 40000;  // Lie generators assembled in full
  std::size_t dsq_lie_assignments = 16;    // sampled endpoint words per edge pair above the budget
  int dsq_relabelings = 1;
  std::uint64_t dsq_seed = 20240611;

  std::vector<std::pair<int, int>> egg_cases{{1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 0}, {2, 1}, {2, 2}, {2, 3}};
  std::vector<std::pair<int, int>> support_cases{{1, 3}, {1, 4}, {2, 2}};
  std::vector<int> genus1_n{3, 4, 5, 6};
  std::vector<int> genus2_n{4, 6};
  std::vector<int> theta_n{4, 5, 6};
  std::vector<int> theta_dims_n{4, 6, 8, 10};
  bool theta_relation = true;
  std::vector<std::pair<int, int>> nu_pairs{{5, 3}, {7, 3}, {7, 5}};
  std::vector<int> bracket_n{4, 6, 8, 10};
  std::vector<int> identity_n{4, 6};
};

namespace detail {

inline json dims_json(const std::map<int, std::size_t>& m, bool nonzero_only = true) {
  json j = json::object();
  for (const auto& [k, d] : m)
    if (d || !nonzero_only) j[std::to_string(k)] = d;
  return j;
}

inline std::string q(const Rational& x) { return x.get_str(); }

inline json vector_json(const RationalVector& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(q(x));
  return j;
}

// Runs fn(0..count-1) on `workers` threads; results are stored by index by the caller.
inline void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers && static_cast<std::size_t>(w) < count; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline json cell_inputs(Sector s, int g, int n, bool anti) {
  return {{"sector", sector_name(s)}, {"g", g}, {"n", n}, {"anti", anti}};
}

class Context {
 public:
  explicit Context(const SuiteOptions& o) : opt(o) {}

  const SuiteOptions& opt;

  // Pre-flight check; returns the edge cap to build with.
  int plan(Sector s, int g, int n, bool anti) const { return feasible_edge_cap(s, g, n, anti, opt.bounds); }

  ChainComplexData complex(Sector s, int g, int n, bool anti, int cap) const {
    return load_or_build(s, g, n, anti, cap, opt.cache_dir, opt.use_cache);
  }

  std::map<int, std::size_t> homology(const ChainComplexData& c) const { return homology_dims(c, opt.rank_mode); }

  const DegreeCalibration& calibration() {
    std::call_once(cal_once_, [&] { cal_ = calibrate_lie_degrees(); });
    return cal_;
  }

 private:
  std::once_flag cal_once_;
  DegreeCalibration cal_;
};

inline std::vector<Case> run_dsq(Context& ctx) {
  const auto& o = ctx.opt;
  if (o.dsq_edge_cap > o.bounds.edge_cap)
    throw InfeasibleRequest("dsq edge cap " + std::to_string(o.dsq_edge_cap) + " exceeds the cap " +
                            std::to_string(o.bounds.edge_cap));
  std::vector<Case> cases(o.dsq_cells.size());
  parallel_for(o.dsq_cells.size(), o.workers, [&](std::size_t i) {
    auto [s, g, n] = o.dsq_cells[i];
    Case c;
    c.id = "dsq " + sector_name(s) + " g=" + std::to_string(g) + " n=" + std::to_string(n);
    c.inputs = cell_inputs(s, g, n, false);
    c.inputs["edge_cap"] = o.dsq_edge_cap;
    c.expected = {{"d_squared", "zero"}};
    auto est = estimate_size(s, g, n, false, o.dsq_edge_cap);
    bool full = est.generators <= (s == Sector::Lie ? o.dsq_lie_assembly_budget : o.dsq_assembly_budget);
    bool ok = true;
    std::string failure;
    if (full) {
      try {
        auto cx = build_sector(s, g, n, false, o.dsq_edge_cap);
        c.computed["assembled_generators"] = cx.total_dim();
      } catch (const DifferentialSquareError& e) {
        ok = false;
        failure = e.what();
      }
    }
    auto lr = local_square_check(s, g, n, false, o.dsq_edge_cap, o.dsq_relabelings, o.dsq_seed,
                                 full ? 0 : o.dsq_lie_assignments);
    c.computed["method"] = full ? "assembly+local" : "local";
    c.computed["shapes"] = lr.shapes;
    c.computed["representatives"] = lr.representatives;
    c.computed["edge_pairs"] = lr.pairs;
    c.computed["term_pairs"] = lr.terms;
    if (!lr.ok) {
      ok = false;
      if (failure.empty()) failure = lr.failure;
    }
    c.computed["d_squared"] = ok ? "zero" : "nonzero";
    if (!ok) c.computed["failure"] = failure;
    c.status = pass_fail(ok);
    cases[i] = std::move(c);
  });
  return cases;
}

inline std::vector<Case> run_eggs(Context& ctx) {
  const auto& o = ctx.opt;
  std::vector<int> caps;
  for (auto [g, n] : o.egg_cases) caps.push_back(ctx.plan(Sector::ComBar, g, n, false));
  std::vector<Case> cases(o.egg_cases.size());
  parallel_for(o.egg_cases.size(), o.workers, [&](std::size_t i) {
    auto [g, n] = o.egg_cases[i];
    Case c;
    c.id = "eggs g=" + std::to_string(g) + " n=" + std::to_string(n);
    c.inputs = {{"g", g}, {"n", n}};
    c.expected = {{"homology", json::object()}};
    auto z = egg_subcomplex(ctx.complex(Sector::ComBar, g, n, false, caps[i]));
    auto h = ctx.homology(z);
    c.computed["chain_dims"] = dims_json(chain_dims(z));
    c.computed["homology"] = dims_json(h);
    c.status = pass_fail(c.computed["homology"].empty() && z.total_dim() > 0);
    cases[i] = std::move(c);
  });
  return cases;
}

inline std::vector<Case> run_support(Context& ctx) {
  const auto& o = ctx.opt;
  std::set<std::pair<int, int>> types;
  for (auto [g, n] : o.support_cases) {
    if (!is_stable_type(g, n)) throw std::invalid_argument("unstable type");
    for (const auto& t : vertex_types(g, n)) types.insert(t);
    types.insert({g, n});
  }
  std::vector<std::pair<int, int>> tv(types.begin(), types.end());
  std::vector<int> caps;
  for (auto [g, n] : tv) caps.push_back(ctx.plan(Sector::Lie, g, n, false));
  const auto& cal = ctx.calibration();
  std::vector<std::map<int, std::size_t>> gamma(tv.size());
  parallel_for(tv.size(), o.workers, [&](std::size_t i) {
    auto c = ctx.complex(Sector::Lie, tv[i].first, tv[i].second, false, caps[i]);
    std::map<int, std::size_t> h;
    for (const auto& [e, d] : ctx.homology(c))
      if (d) h[cal.gamma_degree(e, tv[i].first, tv[i].second)] += d;
    gamma[i] = std::move(h);
  });
  GammaDims gd;
  for (std::size_t i = 0; i < tv.size(); ++i) gd[tv[i]] = gamma[i];
  std::vector<Case> cases;
  for (auto [g, n] : o.support_cases) {
    auto table = bigraded_support(g, n, gd);
    int top = 2 * g + n - 3, diag = 3 * g + n - 3;
    json support = json::array();
    for (const auto& [rs, d] : table)
      if (d) support.push_back({rs.first, rs.second, d});
    auto violations = [&](auto pred) {
      json bad = json::array();
      for (const auto& [rs, d] : table)
        if (d && pred(rs.first, rs.second)) bad.push_back({rs.first, rs.second, d});
      return bad;
    };
    auto add = [&](const std::string& tag, const std::string& statement, json bad) {
      Case c;
      c.id = "support g=" + std::to_string(g) + " n=" + std::to_string(n) + " " + tag;
      c.inputs = {{"g", g}, {"n", n}, {"statement", statement}};
      c.expected = {{"nonzero_entries", json::array()}};
      c.computed = {{"nonzero_entries", bad}};
      c.status = pass_fail(bad.empty());
      cases.push_back(std::move(c));
    };
    add("I", "zero if s > 2g+n-3", violations([&](int, int s) { return s > top; }));
    add("II", "zero if s = 2g+n-3 and r != 0", violations([&](int r, int s) { return s == top && r != 0; }));
    {
      Case c;
      c.id = "support g=" + std::to_string(g) + " n=" + std::to_string(n) + " III";
      c.inputs = {{"g", g}, {"n", n}, {"statement", "entry (0, 2g+n-3) is H_{2g+n-3}(Gamma_{g,n})"}};
      const auto& h = gd.at({g, n});
      std::size_t want = h.count(top) ? h.at(top) : 0;
      std::size_t got = table.count({0, top}) ? table.at({0, top}) : 0;
      c.expected = {{"dim", want}};
      c.computed = {{"dim", got}, {"table", support}};
      c.status = pass_fail(want == got);
      cases.push_back(std::move(c));
    }
    add("IV", "zero if r+s > 3g+n-3", violations([&](int r, int s) { return r + s > diag; }));
    add("V", "zero if r+s >= 3g+n-3 and s != 0", violations([&](int r, int s) { return r + s >= diag && s != 0; }));
  }
  return cases;
}

inline std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

inline std::vector<Case> run_genus1(Context& ctx) {
  const auto& o = ctx.opt;
  std::vector<int> caps;
  for (int n : o.genus1_n) caps.push_back(ctx.plan(Sector::Lie, 1, n, false));
  const auto& cal = ctx.calibration();
  std::vector<std::map<int, std::size_t>> by_edges(o.genus1_n.size());
  parallel_for(o.genus1_n.size(), o.workers, [&](std::size_t i) {
    by_edges[i] = ctx.homology(ctx.complex(Sector::Lie, 1, o.genus1_n[i], false, caps[i]));
  });
  auto pattern = [](int n) {
    std::map<int, std::size_t> p;
    for (int i = 0; i <= n - 1; i += 2) p[i] = binomial(n - 1, i);
    return p;
  };
  auto shifted = [&](std::size_t i, int t) {
    std::map<int, std::size_t> out;
    for (const auto& [e, d] : by_edges[i])
      if (d) out[cal.gamma_degree(e, 1, o.genus1_n[i]) + t] += d;
    return out;
  };
  std::vector<Case> cases;
  for (std::size_t i = 0; i < o.genus1_n.size(); ++i) {
    int n = o.genus1_n[i];
    Case c;
    c.id = "genus1 n=" + std::to_string(n);
    c.inputs = {{"g", 1}, {"n", n}, {"calibration", cal.describe()}};
    c.expected = {{"homology", dims_json(pattern(n))}};
    c.computed = {{"homology", dims_json(shifted(i, 0))}, {"homology_by_edges", dims_json(by_edges[i])}};
    c.status = pass_fail(shifted(i, 0) == pattern(n));
    cases.push_back(std::move(c));
  }
  // every constant shift that matches all n at once
  json offsets = json::array();
  int span = 0;
  for (int n : o.genus1_n) span = std::max(span, 3 * n + 6);
  for (int t = -span; t <= span; ++t) {
    bool all = !o.genus1_n.empty();
    for (std::size_t i = 0; i < o.genus1_n.size() && all; ++i) all = shifted(i, t) == pattern(o.genus1_n[i]);
    if (all) offsets.push_back(t);
  }
  Case c;
  c.id = "genus1 common offset";
  c.inputs = {{"n", o.genus1_n}, {"calibration", cal.describe()}};
  c.expected = {{"offsets", json::array({0})}};
  c.computed = {{"offsets", offsets}};
  c.status = pass_fail(offsets == json::array({0}));
  cases.push_back(std::move(c));
  return cases;
}

inline std::size_t alternating_copies(int n) {
  long v = (n - 2) / 4 - n / 6;
  return v > 0 ? static_cast<std::size_t>(v) : 0;
}

inline std::vector<Case> run_genus2_anti(Context& ctx) {
  const auto& o = ctx.opt;
  std::vector<int> caps;
  for (int n : o.genus2_n) caps.push_back(ctx.plan(Sector::Lie, 2, n, true));
  const auto& cal = ctx.calibration();
  std::vector<Case> cases(o.genus2_n.size());
  parallel_for(o.genus2_n.size(), o.workers, [&](std::size_t i) {
    int n = o.genus2_n[i];
    auto cx = ctx.complex(Sector::Lie, 2, n, true, caps[i]);
    std::map<int, std::size_t> h;
    for (const auto& [e, d] : ctx.homology(cx))
      if (d) h[cal.gamma_degree(e, 2, n)] += d;
    std::map<int, std::size_t> want;
    if (alternating_copies(n)) want[n + 1] = alternating_copies(n);
    Case c;
    c.id = "genus2-anti n=" + std::to_string(n);
    c.inputs = {{"g", 2}, {"n", n}, {"degree", n + 1}, {"calibration", cal.describe()}};
    c.expected = {{"homology", dims_json(want)}, {"dim_at_degree", alternating_copies(n)}};
    c.computed = {{"homology", dims_json(h)}, {"dim_at_degree", h.count(n + 1) ? h[n + 1] : 0},
                  {"chain_dims", dims_json(chain_dims(cx))}};
    c.status = pass_fail(h == want);
    cases[i] = std::move(c);
  });
  return cases;
}

inline std::vector<Case> run_theta(Context& ctx) {
  const auto& o = ctx.opt;
  std::vector<int> caps;
  for (int n : o.theta_n) caps.push_back(ctx.plan(Sector::GC2, 2, n, true));
  std::vector<std::pair<Case, Case>> graph_cases(o.theta_n.size());
  parallel_for(o.theta_n.size(), o.workers, [&](std::size_t i) {
    int n = o.theta_n[i];
    auto tc = theta_complex(n);
    auto gc = ctx.complex(Sector::GC2, 2, n, true, caps[i]);
    auto inc = theta_inclusion(tc, gc);
    auto defects = inclusion_chain_map_defects(tc, gc, inc);
    Case a;
    a.id = "theta chain-map n=" + std::to_string(n);
    a.inputs = {{"n", n}};
    a.expected = {{"defects", json::array()}};
    a.computed = {{"defects", defects}, {"theta_generators", [&] {
                                            std::size_t t = 0;
                                            for (const auto& [k, b] : tc.basis) t += b.size();
                                            return t;
                                          }()}};
    a.status = pass_fail(defects.empty());
    auto cmp = inclusion_cohomology_comparison(tc, gc, inc);
    Case b;
    b.id = "theta quasi-iso n=" + std::to_string(n);
    b.inputs = {{"n", n}};
    json deg = json::array(), want = json::array();
    bool ok = true;
    for (const auto& qd : cmp) {
      if (!qd.theta_dim && !qd.graph_dim) continue;
      deg.push_back({{"degree", qd.degree}, {"theta", qd.theta_dim}, {"graph", qd.graph_dim}, {"induced_rank", qd.induced_rank}});
      want.push_back({{"degree", qd.degree}, {"theta", qd.theta_dim}, {"graph", qd.theta_dim}, {"induced_rank", qd.theta_dim}});
      ok = ok && qd.isomorphism();
    }
    b.expected = {{"degrees", want}};
    b.computed = {{"degrees", deg}};
    b.status = pass_fail(ok);
    graph_cases[i] = {std::move(a), std::move(b)};
  });
  std::vector<Case> cases;
  for (auto& [a, b] : graph_cases) cases.push_back(std::move(a));
  for (auto& [a, b] : graph_cases) cases.push_back(std::move(b));
  for (int n : o.theta_dims_n) {
    auto h = theta_cohomology(n);
    std::size_t got = h.count(n + 3) ? h.at(n + 3).dim : 0;
    Case c;
    c.id = "theta H^(n+3) n=" + std::to_string(n);
    c.inputs = {{"n", n}, {"degree", n + 3}};
    c.expected = {{"dim", n / 6}};
    c.computed = {{"dim", got}};
    c.status = pass_fail(got == static_cast<std::size_t>(n / 6));
    cases.push_back(std::move(c));
  }
  if (o.theta_relation) {
    auto tc = theta_complex(10);
    std::vector<ThetaChain> gens{{ThetaElement{0, 2, 8, 0, Rational(1)}}, {ThetaElement{0, 4, 6, 0, Rational(1)}}};
    auto rel = theta_class_relations(tc, gens);
    auto h = theta_cohomology(tc);
    std::size_t dim = h.count(13) ? h.at(13).dim : 0;
    bool nonzero = true;
    for (const auto& gch : gens) nonzero = nonzero && theta_class_relations(tc, std::vector<ThetaChain>{gch}).empty();
    Case c;
    c.id = "theta n=10 relation";
    c.inputs = {{"n", 10}, {"generators", {"[0,2,8]^0", "[0,4,6]^0"}}};
    c.expected = {{"relations", 1}, {"dim", 1}, {"generators_nonzero", true}};
    json rels = json::array();
    for (const auto& v : rel) rels.push_back(vector_json(v));
    c.computed = {{"relations", rel.size()}, {"dim", dim}, {"generators_nonzero", nonzero}, {"relation_vectors", rels}};
    c.status = pass_fail(rel.size() == 1 && dim == 1 && nonzero);
    cases.push_back(std::move(c));
  }
  return cases;
}

inline std::vector<Case> run_nu(Context& ctx) {
  const auto& o = ctx.opt;
  for (auto [r, s] : o.nu_pairs) check_nu_indices(r, s);
  for (int n : o.bracket_n)
    if (n % 2) throw std::invalid_argument("bracket report needs even n");
  std::vector<Case> cases(o.nu_pairs.size() + o.bracket_n.size());
  parallel_for(cases.size(), o.workers, [&](std::size_t i) {
    Case c;
    if (i < o.nu_pairs.size()) {
      auto [r, s] = o.nu_pairs[i];
      auto rep = verify_proposition_chain(r, s);
      c.id = "nu r=" + std::to_string(r) + " s=" + std::to_string(s);
      c.inputs = {{"r", r}, {"s", s}, {"convention", NuConvention{}.name()}};
      json want = json::object(), got = json::object();
      for (int k = 0; k <= s - 2; ++k) want["[" + std::to_string(k) + "," + std::to_string(s - 2 - k) + "," + std::to_string(r) + "]^0"] = q(rep.expected);
      for (const auto& [k, v] : rep.coefficients)
        got["[" + std::to_string(k) + "," + std::to_string(s - 2 - k) + "," + std::to_string(r) + "]^0"] = q(v);
      c.expected = {{"coefficients", want}, {"primitive_identity", true}, {"cohomologous", true}};
      c.computed = {{"coefficients", got}, {"primitive_identity", rep.primitive_identity}, {"cohomologous", rep.cohomologous}};
      c.status = pass_fail(rep.pass());
    } else {
      int n = o.bracket_n[i - o.nu_pairs.size()];
      auto rep = bracket_report(n);
      c.id = "bracket n=" + std::to_string(n);
      c.inputs = {{"n", n}, {"brackets", rep.labels}};
      c.expected = {{"span", rep.expected_span}, {"relations", rep.expected_relations}, {"quotient", rep.expected_quotient}};
      json rn = json::array(), rr = json::array();
      for (const auto& v : rep.relations_nu) rn.push_back(vector_json(v));
      for (const auto& v : rep.relations_rho) rr.push_back(vector_json(v));
      c.computed = {{"span", rep.span_dim},          {"relations", rep.relation_dim}, {"quotient", rep.quotient_dim},
                    {"relations_nu", rn},             {"relations_rho", rr}};
      c.status = pass_fail(rep.pass());
    }
    cases[i] = std::move(c);
  });
  return cases;
}

inline std::vector<Case> run_identity(Context& ctx) {
  const auto& o = ctx.opt;
  std::vector<std::pair<int, int>> caps;
  for (int n : o.identity_n) {
    if (n % 2) throw std::invalid_argument("dimension identity needs even n");
    caps.push_back({ctx.plan(Sector::ComBar, 2, n, true), ctx.plan(Sector::Lie, 2, n, true)});
  }
  const auto& cal = ctx.calibration();
  std::vector<Case> cases(o.identity_n.size());
  parallel_for(o.identity_n.size(), o.workers, [&](std::size_t i) {
    int n = o.identity_n[i];
    auto d = ctx.complex(Sector::ComBar, 2, n, true, caps[i].first);
    auto l = ctx.complex(Sector::Lie, 2, n, true, caps[i].second);
    auto rep = dimension_identity(n, d, l, cal);
    Case c;
    c.id = "identity n=" + std::to_string(n);
    c.inputs = {{"n", n}, {"i", n + 1}, {"delta_degree", n + 3}};
    // the Γ-term counts alternating copies; the Δ-term is the remainder ⌊n/6⌋
    std::size_t want_gamma = alternating_copies(n), want_delta = rep.target - want_gamma;
    c.expected = {{"delta_term", want_delta},
                  {"gamma_term", want_gamma},
                  {"sum", rep.target},
                  {"other_degrees_vanish", true}};
    c.computed = {{"delta_term", rep.delta_term},
                  {"gamma_term", rep.gamma_term},
                  {"sum", rep.delta_term + rep.gamma_term},
                  {"other_degrees_vanish", rep.other_degrees_vanish}};
    c.status = pass_fail(rep.pass() && rep.delta_term == want_delta && rep.gamma_term == want_gamma);
    cases[i] = std::move(c);
  });
  return cases;
}

}  // namespace detail

/**
 * Runs one verification suite. Feasibility is checked for every case before
 * any complex is built; InfeasibleRequest and std::invalid_argument signal
 * requests to refuse.
 */
inline std::vector<Case> run_suite(const std::string& suite, const SuiteOptions& opt) {
  detail::Context ctx(opt);
  if (suite == "dsq") return detail::run_dsq(ctx);
  if (suite == "eggs") return detail::run_eggs(ctx);
  if (suite == "support") return detail::run_support(ctx);
  if (suite == "genus1") return detail::run_genus1(ctx);
  if (suite == "genus2-anti") return detail::run_genus2_anti(ctx);
  if (suite == "theta") return detail::run_theta(ctx);
  if (suite == "nu") return detail::run_nu(ctx);
  if (suite == "identity") return detail::run_identity(ctx);
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace gcx::cli
