#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gcx/complex/assemble.hpp"

namespace gcx {

/**
 * Outcome of the pairwise d∘d check on orbit representatives. `terms` counts
 * compared pairs of terms; for Lie, one per decoration assignment.
 */
struct LocalSquareReport {
  std::string key;
  std::size_t shapes = 0;
  std::size_t representatives = 0;
  std::size_t pairs = 0;
  std::size_t terms = 0;
  bool ok = true;
  std::string failure;
};

namespace detail {

// One contraction step followed by canonicalization, as in assembly.
struct EdgeMove {
  CanonicalForm target;
  std::vector<int> half_edges;  // source half-edge -> target half-edge, -1 for the removed pair
  std::vector<int> vertices;    // source vertex -> target vertex
  int tail = 0, head = 0;
  int tail_flag = 0, head_flag = 0;
  int sign = 1;
  bool loop = false;
};

inline EdgeMove edge_move(const ModularGraph& gamma, int e, Twist twist, LegMode mode) {
  const Edge ed = gamma.edges[static_cast<std::size_t>(e)];
  auto con = contract_edge(gamma, e);
  EdgeMove mv;
  mv.loop = con.loop;
  mv.tail = ed.tail;
  mv.head = ed.head;
  mv.tail_flag = 2 * e;
  mv.head_flag = 2 * e + 1;
  mv.target = canonicalize(con.graph, mode);
  int E1 = con.graph.num_edges();
  mv.half_edges.assign(con.flag_map.size(), -1);
  for (std::size_t h = 0; h < con.flag_map.size(); ++h)
    if (con.flag_map[h] >= 0) mv.half_edges[h] = mv.target.relabeling.map_half_edge(con.flag_map[h], E1);
  mv.vertices.assign(gamma.genus.size(), 0);
  int next = 1;
  for (int v = 0; v < gamma.num_vertices(); ++v) {
    int cv = con.loop ? v : (v == ed.tail || v == ed.head) ? 0 : next++;
    mv.vertices[static_cast<std::size_t>(v)] = mv.target.relabeling.vertex_map[static_cast<std::size_t>(cv)];
  }
  mv.sign = con.sign(twist) * mv.target.twist_sign(twist);
  return mv;
}

// Word tuple on the contracted graph: the two end words are glued along the edge.
inline WordTuple transport_words(const EdgeMove& mv, const WordTuple& t) {
  WordTuple y(t.size() - 1);
  for (std::size_t v = 0; v < t.size(); ++v) {
    if (static_cast<int>(v) == mv.tail || static_cast<int>(v) == mv.head) continue;
    auto& w = y[static_cast<std::size_t>(mv.vertices[v])];
    w = t[v];
    for (auto& f : w) f = mv.half_edges[static_cast<std::size_t>(f)];
    rotate_min_first(w);
  }
  auto& merged = y[static_cast<std::size_t>(mv.vertices[static_cast<std::size_t>(mv.tail)])];
  merged = glue_words(t[static_cast<std::size_t>(mv.tail)], mv.tail_flag, t[static_cast<std::size_t>(mv.head)],
                      mv.head_flag);
  for (auto& f : merged) f = mv.half_edges[static_cast<std::size_t>(f)];
  rotate_min_first(merged);
  return y;
}

inline ModularGraph permute_legs(const ModularGraph& g, const std::vector<int>& perm) {
  ModularGraph out = g;
  for (std::size_t j = 0; j < perm.size(); ++j) out.legs[j] = g.legs[static_cast<std::size_t>(perm[j])];
  return out;
}

// Labeled representatives of one shape: the layout order and `extra` seeded leg relabelings.
inline std::vector<CanonicalForm> shape_representatives(const ModularGraph& shape, LegMode mode, int extra,
                                                        std::mt19937_64& rng) {
  std::vector<CanonicalForm> reps{canonicalize(shape, mode)};
  if (mode == LegMode::Unlabeled || shape.num_legs() < 2) return reps;
  std::vector<int> perm(static_cast<std::size_t>(shape.num_legs()));
  for (int i = 0; i < extra; ++i) {
    for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = static_cast<int>(j);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto cf = canonicalize(permute_legs(shape, perm), mode);
    bool seen = false;
    for (const auto& r : reps) seen = seen || r.encoding == cf.encoding;
    if (!seen) reps.push_back(std::move(cf));
  }
  return reps;
}

// Cyclic words on `flags` with the smallest flag first.
inline std::vector<CyclicWord> all_cyclic_words(std::vector<int> flags) {
  std::sort(flags.begin(), flags.end());
  std::vector<CyclicWord> out;
  do out.push_back(flags);
  while (std::next_permutation(flags.begin() + 1, flags.end()));
  return out;
}

inline bool allowed_after(const CanonicalForm& cf, const DecorationSystem& deco, GraphConstraints cons) {
  return cons.admits(cf.graph) && vertices_supported(cf.graph, deco);
}

}  // namespace detail

/**
 * Checks d∘d = 0 without assembling the complex. The contraction differential
 * commutes with leg relabelings, so it suffices to check one labeled
 * representative per unlabeled shape (plus `extra_relabelings` seeded
 * relabelings as a guard). For each representative and each unordered pair of
 * edges {e, f}, the two composites "contract e, canonicalize, contract f,
 * canonicalize" and the reverse must cancel in the automorphism coinvariants
 * of the common target. Zero generators are not dropped at the middle level,
 * which makes the pairwise cancellation exact.
 *
 * For Lie decorations the check runs in the ambient cyclic-word model: every
 * cyclic word is placed on the endpoints of e and f, and one fixed word on
 * every other vertex. Those spectator words are only relabeled by either
 * composite. With `max_assignments` > 0, pairs whose endpoint assignments
 * exceed that count are checked on that many seeded random assignments.
 */
inline LocalSquareReport local_square_check(int g, int n, const DecorationSystem& deco, Twist twist,
                                            GraphConstraints cons, LegMode mode, int edge_cap = -1,
                                            int extra_relabelings = 1, std::uint64_t seed = 20240611,
                                            std::size_t max_assignments = 0) {
  if (!is_stable_type(g, n)) throw std::invalid_argument("unstable type");
  bool lie = deco.kind() == DecorationKind::Lie;
  if (lie) cons.allow_positive_genus = false;
  bool loops_contract = deco.kind() == DecorationKind::ComBar;
  LocalSquareReport rep;
  {
    ComplexMetadata m;
    m.g = g;
    m.n = n;
    m.leg_mode = mode;
    m.edge_cap = edge_cap;
    rep.key = deco.id() + m.key().substr(m.key().find('_'));
  }
  std::mt19937_64 rng(seed);
  auto fail = [&](const CanonicalForm& cf, int e, int f, const std::string& why) {
    if (!rep.ok) return;
    rep.ok = false;
    rep.failure = "d^2 != 0 on " + encoding_text(cf.encoding) + " edges (" + std::to_string(e) + "," +
                  std::to_string(f) + "): " + why;
  };

  auto shapes = detail::supported_levels(g, n, deco, cons, LegMode::Unlabeled, edge_cap);
  for (const auto& level : shapes) {
    for (const auto& shape : level) {
      ++rep.shapes;
      for (const auto& cf : detail::shape_representatives(shape.graph, mode, extra_relabelings, rng)) {
        ++rep.representatives;
        const auto& gamma = cf.graph;
        int E = gamma.num_edges();
        auto contractible = [&](const ModularGraph& gr, int e) {
          return loops_contract || !gr.edges[static_cast<std::size_t>(e)].is_loop();
        };
        std::vector<detail::EdgeMove> first(static_cast<std::size_t>(E));
        std::vector<char> first_ok(static_cast<std::size_t>(E), 0);
        for (int e = 0; e < E; ++e) {
          if (!contractible(gamma, e)) continue;
          first[static_cast<std::size_t>(e)] = detail::edge_move(gamma, e, twist, mode);
          first_ok[static_cast<std::size_t>(e)] = detail::allowed_after(first[static_cast<std::size_t>(e)].target, deco, cons);
        }
        for (int e = 0; e < E && rep.ok; ++e) {
          for (int f = e + 1; f < E && rep.ok; ++f) {
            if (!contractible(gamma, e) || !contractible(gamma, f)) continue;
            const auto& m1 = first[static_cast<std::size_t>(e)];
            const auto& m2 = first[static_cast<std::size_t>(f)];
            int f1 = m1.half_edges[static_cast<std::size_t>(2 * f)] / 2;
            int e2 = m2.half_edges[static_cast<std::size_t>(2 * e)] / 2;
            bool c1 = contractible(m1.target.graph, f1), c2 = contractible(m2.target.graph, e2);
            if (c1 != c2) {
              fail(cf, e, f, "second contraction allowed in one order only");
              continue;
            }
            if (!c1) continue;
            auto n1 = detail::edge_move(m1.target.graph, f1, twist, mode);
            auto n2 = detail::edge_move(m2.target.graph, e2, twist, mode);
            if (n1.target.encoding != n2.target.encoding) {
              fail(cf, e, f, "composites reach different graphs");
              continue;
            }
            if (!detail::allowed_after(n1.target, deco, cons)) continue;
            if (!first_ok[static_cast<std::size_t>(e)] || !first_ok[static_cast<std::size_t>(f)]) {
              fail(cf, e, f, "intermediate graph excluded in one order only");
              continue;
            }
            ++rep.pairs;
            int s1 = m1.sign * n1.sign, s2 = m2.sign * n2.sign;
            auto target = canonicalize(n1.target.graph, mode, true);
            if (!lie) {
              ++rep.terms;
              if (is_zero_generator(target.automorphisms, twist)) continue;
              if (s1 + s2 != 0) fail(cf, e, f, "signs do not cancel");
              continue;
            }
            LieOrbitSpace space(target.graph, target.automorphisms, twist, mode);
            const Edge ee = gamma.edges[static_cast<std::size_t>(e)];
            const Edge ef = gamma.edges[static_cast<std::size_t>(f)];
            std::vector<int> active{ee.tail, ee.head, ef.tail, ef.head};
            std::sort(active.begin(), active.end());
            active.erase(std::unique(active.begin(), active.end()), active.end());
            WordTuple x;
            for (int v = 0; v < gamma.num_vertices(); ++v) {
              auto fl = gamma.flags_at(v);
              std::sort(fl.begin(), fl.end());
              x.push_back(fl);
            }
            std::vector<std::vector<CyclicWord>> choices;
            for (int v : active) choices.push_back(detail::all_cyclic_words(gamma.flags_at(v)));
            std::size_t total = 1;
            for (const auto& c : choices) total = std::min(total * c.size(), max_assignments + 1);
            bool sampled = max_assignments > 0 && total > max_assignments;
            std::vector<std::size_t> pos(active.size(), 0);
            for (std::size_t round = 0; rep.ok; ++round) {
              if (sampled) {
                if (round == max_assignments) break;
                for (std::size_t a = 0; a < pos.size(); ++a)
                  pos[a] = std::uniform_int_distribution<std::size_t>(0, choices[a].size() - 1)(rng);
              }
              for (std::size_t a = 0; a < active.size(); ++a)
                x[static_cast<std::size_t>(active[a])] = choices[a][pos[a]];
              auto l1 = space.locate(detail::transport_words(n1, detail::transport_words(m1, x)));
              auto l2 = space.locate(detail::transport_words(n2, detail::transport_words(m2, x)));
              ++rep.terms;
              if (l1.orbit != l2.orbit)
                fail(cf, e, f, "composites reach different orbits");
              else if (l1.orbit >= 0 && s1 * l1.sign + s2 * l2.sign != 0)
                fail(cf, e, f, "decorated terms do not cancel");
              if (sampled) continue;
              std::size_t a = 0;
              while (a < pos.size() && ++pos[a] == choices[a].size()) pos[a++] = 0;
              if (a == pos.size()) break;
            }
          }
        }
        if (!rep.ok) return rep;
      }
    }
  }
  return rep;
}

inline LocalSquareReport local_square_check(Sector s, int g, int n, bool anti = false, int edge_cap = -1,
                                            int extra_relabelings = 1, std::uint64_t seed = 20240611,
                                            std::size_t max_assignments = 0) {
  if (s == Sector::GC2 && g < 1) throw std::invalid_argument("gc2 requires g >= 1");
  auto st = sector_setup(s, anti);
  auto rep = local_square_check(g, n, *st.deco, st.twist, st.constraints, anti ? LegMode::Unlabeled : LegMode::Labeled,
                                edge_cap, extra_relabelings, seed, max_assignments);
  ComplexMetadata m;
  m.sector = s;
  m.g = g;
  m.n = n;
  m.leg_mode = anti ? LegMode::Unlabeled : LegMode::Labeled;
  m.edge_cap = edge_cap;
  rep.key = m.key();
  return rep;
}

}  // namespace gcx
