#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gcx/complex/chain_complex.hpp"
#include "gcx/decor/lie.hpp"
#include "gcx/linalg/rank.hpp"
#include "gcx/linalg/solve.hpp"
#include "gcx/modgraph/contract.hpp"

namespace gcx {

using WordTuple = std::vector<CyclicWord>;  // one cyclic word per vertex

/**
 * Coinvariants of the ambient space ⊗_v CycAss(flags(v)) of a graph under its
 * automorphisms (with the twist character). An orbit of word tuples is either
 * zero (some element maps a tuple to minus itself) or a basis vector. With
 * unlabeled legs the leg permutations at each vertex are handled by sorting
 * legs in order of appearance rather than by search.
 */
class LieOrbitSpace {
 public:
  struct Location {
    int orbit = -1;  // -1: the tuple vanishes in coinvariants
    int sign = 0;
  };

  LieOrbitSpace(const ModularGraph& g, const AutomorphismGroup& aut, Twist twist, LegMode mode)
      : mode_(mode), leg_sign_(twist.leg_order) {
    int E = g.num_edges();
    legs_at_.assign(g.genus.size(), {});
    for (int j = 0; j < g.num_legs(); ++j) legs_at_[static_cast<std::size_t>(g.legs[static_cast<std::size_t>(j)])].push_back(2 * E + j);
    for (const auto& gen : aut.generators) {
      if (mode == LegMode::Unlabeled && pure_leg_permutation(gen)) continue;
      gens_.push_back(Generator{gen.half_edge_map(E), gen.vertex_map, twist_sign(gen, twist)});
    }
  }

  Location locate(WordTuple x) {
    int s0 = normalize_legs(x);
    auto k0 = key(x);
    auto it = memo_.find(k0);
    if (it == memo_.end()) {
      explore(std::move(x), k0);
      it = memo_.find(k0);
    }
    if (it->second.orbit < 0) return {};
    return {it->second.orbit, s0 * it->second.sign};
  }

  std::size_t orbit_count() const { return reps_.size(); }
  const std::string& orbit_key(int i) const { return reps_[static_cast<std::size_t>(i)]; }

 private:
  struct Generator {
    std::vector<int> half_edges;
    std::vector<int> vertices;
    int sign;
  };

  static bool pure_leg_permutation(const GraphMap& m) {
    for (std::size_t i = 0; i < m.vertex_map.size(); ++i)
      if (m.vertex_map[i] != static_cast<int>(i)) return false;
    for (std::size_t i = 0; i < m.edge_map.size(); ++i)
      if (m.edge_map[i] != static_cast<int>(i) || m.flipped[i]) return false;
    return true;
  }

  static std::string key(const WordTuple& x) {
    std::string k;
    for (const auto& w : x) {
      for (int f : w) k.push_back(static_cast<char>(f));
      k.push_back('\xff');
    }
    return k;
  }

  // x := sigma x for the leg relabeling sigma sorting legs by appearance; returns chi(sigma).
  int normalize_legs(WordTuple& x) const {
    if (mode_ == LegMode::Labeled) return 1;
    int sign = 1;
    for (std::size_t v = 0; v < x.size(); ++v) {
      const auto& slots = legs_at_[v];
      if (slots.size() < 2) continue;
      std::vector<int> seen;
      for (int f : x[v])
        if (f >= slots.front()) seen.push_back(f);
      if (leg_sign_) sign *= sorting_sign(seen);
      std::map<int, int> relabel;
      for (std::size_t i = 0; i < seen.size(); ++i) relabel[seen[i]] = slots[i];
      for (auto& f : x[v])
        if (f >= slots.front()) f = relabel[f];
      rotate_min_first(x[v]);
    }
    return sign;
  }

  WordTuple apply(const Generator& g, const WordTuple& x) const {
    WordTuple y(x.size());
    for (std::size_t v = 0; v < x.size(); ++v) {
      auto& w = y[static_cast<std::size_t>(g.vertices[v])];
      w = x[v];
      for (auto& f : w) f = g.half_edges[static_cast<std::size_t>(f)];
      rotate_min_first(w);
    }
    return y;
  }

  void explore(WordTuple x0, const std::string& k0) {
    // x0 == sign * y for every visited y
    std::unordered_map<std::string, int> visited{{k0, 1}};
    std::vector<std::pair<WordTuple, int>> queue{{std::move(x0), 1}};
    bool zero = false;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (const auto& g : gens_) {
        auto z = apply(g, queue[q].first);
        int s = queue[q].second * g.sign * normalize_legs(z);
        auto kz = key(z);
        auto [it, inserted] = visited.emplace(kz, s);
        if (inserted) {
          queue.push_back({std::move(z), s});
        } else if (it->second != s) {
          zero = true;
        }
      }
    }
    if (zero) {
      for (const auto& [k, s] : visited) memo_[k] = {-1, 0};
      return;
    }
    const std::string* rep = &k0;
    for (const auto& [k, s] : visited)
      if (k < *rep) rep = &k;
    int s_rep = visited.at(*rep);
    int id = static_cast<int>(reps_.size());
    reps_.push_back(*rep);
    for (const auto& [k, s] : visited) memo_[k] = {id, s * s_rep};
  }

  LegMode mode_;
  bool leg_sign_;
  std::vector<std::vector<int>> legs_at_;
  std::vector<Generator> gens_;
  std::unordered_map<std::string, Location> memo_;
  std::vector<std::string> reps_;
};

/**
 * Decoration data of one graph in the Lie complex. Basis vectors are the
 * orbit images of selected Lie basis tuples; `pivots` is an exact echelon
 * form of those images that also records each row as a combination of the
 * selected tuples, so coordinates of any vector in their span are read off by
 * leading-entry elimination.
 */
struct LieGraphData {
  struct PivotRow {
    detail::QRow coeffs;
    detail::QRow history;
  };
  std::vector<std::vector<std::size_t>> selected;  // Lie basis index per vertex
  std::vector<std::string> labels;
  std::map<std::size_t, PivotRow> pivots;  // keyed by leading orbit
  std::shared_ptr<LieOrbitSpace> orbits;
  std::vector<std::vector<int>> vertex_flags;
  std::size_t offset = 0;
  std::size_t dim() const { return selected.size(); }
};

namespace detail {

inline std::vector<std::vector<int>> vertex_flag_lists(const ModularGraph& g) {
  std::vector<std::vector<int>> out;
  for (int v = 0; v < g.num_vertices(); ++v) out.push_back(g.flags_at(v));
  return out;
}

// Word tuples (with signs) of a product of per-vertex Lie basis elements.
inline std::vector<std::pair<WordTuple, int>> expand_lie_tuple(const std::vector<std::vector<int>>& flags,
                                                               const std::vector<std::size_t>& idx) {
  std::vector<std::pair<WordTuple, int>> out{{WordTuple{}, 1}};
  for (std::size_t v = 0; v < flags.size(); ++v) {
    auto words = lie_basis_words(flags[v], idx[v]);
    std::vector<std::pair<WordTuple, int>> next;
    next.reserve(out.size() * words.size());
    for (const auto& [t, s] : out)
      for (const auto& w : words) {
        auto u = t;
        u.push_back(w.word);
        next.push_back({std::move(u), s * w.sign});
      }
    out.swap(next);
  }
  return out;
}

inline std::string lie_tuple_label(const std::vector<std::vector<int>>& flags, const std::vector<std::size_t>& idx) {
  std::string s;
  for (std::size_t v = 0; v < flags.size(); ++v) {
    if (v) s += " ";
    auto t = permutation_unrank(std::vector<int>(flags[v].begin() + 2, flags[v].end()), idx[v]);
    s += "(" + std::to_string(flags[v][0]) + ";" + std::to_string(flags[v][1]);
    for (int x : t) s += "," + std::to_string(x);
    s += ")";
  }
  return s;
}

// Lie basis indices of one vertex; with unlabeled legs only those listing legs in increasing order.
inline std::vector<std::size_t> vertex_candidates(const std::vector<int>& flags, int first_leg, LegMode mode) {
  std::size_t count = lie_dimension(static_cast<int>(flags.size()));
  std::vector<std::size_t> out;
  std::vector<int> rest(flags.begin() + 2, flags.end());
  for (std::size_t i = 0; i < count; ++i) {
    if (mode == LegMode::Unlabeled) {
      auto t = permutation_unrank(rest, i);
      int last = -1;
      bool ok = true;
      for (int f : t) {
        if (f < first_leg) continue;
        if (f < last) {
          ok = false;
          break;
        }
        last = f;
      }
      if (!ok) continue;
    }
    out.push_back(i);
  }
  return out;
}

inline QRow orbit_image(LieOrbitSpace& space, const std::vector<std::vector<int>>& flags,
                        const std::vector<std::size_t>& idx) {
  QRow row;
  for (auto& [t, s] : expand_lie_tuple(flags, idx)) {
    auto loc = space.locate(std::move(t));
    if (loc.orbit < 0) continue;
    auto& slot = row[static_cast<std::size_t>(loc.orbit)];
    slot += s * loc.sign;
    if (slot == 0) row.erase(static_cast<std::size_t>(loc.orbit));
  }
  return row;
}

// Reduces `row` (with history) against the pivots; returns false if a nonzero residue remains.
inline bool reduce_against(const std::map<std::size_t, LieGraphData::PivotRow>& pivots, QRow& row, QRow& history) {
  while (!row.empty()) {
    auto lead = row.begin()->first;
    auto it = pivots.find(lead);
    if (it == pivots.end()) return false;
    Rational factor = -row.begin()->second / it->second.coeffs.begin()->second;
    add_scaled(row, it->second.coeffs, factor);
    add_scaled(history, it->second.history, factor);
  }
  return true;
}

inline ModRow mod_row(const QRow& row, std::uint64_t p) {
  ModRow r;
  for (const auto& [c, v] : row) {
    auto x = reduce_mod(v, p);
    if (x) r.push_back({static_cast<std::uint32_t>(c), x});
  }
  return r;
}

inline void build_lie_graph_data(LieGraphData& d, const CanonicalForm& cf, Twist twist, LegMode mode) {
  const auto& g = cf.graph;
  d.orbits = std::make_shared<LieOrbitSpace>(g, cf.automorphisms, twist, mode);
  d.vertex_flags = vertex_flag_lists(g);
  int first_leg = 2 * g.num_edges();
  std::vector<std::vector<std::size_t>> cand;
  for (const auto& f : d.vertex_flags) cand.push_back(vertex_candidates(f, first_leg, mode));
  for (const auto& c : cand)
    if (c.empty()) return;
  const auto& primes = session_primes();
  ModularEchelon e1(0, primes[0]), e2(0, primes[1]);
  std::vector<std::vector<std::size_t>> chosen;
  std::vector<QRow> images;
  std::vector<std::size_t> pos(cand.size(), 0);
  auto for_each_candidate = [&](auto&& fn) {
    std::fill(pos.begin(), pos.end(), 0);
    while (true) {
      std::vector<std::size_t> idx(cand.size());
      for (std::size_t v = 0; v < cand.size(); ++v) idx[v] = cand[v][pos[v]];
      fn(idx);
      std::size_t v = 0;
      while (v < cand.size() && ++pos[v] == cand[v].size()) pos[v++] = 0;
      if (v == cand.size()) break;
    }
  };
  for_each_candidate([&](const std::vector<std::size_t>& idx) {
    auto img = orbit_image(*d.orbits, d.vertex_flags, idx);
    if (img.empty()) return;
    e2.insert(mod_row(img, primes[1]));
    if (e1.insert(mod_row(img, primes[0]))) {
      chosen.push_back(idx);
      images.push_back(std::move(img));
    }
  });
  if (e1.rank() != e2.rank()) {
    // a prime dropped rank: select exactly
    chosen.clear();
    images.clear();
    std::map<std::size_t, LieGraphData::PivotRow> probe;
    for_each_candidate([&](const std::vector<std::size_t>& idx) {
      auto img = orbit_image(*d.orbits, d.vertex_flags, idx);
      auto row = img;
      QRow hist;
      if (reduce_against(probe, row, hist)) return;
      auto lead = row.begin()->first;
      probe.emplace(lead, LieGraphData::PivotRow{std::move(row), {}});
      chosen.push_back(idx);
      images.push_back(std::move(img));
    });
  }
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    QRow row = images[j];
    QRow hist{{j, Rational(1)}};
    if (reduce_against(d.pivots, row, hist)) throw std::logic_error("lie basis selection: dependent image");
    auto lead = row.begin()->first;
    d.pivots.emplace(lead, LieGraphData::PivotRow{std::move(row), std::move(hist)});
    d.labels.push_back(lie_tuple_label(d.vertex_flags, chosen[j]));
  }
  d.selected = std::move(chosen);
}

struct LieEdgeTransport {
  std::size_t target = 0;  // index into the level below
  int tail = 0, head = 0;
  int tail_flag = 0, head_flag = 0;
  std::vector<int> half_edges;  // source half-edge -> target half-edge
  std::vector<int> vertices;    // source vertex -> target vertex
  int sign = 1;
};

}  // namespace detail

inline ChainComplexData assemble_lie(int g, int n, Twist twist, GraphConstraints cons, LegMode mode, int edge_cap) {
  ChainComplexData c;
  c.meta.g = g;
  c.meta.n = n;
  c.meta.decoration = "lie";
  c.meta.twist = twist;
  c.meta.constraints = cons;
  c.meta.leg_mode = mode;
  c.meta.edge_cap = edge_cap;
  cons.allow_positive_genus = false;
  auto levels = enumerate_graphs_by_edges(g, n, cons, mode, edge_cap);
  std::vector<std::vector<LieGraphData>> data(levels.size());
  std::vector<std::unordered_map<std::string, std::size_t>> index(levels.size());
  int first = static_cast<int>(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    data[k].resize(levels[k].size());
    std::size_t offset = 0;
    for (std::size_t i = 0; i < levels[k].size(); ++i) {
      auto& cf = levels[k][i];
      cf.automorphisms = automorphisms(cf);
      cf.has_automorphisms = true;
      index[k].emplace(cf.encoding, i);
      detail::build_lie_graph_data(data[k][i], cf, twist, mode);
      data[k][i].offset = offset;
      offset += data[k][i].dim();
    }
    if (!levels[k].empty()) first = std::min(first, static_cast<int>(k));
  }
  auto lie_data = std::make_shared<std::vector<LieGraphData>>();
  for (int k = first; k < static_cast<int>(levels.size()); ++k) {
    auto& out = c.basis[k];
    for (std::size_t i = 0; i < levels[static_cast<std::size_t>(k)].size(); ++i) {
      auto& d = data[static_cast<std::size_t>(k)][i];
      if (d.dim() == 0) continue;
      for (std::size_t j = 0; j < d.dim(); ++j)
        out.push_back(BasisElement{c.graphs.size(), d.labels[j], levels[static_cast<std::size_t>(k)][i].automorphisms.order});
      c.graphs.push_back(levels[static_cast<std::size_t>(k)][i]);
      lie_data->push_back(d);
    }
  }
  for (int k = first + 1; k < static_cast<int>(levels.size()); ++k) {
    auto ku = static_cast<std::size_t>(k);
    std::vector<MatrixEntry<Rational>> trip;
    for (std::size_t i = 0; i < levels[ku].size(); ++i) {
      const auto& src = data[ku][i];
      if (src.dim() == 0) continue;
      const auto& gamma = levels[ku][i].graph;
      std::vector<detail::LieEdgeTransport> moves;
      for (int e = 0; e < gamma.num_edges(); ++e) {
        const Edge& ed = gamma.edges[static_cast<std::size_t>(e)];
        if (ed.is_loop()) continue;
        auto con = contract_edge(gamma, e);
        auto tcf = canonicalize(con.graph, mode);
        auto it = index[ku - 1].find(tcf.encoding);
        if (it == index[ku - 1].end()) throw std::logic_error("lie assembly: contracted graph missing from enumeration");
        detail::LieEdgeTransport mv;
        mv.target = it->second;
        mv.tail = ed.tail;
        mv.head = ed.head;
        mv.tail_flag = 2 * e;
        mv.head_flag = 2 * e + 1;
        mv.half_edges.assign(con.flag_map.size(), -1);
        for (std::size_t h = 0; h < con.flag_map.size(); ++h)
          if (con.flag_map[h] >= 0) mv.half_edges[h] = tcf.relabeling.map_half_edge(con.flag_map[h], con.graph.num_edges());
        int next = 1;
        mv.vertices.assign(gamma.genus.size(), 0);
        for (int v = 0; v < gamma.num_vertices(); ++v) {
          int cv = (v == ed.tail || v == ed.head) ? 0 : next++;
          mv.vertices[static_cast<std::size_t>(v)] = tcf.relabeling.vertex_map[static_cast<std::size_t>(cv)];
        }
        mv.sign = con.sign(twist) * tcf.twist_sign(twist);
        moves.push_back(std::move(mv));
      }
      for (std::size_t j = 0; j < src.dim(); ++j) {
        std::map<std::size_t, detail::QRow> images;  // target -> orbit coordinates
        auto tuples = detail::expand_lie_tuple(src.vertex_flags, src.selected[j]);
        for (const auto& mv : moves) {
          auto& tdata = data[ku - 1][mv.target];
          auto& img = images[mv.target];
          for (const auto& [t, s] : tuples) {
            WordTuple y(t.size() - 1);
            for (std::size_t v = 0; v < t.size(); ++v) {
              if (static_cast<int>(v) == mv.tail || static_cast<int>(v) == mv.head) continue;
              auto& w = y[static_cast<std::size_t>(mv.vertices[v])];
              w = t[v];
              for (auto& f : w) f = mv.half_edges[static_cast<std::size_t>(f)];
              rotate_min_first(w);
            }
            auto& merged = y[static_cast<std::size_t>(mv.vertices[static_cast<std::size_t>(mv.tail)])];
            merged = glue_words(t[static_cast<std::size_t>(mv.tail)], mv.tail_flag, t[static_cast<std::size_t>(mv.head)], mv.head_flag);
            for (auto& f : merged) f = mv.half_edges[static_cast<std::size_t>(f)];
            rotate_min_first(merged);
            auto loc = tdata.orbits ? tdata.orbits->locate(std::move(y)) : LieOrbitSpace::Location{};
            if (loc.orbit < 0) continue;
            auto& slot = img[static_cast<std::size_t>(loc.orbit)];
            slot += s * loc.sign * mv.sign;
            if (slot == 0) img.erase(static_cast<std::size_t>(loc.orbit));
          }
        }
        for (auto& [target, img] : images) {
          const auto& tdata = data[ku - 1][target];
          detail::QRow hist;
          if (!detail::reduce_against(tdata.pivots, img, hist))
            throw std::logic_error("lie assembly: boundary of " + encoding_text(levels[ku][i].encoding) + " [" +
                                   src.labels[j] + "] leaves the decoration span");
          for (const auto& [sel, coeff] : hist)
            trip.push_back({tdata.offset + sel, src.offset + j, -coeff});
        }
      }
    }
    c.contraction[k] = SparseMatrix<Rational>::from_triplets(c.dim(k - 1), c.dim(k), std::move(trip));
  }
  c.lie_data = lie_data;
  return c;
}

}  // namespace gcx
