#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/modgraph/modular_graph.hpp"
#include "gcx/modgraph/twist.hpp"

namespace gcx {

// Labeled: isomorphisms preserve leg labels. Unlabeled: legs are interchangeable.
enum class LegMode { Labeled, Unlabeled };

struct AutomorphismGroup {
  std::vector<GraphMap> generators;
  std::uint64_t order = 1;
};

struct CanonicalForm {
  std::string encoding;          // "MG1:" + byte tables
  ModularGraph graph;            // canonical representative
  GraphMap relabeling;           // input graph -> canonical graph
  LegMode leg_mode = LegMode::Labeled;
  AutomorphismGroup automorphisms;  // of `graph`; filled on request
  bool has_automorphisms = false;

  int twist_sign(const Twist& t) const { return gcx::twist_sign(relabeling, t); }
};

namespace detail {

class Canonicalizer {
 public:
  Canonicalizer(const ModularGraph& g, LegMode mode) : g_(g), mode_(mode), V_(g.num_vertices()) {
    if (V_ > 60) throw std::invalid_argument("canonicalize: too many vertices");
    mult_.assign(static_cast<std::size_t>(V_ * V_), 0);
    loops_.assign(static_cast<std::size_t>(V_), 0);
    for (const auto& e : g.edges) {
      if (e.is_loop()) {
        ++loops_[static_cast<std::size_t>(e.tail)];
      } else {
        ++mult_[idx(e.tail, e.head)];
        ++mult_[idx(e.head, e.tail)];
      }
    }
    leg_labels_.assign(static_cast<std::size_t>(V_), {});
    for (std::size_t j = 0; j < g.legs.size(); ++j)
      leg_labels_[static_cast<std::size_t>(g.legs[j])].push_back(static_cast<int>(j) + 1);
    neighbors_.assign(static_cast<std::size_t>(V_), {});
    for (int v = 0; v < V_; ++v)
      for (int u = 0; u < V_; ++u)
        if (u != v && mult_[idx(v, u)]) neighbors_[static_cast<std::size_t>(v)].push_back(u);
  }

  void run() {
    std::vector<std::vector<int>> sigs(static_cast<std::size_t>(V_));
    auto val = g_.valences();
    for (int v = 0; v < V_; ++v) {
      auto& s = sigs[static_cast<std::size_t>(v)];
      s = {g_.genus[static_cast<std::size_t>(v)], loops_[static_cast<std::size_t>(v)],
           static_cast<int>(leg_labels_[static_cast<std::size_t>(v)].size()), val[static_cast<std::size_t>(v)]};
      if (mode_ == LegMode::Labeled)
        s.insert(s.end(), leg_labels_[static_cast<std::size_t>(v)].begin(), leg_labels_[static_cast<std::size_t>(v)].end());
    }
    search(renumber(sigs));
  }

  const std::vector<std::uint8_t>& best_encoding() const { return best_; }
  const std::vector<std::vector<int>>& best_orders() const { return best_orders_; }

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a * V_ + b); }

  std::vector<int> renumber(const std::vector<std::vector<int>>& sigs) const {
    std::vector<int> order(static_cast<std::size_t>(V_));
    for (int v = 0; v < V_; ++v) order[static_cast<std::size_t>(v)] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sigs[static_cast<std::size_t>(a)] < sigs[static_cast<std::size_t>(b)]; });
    std::vector<int> cell(static_cast<std::size_t>(V_));
    int id = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i == 0 || sigs[static_cast<std::size_t>(order[i])] != sigs[static_cast<std::size_t>(order[i - 1])]) ++id;
      cell[static_cast<std::size_t>(order[i])] = id;
    }
    return cell;
  }

  static int count_cells(const std::vector<int>& cell) {
    return cell.empty() ? 0 : *std::max_element(cell.begin(), cell.end()) + 1;
  }

  std::vector<int> refine(std::vector<int> cell) const {
    std::vector<std::vector<int>> sigs(static_cast<std::size_t>(V_));
    for (int v = 0; v < V_; ++v) sigs[static_cast<std::size_t>(v)] = {cell[static_cast<std::size_t>(v)]};
    cell = renumber(sigs);
    int cells = count_cells(cell);
    while (cells < V_) {
      for (int v = 0; v < V_; ++v) {
        auto& s = sigs[static_cast<std::size_t>(v)];
        s.clear();
        s.push_back(cell[static_cast<std::size_t>(v)]);
        std::vector<int> nb;
        for (int u : neighbors_[static_cast<std::size_t>(v)]) nb.push_back(cell[static_cast<std::size_t>(u)] * 64 + mult_[idx(v, u)]);
        std::sort(nb.begin(), nb.end());
        s.insert(s.end(), nb.begin(), nb.end());
      }
      auto next = renumber(sigs);
      int next_cells = count_cells(next);
      cell.swap(next);
      if (next_cells == cells) break;
      cells = next_cells;
    }
    return cell;
  }

  std::vector<std::uint8_t> encode(const std::vector<int>& order) const {
    std::vector<std::uint8_t> enc;
    enc.reserve(static_cast<std::size_t>(4 + 4 * V_ + V_ * V_ / 2 + g_.num_legs()));
    auto push = [&](int x) {
      if (x < 0 || x > 255) throw std::invalid_argument("canonicalize: table entry exceeds one byte");
      enc.push_back(static_cast<std::uint8_t>(x));
    };
    push(V_);
    push(g_.num_edges());
    push(g_.num_legs());
    push(mode_ == LegMode::Labeled ? 1 : 0);
    for (int v : order) {
      push(g_.genus[static_cast<std::size_t>(v)]);
      push(loops_[static_cast<std::size_t>(v)]);
      const auto& labels = leg_labels_[static_cast<std::size_t>(v)];
      push(static_cast<int>(labels.size()));
      if (mode_ == LegMode::Labeled)
        for (int l : labels) push(l);
    }
    for (int i = 0; i < V_; ++i)
      for (int j = i + 1; j < V_; ++j) push(mult_[idx(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)])]);
    return enc;
  }

  void search(std::vector<int> cell) {
    cell = refine(std::move(cell));
    int cells = count_cells(cell);
    if (cells == V_) {
      std::vector<int> order(static_cast<std::size_t>(V_));
      for (int v = 0; v < V_; ++v) order[static_cast<std::size_t>(cell[static_cast<std::size_t>(v)])] = v;
      auto enc = encode(order);
      if (best_orders_.empty() || enc < best_) {
        best_ = std::move(enc);
        best_orders_.clear();
        best_orders_.push_back(std::move(order));
      } else if (enc == best_) {
        best_orders_.push_back(std::move(order));
      }
      return;
    }
    std::vector<int> size(static_cast<std::size_t>(cells), 0);
    for (int c : cell) ++size[static_cast<std::size_t>(c)];
    int target = 0;
    while (size[static_cast<std::size_t>(target)] < 2) ++target;
    for (int v = 0; v < V_; ++v) {
      if (cell[static_cast<std::size_t>(v)] != target) continue;
      std::vector<int> next(cell.size());
      for (int u = 0; u < V_; ++u)
        next[static_cast<std::size_t>(u)] = 2 * cell[static_cast<std::size_t>(u)] + (cell[static_cast<std::size_t>(u)] == target && u != v ? 1 : 0);
      search(std::move(next));
    }
  }

  const ModularGraph& g_;
  LegMode mode_;
  int V_;
  std::vector<std::uint8_t> mult_;
  std::vector<int> loops_;
  std::vector<std::vector<int>> leg_labels_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::uint8_t> best_;
  std::vector<std::vector<int>> best_orders_;
};

// Relabels g so that vertex order[i] becomes vertex i, edges sorted by endpoint pair.
inline GraphMap map_for_order(const ModularGraph& g, const std::vector<int>& order, LegMode mode) {
  std::size_t V = order.size();
  GraphMap m;
  m.vertex_map.assign(V, 0);
  for (std::size_t i = 0; i < V; ++i) m.vertex_map[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::size_t E = g.edges.size();
  std::vector<int> eidx(E);
  for (std::size_t i = 0; i < E; ++i) eidx[i] = static_cast<int>(i);
  auto key = [&](int i) {
    int a = m.vertex_map[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(i)].tail)];
    int b = m.vertex_map[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(i)].head)];
    return std::make_pair(std::min(a, b), std::max(a, b));
  };
  std::stable_sort(eidx.begin(), eidx.end(), [&](int a, int b) { return key(a) < key(b); });
  m.edge_map.assign(E, 0);
  m.flipped.assign(E, 0);
  for (std::size_t k = 0; k < E; ++k) {
    auto i = static_cast<std::size_t>(eidx[k]);
    m.edge_map[i] = static_cast<int>(k);
    int a = m.vertex_map[static_cast<std::size_t>(g.edges[i].tail)];
    int b = m.vertex_map[static_cast<std::size_t>(g.edges[i].head)];
    m.flipped[i] = a > b ? 1 : 0;
  }
  std::size_t L = g.legs.size();
  m.leg_map.assign(L, 0);
  if (mode == LegMode::Labeled) {
    for (std::size_t j = 0; j < L; ++j) m.leg_map[j] = static_cast<int>(j);
  } else {
    std::vector<int> lidx(L);
    for (std::size_t j = 0; j < L; ++j) lidx[j] = static_cast<int>(j);
    std::stable_sort(lidx.begin(), lidx.end(), [&](int a, int b) {
      return m.vertex_map[static_cast<std::size_t>(g.legs[static_cast<std::size_t>(a)])] <
             m.vertex_map[static_cast<std::size_t>(g.legs[static_cast<std::size_t>(b)])];
    });
    for (std::size_t k = 0; k < L; ++k) m.leg_map[static_cast<std::size_t>(lidx[k])] = static_cast<int>(k);
  }
  return m;
}

// Generators of Aut of a graph already in canonical layout.
inline AutomorphismGroup canonical_automorphisms(const ModularGraph& c, LegMode mode,
                                                 const std::vector<std::vector<int>>& vertex_auts) {
  AutomorphismGroup grp;
  std::size_t E = c.edges.size(), L = c.legs.size();
  // contiguous groups of parallel edges / loops
  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end)
  for (std::size_t k = 0; k < E;) {
    std::size_t e = k;
    while (e < E && c.edges[e].tail == c.edges[k].tail && c.edges[e].head == c.edges[k].head) ++e;
    groups.push_back({k, e});
    k = e;
  }
  auto find_group = [&](int a, int b) -> std::size_t {
    for (const auto& gr : groups)
      if (c.edges[gr.first].tail == a && c.edges[gr.first].head == b) return gr.first;
    throw std::logic_error("canonical_automorphisms: missing edge group");
  };
  std::vector<std::size_t> leg_start(c.genus.size() + 1, 0);
  for (int v : c.legs) ++leg_start[static_cast<std::size_t>(v) + 1];
  for (std::size_t v = 0; v < c.genus.size(); ++v) leg_start[v + 1] += leg_start[v];

  for (const auto& alpha : vertex_auts) {
    bool ident = true;
    for (std::size_t i = 0; i < alpha.size(); ++i) ident = ident && alpha[i] == static_cast<int>(i);
    if (ident) continue;
    GraphMap m;
    m.vertex_map = alpha;
    m.edge_map.assign(E, 0);
    m.flipped.assign(E, 0);
    for (const auto& gr : groups) {
      int a = c.edges[gr.first].tail, b = c.edges[gr.first].head;
      int ia = alpha[static_cast<std::size_t>(a)], ib = alpha[static_cast<std::size_t>(b)];
      std::size_t target = find_group(std::min(ia, ib), std::max(ia, ib));
      for (std::size_t k = gr.first; k < gr.second; ++k) {
        m.edge_map[k] = static_cast<int>(target + (k - gr.first));
        m.flipped[k] = (a != b && ia > ib) ? 1 : 0;
      }
    }
    m.leg_map.assign(L, 0);
    if (mode == LegMode::Labeled) {
      for (std::size_t j = 0; j < L; ++j) m.leg_map[j] = static_cast<int>(j);
    } else {
      for (std::size_t v = 0; v < c.genus.size(); ++v) {
        auto w = static_cast<std::size_t>(alpha[v]);
        for (std::size_t o = 0; o < leg_start[v + 1] - leg_start[v]; ++o)
          m.leg_map[leg_start[v] + o] = static_cast<int>(leg_start[w] + o);
      }
    }
    grp.generators.push_back(std::move(m));
  }
  std::uint64_t order = vertex_auts.size();
  auto base = GraphMap::identity(c);
  for (const auto& gr : groups) {
    std::size_t size = gr.second - gr.first;
    bool loop = c.edges[gr.first].is_loop();
    order *= factorial(static_cast<int>(size));
    if (loop) {
      order <<= size;
      GraphMap m = base;
      m.flipped[gr.first] = 1;
      grp.generators.push_back(std::move(m));
    }
    for (std::size_t k = gr.first; k + 1 < gr.second; ++k) {
      GraphMap m = base;
      std::swap(m.edge_map[k], m.edge_map[k + 1]);
      grp.generators.push_back(std::move(m));
    }
  }
  if (mode == LegMode::Unlabeled) {
    for (std::size_t v = 0; v < c.genus.size(); ++v) {
      std::size_t size = leg_start[v + 1] - leg_start[v];
      order *= factorial(static_cast<int>(size));
      for (std::size_t k = leg_start[v]; k + 1 < leg_start[v + 1]; ++k) {
        GraphMap m = base;
        std::swap(m.leg_map[k], m.leg_map[k + 1]);
        grp.generators.push_back(std::move(m));
      }
    }
  }
  grp.order = order;
  return grp;
}

}  // namespace detail

inline CanonicalForm canonicalize(const ModularGraph& g, LegMode mode = LegMode::Labeled, bool with_automorphisms = false) {
  detail::Canonicalizer can(g, mode);
  can.run();
  const auto& orders = can.best_orders();
  CanonicalForm cf;
  cf.leg_mode = mode;
  cf.relabeling = detail::map_for_order(g, orders.front(), mode);
  cf.graph = apply_map(g, cf.relabeling);
  const auto& enc = can.best_encoding();
  cf.encoding.reserve(enc.size() + 4);
  cf.encoding = "MG1:";
  cf.encoding.append(enc.begin(), enc.end());
  if (with_automorphisms) {
    // alpha(i) = position of orders[0][i] under the other minimal order
    std::vector<std::vector<int>> auts;
    for (const auto& other : orders) {
      std::vector<int> pos(other.size());
      for (std::size_t i = 0; i < other.size(); ++i) pos[static_cast<std::size_t>(other[i])] = static_cast<int>(i);
      std::vector<int> alpha(other.size());
      for (std::size_t i = 0; i < other.size(); ++i) alpha[i] = pos[static_cast<std::size_t>(orders.front()[i])];
      auts.push_back(std::move(alpha));
    }
    cf.automorphisms = detail::canonical_automorphisms(cf.graph, mode, auts);
    cf.has_automorphisms = true;
  }
  return cf;
}

inline AutomorphismGroup automorphisms(const CanonicalForm& cf) {
  if (cf.has_automorphisms) return cf.automorphisms;
  return canonicalize(cf.graph, cf.leg_mode, true).automorphisms;
}

// True iff some automorphism reverses the twist datum.
inline bool is_zero_generator(const AutomorphismGroup& aut, const Twist& t) {
  for (const auto& gen : aut.generators)
    if (twist_sign(gen, t) < 0) return true;
  return false;
}

inline bool is_zero_generator(const CanonicalForm& cf, const Twist& t) { return is_zero_generator(automorphisms(cf), t); }

// Rebuilds the canonical representative from its encoding.
inline ModularGraph decode_encoding(const std::string& encoding) {
  if (encoding.size() < 8 || encoding.compare(0, 4, "MG1:") != 0) throw std::invalid_argument("decode_encoding: not an MG1 encoding");
  std::size_t pos = 4;
  auto next = [&]() -> int {
    if (pos >= encoding.size()) throw std::invalid_argument("decode_encoding: truncated");
    return static_cast<unsigned char>(encoding[pos++]);
  };
  int V = next(), E = next(), n = next();
  bool labeled = next() == 1;
  ModularGraph g;
  g.genus.assign(static_cast<std::size_t>(V), 0);
  g.legs.assign(static_cast<std::size_t>(n), 0);
  std::vector<int> loops(static_cast<std::size_t>(V), 0);
  int placed = 0;
  for (int v = 0; v < V; ++v) {
    g.genus[static_cast<std::size_t>(v)] = next();
    loops[static_cast<std::size_t>(v)] = next();
    int k = next();
    for (int i = 0; i < k; ++i) {
      int slot = labeled ? next() - 1 : placed;
      if (slot < 0 || slot >= n) throw std::invalid_argument("decode_encoding: bad leg");
      g.legs[static_cast<std::size_t>(slot)] = v;
      ++placed;
    }
  }
  std::vector<int> mult(static_cast<std::size_t>(V * V), 0);
  for (int i = 0; i < V; ++i)
    for (int j = i + 1; j < V; ++j) mult[static_cast<std::size_t>(i * V + j)] = next();
  for (int i = 0; i < V; ++i) {
    for (int k = 0; k < loops[static_cast<std::size_t>(i)]; ++k) g.edges.push_back(Edge{i, i});
    for (int j = i + 1; j < V; ++j)
      for (int k = 0; k < mult[static_cast<std::size_t>(i * V + j)]; ++k) g.edges.push_back(Edge{i, j});
  }
  if (g.num_edges() != E || placed != n || pos != encoding.size()) throw std::invalid_argument("decode_encoding: inconsistent tables");
  return g;
}

// Human-readable form of an encoding: "MG1:" followed by dot-separated byte values.
inline std::string encoding_text(const std::string& encoding) {
  std::string out = encoding.substr(0, 4);
  for (std::size_t i = 4; i < encoding.size(); ++i) {
    if (i > 4) out += '.';
    out += std::to_string(static_cast<unsigned>(static_cast<unsigned char>(encoding[i])));
  }
  return out;
}

}  // namespace gcx
