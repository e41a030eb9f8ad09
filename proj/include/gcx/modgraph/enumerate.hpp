#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gcx/modgraph/canonical.hpp"
#include "gcx/modgraph/modular_graph.hpp"

namespace gcx {

struct GraphConstraints {
  bool allow_tadpoles = true;
  bool allow_positive_genus = true;

  bool admits(const ModularGraph& g) const {
    return (allow_tadpoles || !g.has_tadpole()) && (allow_positive_genus || !g.has_positive_genus_vertex());
  }
};

// Upper bound on the edge count of a stable graph of type (g, n).
inline int max_edges_for_type(int g, int n) { return 3 * g - 3 + n; }

/**
 * All graphs obtained from `g` by one vertex expansion: splitting a vertex
 * along a new edge, or (when genus is allowed) trading one unit of vertex
 * genus for a tadpole. Results are stable but not deduplicated.
 */
inline std::vector<ModularGraph> one_edge_expansions(const ModularGraph& g, bool allow_genus) {
  std::vector<ModularGraph> out;
  int V = g.num_vertices();
  for (int v = 0; v < V; ++v) {
    int h = g.genus[static_cast<std::size_t>(v)];
    if (allow_genus && h >= 1) {
      ModularGraph x = g;
      x.genus[static_cast<std::size_t>(v)] -= 1;
      x.edges.push_back(Edge{v, v});
      out.push_back(std::move(x));
    }
    auto flags = g.flags_at(v);
    int k = static_cast<int>(flags.size());
    if (k > 24) throw std::invalid_argument("one_edge_expansions: vertex valence too large");
    // flags[0] stays at v
    std::uint32_t masks = k == 0 ? 1u : (1u << (k - 1));
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
      std::uint32_t moved = mask << 1;
      int moved_count = __builtin_popcount(moved);
      int kept_count = k - moved_count;
      for (int h2 = 0; h2 <= (allow_genus ? h : 0); ++h2) {
        int h1 = h - h2;
        if (2 * h1 + kept_count + 1 < 3 || 2 * h2 + moved_count + 1 < 3) continue;
        ModularGraph x = g;
        int w = V;
        x.genus[static_cast<std::size_t>(v)] = h1;
        x.genus.push_back(h2);
        for (int b = 1; b < k; ++b) {
          if (!(moved >> b & 1u)) continue;
          int f = flags[static_cast<std::size_t>(b)];
          if (f < 2 * g.num_edges()) {
            auto& e = x.edges[static_cast<std::size_t>(f / 2)];
            (f % 2 == 0 ? e.tail : e.head) = w;
          } else {
            x.legs[static_cast<std::size_t>(f - 2 * g.num_edges())] = w;
          }
        }
        x.edges.push_back(Edge{v, w});
        out.push_back(std::move(x));
      }
    }
  }
  return out;
}

/**
 * Isomorphism classes of stable graphs of type (g, n), grouped by edge count
 * 0..max_edges. Every stable graph contracts to the genus-g corolla, so
 * iterated expansion from it reaches every class; without positive-genus
 * vertices the bouquet of g tadpoles plays that role. Within each level the
 * classes are sorted by encoding.
 */
inline std::vector<std::vector<CanonicalForm>> enumerate_graphs_by_edges(int g, int n, GraphConstraints constraints,
                                                                         LegMode mode = LegMode::Labeled,
                                                                         int max_edges = -1) {
  if (!is_stable_type(g, n)) throw std::invalid_argument("unstable type");
  int top = max_edges_for_type(g, n);
  if (max_edges < 0 || max_edges > top) max_edges = top;
  bool genus = constraints.allow_positive_genus;
  ModularGraph start = genus ? ModularGraph::corolla(g, n) : ModularGraph::bouquet(g, n);
  int start_edges = start.num_edges();
  std::vector<std::vector<CanonicalForm>> levels(static_cast<std::size_t>(std::max(max_edges, -1) + 1));
  if (start_edges > max_edges) return levels;
  std::vector<CanonicalForm> current{canonicalize(start, mode)};
  for (int e = start_edges;; ++e) {
    std::sort(current.begin(), current.end(), [](const auto& a, const auto& b) { return a.encoding < b.encoding; });
    for (const auto& cf : current)
      if (constraints.admits(cf.graph)) levels[static_cast<std::size_t>(e)].push_back(cf);
    if (e == max_edges) break;
    std::unordered_map<std::string, std::size_t> seen;
    std::vector<CanonicalForm> next;
    for (const auto& cf : current) {
      for (auto& x : one_edge_expansions(cf.graph, genus)) {
        auto c = canonicalize(x, mode);
        if (seen.emplace(c.encoding, next.size()).second) next.push_back(std::move(c));
      }
    }
    current = std::move(next);
  }
  return levels;
}

inline std::vector<CanonicalForm> enumerate_graphs(int g, int n, GraphConstraints constraints,
                                                   LegMode mode = LegMode::Labeled, int max_edges = -1) {
  std::vector<CanonicalForm> all;
  for (auto& level : enumerate_graphs_by_edges(g, n, constraints, mode, max_edges))
    for (auto& cf : level) all.push_back(std::move(cf));
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.encoding < b.encoding; });
  return all;
}

}  // namespace gcx
