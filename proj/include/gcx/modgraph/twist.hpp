#pragma once

#include <string>
#include <vector>

#include "gcx/modgraph/modular_graph.hpp"
#include "gcx/permutation.hpp"

namespace gcx {

enum class TwistKind { EdgeOrder, VertexOrderEdgeDir };

/**
 * Orientation datum carried by generators. EdgeOrder is det(E);
 * VertexOrderEdgeDir is det(V) with a direction on every edge. When
 * `leg_order` is set the datum is additionally tensored with det(legs).
 */
struct Twist {
  TwistKind kind = TwistKind::EdgeOrder;
  bool leg_order = false;

  bool operator==(const Twist&) const = default;

  std::string name() const {
    std::string s = kind == TwistKind::EdgeOrder ? "edge-order" : "vertex-order-edge-dir";
    return leg_order ? s + "+legs" : s;
  }
};

/**
 * An isomorphism between graphs in normalized layout, as maps on vertices,
 * edges and legs. `flipped[i]` records that the tail of edge i lands on the
 * head of edge edge_map[i].
 */
struct GraphMap {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
  std::vector<char> flipped;
  std::vector<int> leg_map;

  static GraphMap identity(const ModularGraph& g) {
    GraphMap m;
    m.vertex_map = identity_permutation(static_cast<std::size_t>(g.num_vertices()));
    m.edge_map = identity_permutation(static_cast<std::size_t>(g.num_edges()));
    m.flipped.assign(static_cast<std::size_t>(g.num_edges()), 0);
    m.leg_map = identity_permutation(static_cast<std::size_t>(g.num_legs()));
    return m;
  }

  int map_half_edge(int h, int num_edges) const {
    if (h < 2 * num_edges) {
      auto i = static_cast<std::size_t>(h / 2);
      int side = (h % 2) ^ (flipped[i] ? 1 : 0);
      return 2 * edge_map[i] + side;
    }
    return 2 * num_edges + leg_map[static_cast<std::size_t>(h - 2 * num_edges)];
  }

  std::vector<int> half_edge_map(int num_edges) const {
    std::vector<int> out(static_cast<std::size_t>(2 * num_edges) + leg_map.size());
    for (std::size_t h = 0; h < out.size(); ++h) out[h] = map_half_edge(static_cast<int>(h), num_edges);
    return out;
  }

  // (a ∘ b): apply b first
  friend GraphMap compose(const GraphMap& a, const GraphMap& b) {
    GraphMap r;
    r.vertex_map = gcx::compose(a.vertex_map, b.vertex_map);
    r.edge_map = gcx::compose(a.edge_map, b.edge_map);
    r.flipped.resize(b.flipped.size());
    for (std::size_t i = 0; i < b.flipped.size(); ++i)
      r.flipped[i] = static_cast<char>(b.flipped[i] ^ a.flipped[static_cast<std::size_t>(b.edge_map[i])]);
    r.leg_map = gcx::compose(a.leg_map, b.leg_map);
    return r;
  }

  GraphMap inverse() const {
    GraphMap r;
    r.vertex_map = inverse_permutation(vertex_map);
    r.edge_map = inverse_permutation(edge_map);
    r.flipped.resize(flipped.size());
    for (std::size_t i = 0; i < flipped.size(); ++i) r.flipped[static_cast<std::size_t>(edge_map[i])] = flipped[i];
    r.leg_map = inverse_permutation(leg_map);
    return r;
  }

  bool operator==(const GraphMap&) const = default;
};

// Sign by which the map carries the source's standard twist datum to the target's.
inline int twist_sign(const GraphMap& m, const Twist& t) {
  int s = 1;
  if (t.kind == TwistKind::EdgeOrder) {
    s *= permutation_sign(m.edge_map);
  } else {
    s *= permutation_sign(m.vertex_map);
    for (char f : m.flipped)
      if (f) s = -s;
  }
  if (t.leg_order) s *= permutation_sign(m.leg_map);
  return s;
}

// Applies a map to a graph: the image graph has the target's normalized layout.
inline ModularGraph apply_map(const ModularGraph& g, const GraphMap& m) {
  ModularGraph out;
  out.genus.assign(g.genus.size(), 0);
  for (std::size_t v = 0; v < g.genus.size(); ++v) out.genus[static_cast<std::size_t>(m.vertex_map[v])] = g.genus[v];
  out.edges.assign(g.edges.size(), Edge{});
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    int t = m.vertex_map[static_cast<std::size_t>(g.edges[i].tail)];
    int h = m.vertex_map[static_cast<std::size_t>(g.edges[i].head)];
    if (m.flipped[i]) std::swap(t, h);
    out.edges[static_cast<std::size_t>(m.edge_map[i])] = Edge{t, h};
  }
  out.legs.assign(g.legs.size(), 0);
  for (std::size_t j = 0; j < g.legs.size(); ++j)
    out.legs[static_cast<std::size_t>(m.leg_map[j])] = m.vertex_map[static_cast<std::size_t>(g.legs[j])];
  return out;
}

// Structural equality of graphs in normalized layout (edges compared as directed).
inline bool same_layout(const ModularGraph& a, const ModularGraph& b) {
  if (a.genus != b.genus || a.legs != b.legs || a.edges.size() != b.edges.size()) return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    if (a.edges[i].tail != b.edges[i].tail || a.edges[i].head != b.edges[i].head) return false;
  return true;
}

}  // namespace gcx
