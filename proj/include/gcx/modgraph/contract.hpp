#pragma once

#include <stdexcept>
#include <vector>

#include "gcx/modgraph/modular_graph.hpp"
#include "gcx/modgraph/twist.hpp"
#include "gcx/permutation.hpp"

namespace gcx {

/**
 * Result of contracting one edge. A non-loop edge merges its endpoints into
 * vertex 0 of the result (remaining vertices keep their relative order); a
 * loop raises the genus of its vertex. Remaining edges and legs keep order.
 */
struct Contraction {
  ModularGraph graph;
  bool loop = false;
  int edge_order_sign = 1;   // moving the contracted edge to the front of the edge order
  int vertex_dir_sign = 1;   // moving tail, head to the front of the vertex order
  int merged_vertex = 0;     // vertex of the result carrying the contracted edge's endpoints
  std::vector<int> flag_map; // old half-edge -> new half-edge, -1 for the two removed ones

  int sign(const Twist& t) const { return t.kind == TwistKind::EdgeOrder ? edge_order_sign : vertex_dir_sign; }
};

inline Contraction contract_edge(const ModularGraph& g, int edge) {
  if (edge < 0 || edge >= g.num_edges()) throw std::invalid_argument("contract_edge: not an edge");
  const Edge ce = g.edges[static_cast<std::size_t>(edge)];
  Contraction c;
  c.loop = ce.is_loop();
  c.edge_order_sign = edge % 2 == 0 ? 1 : -1;
  int V = g.num_vertices();
  std::vector<int> vmap(static_cast<std::size_t>(V));
  if (c.loop) {
    for (int v = 0; v < V; ++v) vmap[static_cast<std::size_t>(v)] = v;
    c.graph.genus = g.genus;
    c.graph.genus[static_cast<std::size_t>(ce.tail)] += 1;
    c.merged_vertex = ce.tail;
  } else {
    std::vector<int> seq{ce.tail, ce.head};
    for (int v = 0; v < V; ++v)
      if (v != ce.tail && v != ce.head) seq.push_back(v);
    c.vertex_dir_sign = permutation_sign(seq);
    c.graph.genus.assign(static_cast<std::size_t>(V - 1), 0);
    c.graph.genus[0] = g.genus[static_cast<std::size_t>(ce.tail)] + g.genus[static_cast<std::size_t>(ce.head)];
    vmap[static_cast<std::size_t>(ce.tail)] = 0;
    vmap[static_cast<std::size_t>(ce.head)] = 0;
    for (std::size_t i = 2; i < seq.size(); ++i) {
      vmap[static_cast<std::size_t>(seq[i])] = static_cast<int>(i) - 1;
      c.graph.genus[i - 1] = g.genus[static_cast<std::size_t>(seq[i])];
    }
    c.merged_vertex = 0;
  }
  int E = g.num_edges();
  c.flag_map.assign(static_cast<std::size_t>(g.num_half_edges()), -1);
  for (int i = 0, k = 0; i < E; ++i) {
    if (i == edge) continue;
    const Edge& e = g.edges[static_cast<std::size_t>(i)];
    c.graph.edges.push_back(Edge{vmap[static_cast<std::size_t>(e.tail)], vmap[static_cast<std::size_t>(e.head)]});
    c.flag_map[static_cast<std::size_t>(2 * i)] = 2 * k;
    c.flag_map[static_cast<std::size_t>(2 * i + 1)] = 2 * k + 1;
    ++k;
  }
  for (int j = 0; j < g.num_legs(); ++j) {
    c.graph.legs.push_back(vmap[static_cast<std::size_t>(g.legs[static_cast<std::size_t>(j)])]);
    c.flag_map[static_cast<std::size_t>(2 * E + j)] = 2 * (E - 1) + j;
  }
  return c;
}

}  // namespace gcx
