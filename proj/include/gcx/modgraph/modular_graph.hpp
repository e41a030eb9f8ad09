#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcx {

struct Edge {
  int tail = 0;
  int head = 0;
  bool is_loop() const { return tail == head; }
};

/**
 * A modular graph in normalized half-edge layout.
 *
 * Edge i owns half-edges 2i (at its tail) and 2i+1 (at its head); leg j is
 * half-edge 2E+j and carries label j+1. The involution swaps 2i and 2i+1 and
 * fixes legs. The index order of edges, vertices and legs is the "standard"
 * orientation datum against which twist signs are measured.
 */
class ModularGraph {
 public:
  std::vector<int> genus;
  std::vector<Edge> edges;
  std::vector<int> legs;

  ModularGraph() = default;
  ModularGraph(std::vector<int> genus_, std::vector<Edge> edges_, std::vector<int> legs_)
      : genus(std::move(genus_)), edges(std::move(edges_)), legs(std::move(legs_)) {}

  // genus-g vertex carrying n legs
  static ModularGraph corolla(int g, int n) { return ModularGraph({g}, {}, std::vector<int>(static_cast<std::size_t>(n), 0)); }
  // genus-0 vertex with `loops` tadpoles and n legs
  static ModularGraph bouquet(int loops, int n) {
    return ModularGraph({0}, std::vector<Edge>(static_cast<std::size_t>(loops), Edge{0, 0}),
                        std::vector<int>(static_cast<std::size_t>(n), 0));
  }

  int num_vertices() const { return static_cast<int>(genus.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_legs() const { return static_cast<int>(legs.size()); }
  int num_half_edges() const { return 2 * num_edges() + num_legs(); }

  int first_betti() const { return num_edges() - num_vertices() + 1; }
  int total_genus() const { return first_betti() + std::accumulate(genus.begin(), genus.end(), 0); }

  int vertex_of(int half_edge) const {
    int e2 = 2 * num_edges();
    if (half_edge < e2) {
      const Edge& e = edges[static_cast<std::size_t>(half_edge / 2)];
      return half_edge % 2 == 0 ? e.tail : e.head;
    }
    return legs[static_cast<std::size_t>(half_edge - e2)];
  }
  int partner(int half_edge) const { return half_edge < 2 * num_edges() ? (half_edge ^ 1) : half_edge; }
  bool is_leg(int half_edge) const { return half_edge >= 2 * num_edges(); }
  // 1-based label of a leg half-edge, 0 for internal half-edges
  int leg_label(int half_edge) const { return is_leg(half_edge) ? half_edge - 2 * num_edges() + 1 : 0; }

  // Half-edges at v in increasing order.
  std::vector<int> flags_at(int v) const {
    std::vector<int> out;
    for (int h = 0; h < num_half_edges(); ++h)
      if (vertex_of(h) == v) out.push_back(h);
    return out;
  }

  std::vector<int> valences() const {
    std::vector<int> val(genus.size(), 0);
    for (const auto& e : edges) {
      ++val[static_cast<std::size_t>(e.tail)];
      ++val[static_cast<std::size_t>(e.head)];
    }
    for (int v : legs) ++val[static_cast<std::size_t>(v)];
    return val;
  }
  int valence(int v) const { return valences()[static_cast<std::size_t>(v)]; }

  int num_loops() const {
    return static_cast<int>(std::count_if(edges.begin(), edges.end(), [](const Edge& e) { return e.is_loop(); }));
  }
  bool has_tadpole() const { return num_loops() > 0; }
  bool has_positive_genus_vertex() const {
    return std::any_of(genus.begin(), genus.end(), [](int g) { return g > 0; });
  }

  bool is_connected() const {
    if (genus.empty()) return false;
    std::vector<int> parent(genus.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    int comps = num_vertices();
    for (const auto& e : edges) {
      int a = find(e.tail), b = find(e.head);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --comps;
      }
    }
    return comps == 1;
  }

  bool is_stable() const {
    auto val = valences();
    for (std::size_t v = 0; v < genus.size(); ++v)
      if (2 * genus[v] + val[v] < 3) return false;
    return true;
  }

  // Throws std::invalid_argument naming the first violated invariant.
  void validate() const {
    int V = num_vertices();
    for (int g : genus)
      if (g < 0) throw std::invalid_argument("ModularGraph: negative vertex genus");
    for (const auto& e : edges)
      if (e.tail < 0 || e.tail >= V || e.head < 0 || e.head >= V)
        throw std::invalid_argument("ModularGraph: edge endpoint out of range");
    for (int v : legs)
      if (v < 0 || v >= V) throw std::invalid_argument("ModularGraph: leg attached to missing vertex");
    if (!is_connected()) throw std::invalid_argument("ModularGraph: not connected");
    if (!is_stable()) throw std::invalid_argument("ModularGraph: unstable vertex");
  }

  std::string describe() const {
    std::ostringstream os;
    os << "V=" << num_vertices() << " g=[";
    for (std::size_t i = 0; i < genus.size(); ++i) os << (i ? "," : "") << genus[i];
    os << "] E=[";
    for (std::size_t i = 0; i < edges.size(); ++i) os << (i ? " " : "") << edges[i].tail << "-" << edges[i].head;
    os << "] L=[";
    for (std::size_t i = 0; i < legs.size(); ++i) os << (i ? "," : "") << legs[i];
    os << "]";
    return os.str();
  }
};

inline bool is_stable_type(int g, int n) { return g >= 0 && n >= 0 && 2 * g + n >= 3; }

}  // namespace gcx
