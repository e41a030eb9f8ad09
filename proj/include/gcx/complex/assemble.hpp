#pragma once

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gcx/complex/chain_complex.hpp"
#include "gcx/complex/lie_complex.hpp"
#include "gcx/decor/decoration.hpp"
#include "gcx/modgraph/contract.hpp"

namespace gcx {

// The Lie twist carries det(legs); anti-invariants therefore drop it.
inline constexpr bool kLieTwistHasLegDeterminant = true;

namespace detail {

inline bool vertices_supported(const ModularGraph& g, const DecorationSystem& deco) {
  auto val = g.valences();
  for (std::size_t v = 0; v < g.genus.size(); ++v)
    if (deco.space_dim(g.genus[v], val[v]) == 0) return false;
  return true;
}

// Levels of canonical graphs whose vertices carry a nonzero decoration space.
inline std::vector<std::vector<CanonicalForm>> supported_levels(int g, int n, const DecorationSystem& deco,
                                                                GraphConstraints cons, LegMode mode, int edge_cap) {
  auto levels = enumerate_graphs_by_edges(g, n, cons, mode, edge_cap);
  for (auto& level : levels)
    std::erase_if(level, [&](const CanonicalForm& cf) { return !vertices_supported(cf.graph, deco); });
  return levels;
}

inline int first_nonempty(const std::vector<std::vector<CanonicalForm>>& levels) {
  for (std::size_t k = 0; k < levels.size(); ++k)
    if (!levels[k].empty()) return static_cast<int>(k);
  return static_cast<int>(levels.size());
}

inline ChainComplexData assemble_commutative(int g, int n, const DecorationSystem& deco, Twist twist,
                                             GraphConstraints cons, LegMode mode, int edge_cap) {
  ChainComplexData c;
  c.meta.g = g;
  c.meta.n = n;
  c.meta.decoration = deco.id();
  c.meta.twist = twist;
  c.meta.constraints = cons;
  c.meta.leg_mode = mode;
  c.meta.edge_cap = edge_cap;
  auto levels = supported_levels(g, n, deco, cons, mode, edge_cap);
  std::vector<std::unordered_map<std::string, std::size_t>> index(levels.size());
  int first = first_nonempty(levels);
  for (int k = first; k < static_cast<int>(levels.size()); ++k) {
    auto& out = c.basis[k];
    for (auto& cf : levels[static_cast<std::size_t>(k)]) {
      auto aut = automorphisms(cf);
      if (is_zero_generator(aut, twist)) continue;
      cf.automorphisms = std::move(aut);
      cf.has_automorphisms = true;
      index[static_cast<std::size_t>(k)].emplace(cf.encoding, out.size());
      out.push_back(BasisElement{c.graphs.size(), "1", cf.automorphisms.order});
      c.graphs.push_back(std::move(cf));
    }
  }
  bool loops_raise_genus = deco.kind() == DecorationKind::ComBar;
  for (int k = first + 1; k < static_cast<int>(levels.size()); ++k) {
    const auto& cols = c.basis[k];
    const auto& target_index = index[static_cast<std::size_t>(k - 1)];
    std::vector<MatrixEntry<Rational>> trip;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto& gamma = c.graphs[cols[j].graph].graph;
      for (int e = 0; e < gamma.num_edges(); ++e) {
        auto con = contract_edge(gamma, e);
        if (con.loop && !loops_raise_genus) continue;
        auto tcf = canonicalize(con.graph, mode);
        auto it = target_index.find(tcf.encoding);
        if (it == target_index.end()) continue;
        trip.push_back({it->second, j, Rational(con.sign(twist) * tcf.twist_sign(twist))});
      }
    }
    c.contraction[k] = SparseMatrix<Rational>::from_triplets(c.basis[k - 1].size(), cols.size(), std::move(trip));
  }
  return c;
}

}  // namespace detail

/**
 * Graded generators and contraction matrices of the Feynman transform of
 * `deco` in type (g, n). In Unlabeled mode legs are interchangeable and the
 * result is the complex of S_n-coinvariants for the character carried by
 * twist.leg_order. Throws DifferentialSquareError when d∘d != 0.
 */
inline ChainComplexData assemble(int g, int n, const DecorationSystem& deco, Twist twist, GraphConstraints cons,
                                 LegMode mode = LegMode::Labeled, int edge_cap = -1) {
  if (!is_stable_type(g, n)) throw std::invalid_argument("unstable type");
  ChainComplexData c = deco.kind() == DecorationKind::Lie ? assemble_lie(g, n, twist, cons, mode, edge_cap)
                                                          : detail::assemble_commutative(g, n, deco, twist, cons, mode, edge_cap);
  check_square_zero(c);
  return c;
}

struct SectorSetup {
  std::unique_ptr<DecorationSystem> deco;
  Twist twist;
  GraphConstraints constraints;
  std::string degree_convention;
};

inline SectorSetup sector_setup(Sector s, bool anti) {
  SectorSetup st;
  switch (s) {
    case Sector::ComBar:
      st.deco = com_system(true);
      st.twist = Twist{TwistKind::EdgeOrder, anti};
      st.constraints = {true, true};
      st.degree_convention = "edges";
      break;
    case Sector::Com:
      st.deco = com_system(false);
      st.twist = Twist{TwistKind::EdgeOrder, anti};
      st.constraints = {true, false};
      st.degree_convention = "edges";
      break;
    case Sector::GC2:
      st.deco = com_system(true);
      st.twist = Twist{TwistKind::EdgeOrder, anti};
      st.constraints = {false, false};
      st.degree_convention = "edges-minus-2g";
      break;
    case Sector::Lie:
      st.deco = lie_system();
      st.twist = Twist{TwistKind::VertexOrderEdgeDir, kLieTwistHasLegDeterminant != anti};
      st.constraints = {true, false};
      st.degree_convention = "edges";
      break;
  }
  return st;
}

/**
 * One of the four named complexes. `anti` builds the anti-invariant part
 * directly from graphs with unlabeled legs. GC2 is the quotient of the
 * Com-bar complex by graphs with eggs.
 */
inline ChainComplexData build_sector(Sector s, int g, int n, bool anti = false, int edge_cap = -1) {
  if (s == Sector::GC2 && g < 1) throw std::invalid_argument("gc2 requires g >= 1");
  auto st = sector_setup(s, anti);
  auto c = assemble(g, n, *st.deco, st.twist, st.constraints, anti ? LegMode::Unlabeled : LegMode::Labeled, edge_cap);
  c.meta.sector = s;
  c.meta.degree_convention = st.degree_convention;
  return c;
}

inline ChainComplexData gc2_complex(int g, int n, bool anti = false, int edge_cap = -1) {
  return build_sector(Sector::GC2, g, n, anti, edge_cap);
}

// Reported degree of an edge count under the sector's convention (Lie uses edge counts here).
inline int reported_degree(const ChainComplexData& c, int edges) {
  return c.meta.degree_convention == "edges-minus-2g" ? edges - 2 * c.meta.g : edges;
}

}  // namespace gcx
