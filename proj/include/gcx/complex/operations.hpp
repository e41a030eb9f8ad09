#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gcx/complex/assemble.hpp"
#include "gcx/linalg/solve.hpp"

namespace gcx {

namespace detail {

inline std::unordered_map<std::string, std::size_t> graph_index(const ChainComplexData& c) {
  std::unordered_map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < c.graphs.size(); ++i) idx.emplace(c.graphs[i].encoding, i);
  return idx;
}

// Position in its degree of the first basis element on each graph.
inline std::vector<std::size_t> first_basis_position(const ChainComplexData& c) {
  std::vector<std::size_t> pos(c.graphs.size(), static_cast<std::size_t>(-1));
  for (const auto& [k, b] : c.basis)
    for (std::size_t j = b.size(); j-- > 0;) pos[b[j].graph] = j;
  return pos;
}

inline GraphMap leg_swap_map(const ModularGraph& g, int leg) {
  auto m = GraphMap::identity(g);
  std::swap(m.leg_map[static_cast<std::size_t>(leg)], m.leg_map[static_cast<std::size_t>(leg) + 1]);
  return m;
}

}  // namespace detail

/**
 * Matrix (per degree) of the transposition of legs `leg`+1 and `leg`+2 acting on
 * a complex with labeled legs, including the twist sign of the relabeling.
 */
inline std::map<int, SparseMatrix<Rational>> leg_transposition_action(const ChainComplexData& c, int leg) {
  if (c.meta.leg_mode != LegMode::Labeled) throw std::invalid_argument("leg action needs labeled legs");
  auto idx = detail::graph_index(c);
  auto pos = detail::first_basis_position(c);
  bool lie = c.meta.decoration == "lie";
  if (lie && !c.lie_data) throw std::invalid_argument("leg action on a Lie complex needs its decoration data");
  std::map<int, std::vector<MatrixEntry<Rational>>> trip;
  for (const auto& [k, basis] : c.basis) {
    auto& t = trip[k];
    for (std::size_t col = 0; col < basis.size();) {
      std::size_t gi = basis[col].graph;
      const auto& gamma = c.graphs[gi].graph;
      auto swap = detail::leg_swap_map(gamma, leg);
      auto image = apply_map(gamma, swap);
      auto tcf = canonicalize(image, LegMode::Labeled);
      auto total = compose(tcf.relabeling, swap);
      int sign = twist_sign(total, c.meta.twist);
      auto it = idx.find(tcf.encoding);
      if (it == idx.end()) throw std::logic_error("leg action: relabeled generator missing");
      std::size_t target_pos = pos[it->second];
      if (!lie) {
        t.push_back({target_pos, col, Rational(sign)});
        ++col;
        continue;
      }
      const auto& src = (*c.lie_data)[gi];
      const auto& dst = (*c.lie_data)[it->second];
      auto hmap = total.half_edge_map(gamma.num_edges());
      for (std::size_t j = 0; j < src.dim(); ++j, ++col) {
        detail::QRow img;
        for (auto& [tuple, s] : detail::expand_lie_tuple(src.vertex_flags, src.selected[j])) {
          WordTuple y(tuple.size());
          for (std::size_t v = 0; v < tuple.size(); ++v) {
            auto& w = y[static_cast<std::size_t>(total.vertex_map[v])];
            w = tuple[v];
            for (auto& f : w) f = hmap[static_cast<std::size_t>(f)];
            rotate_min_first(w);
          }
          auto loc = dst.orbits->locate(std::move(y));
          if (loc.orbit < 0) continue;
          auto& slot = img[static_cast<std::size_t>(loc.orbit)];
          slot += s * loc.sign * sign;
          if (slot == 0) img.erase(static_cast<std::size_t>(loc.orbit));
        }
        detail::QRow hist;
        if (!detail::reduce_against(dst.pivots, img, hist)) throw std::logic_error("leg action leaves the decoration span");
        for (const auto& [sel, coeff] : hist) t.push_back({target_pos + sel, col, -coeff});
      }
    }
  }
  std::map<int, SparseMatrix<Rational>> out;
  for (auto& [k, t] : trip) out[k] = SparseMatrix<Rational>::from_triplets(c.dim(k), c.dim(k), std::move(t));
  return out;
}

/**
 * Sign-isotypic part of a complex with labeled legs: per degree the common
 * kernel of (tau_i + 1) over adjacent leg transpositions, i.e. the image of
 * the projector (1/n!) Σ sgn(σ) σ. Basis vectors come from an RREF kernel basis,
 * so coordinates in it are read off at the free columns; the restricted
 * differential is checked to stay inside the subspace.
 */
inline ChainComplexData antiinvariant_subcomplex(const ChainComplexData& c) {
  if (c.meta.n <= 1) return c;
  std::vector<std::map<int, SparseMatrix<Rational>>> actions;
  for (int i = 0; i + 1 < c.meta.n; ++i) actions.push_back(leg_transposition_action(c, i));
  ChainComplexData out;
  out.meta = c.meta;
  out.meta.leg_mode = LegMode::Unlabeled;
  out.graphs = c.graphs;
  std::map<int, std::vector<RationalVector>> kernels;
  std::map<int, std::vector<std::size_t>> free_cols;
  for (const auto& [k, basis] : c.basis) {
    std::size_t d = basis.size();
    std::vector<MatrixEntry<Rational>> stacked;
    for (std::size_t i = 0; i < actions.size(); ++i) {
      for (const auto& e : actions[i].at(k).entries()) stacked.push_back({i * d + e.row, e.col, e.value});
      for (std::size_t j = 0; j < d; ++j) stacked.push_back({i * d + j, j, Rational(1)});
    }
    auto m = SparseMatrix<Rational>::from_triplets(actions.size() * d, d, std::move(stacked));
    auto kb = kernel_with_free_columns(m);
    auto& ker = kb.vectors;
    auto& fc = free_cols[k];
    fc = kb.free_columns;
    auto& b = out.basis[k];
    for (std::size_t j = 0; j < ker.size(); ++j) {
      BasisElement be = basis[fc[j]];
      be.label = "anti[" + std::to_string(j) + "]";
      b.push_back(be);
    }
    kernels[k] = std::move(ker);
  }
  for (const auto& [k, m] : c.contraction) {
    const auto& src = kernels[k];
    const auto& dst = kernels[k - 1];
    const auto& dst_free = free_cols[k - 1];
    std::vector<MatrixEntry<Rational>> trip;
    for (std::size_t j = 0; j < src.size(); ++j) {
      auto y = m.apply(src[j]);
      RationalVector back(y.size(), Rational(0));
      for (std::size_t i = 0; i < dst.size(); ++i) {
        const Rational& coeff = y[dst_free[i]];
        if (coeff == 0) continue;
        trip.push_back({i, j, coeff});
        for (std::size_t r = 0; r < y.size(); ++r) back[r] += coeff * dst[i][r];
      }
      if (back != y) throw std::logic_error("antiinvariant_subcomplex: differential leaves the anti-invariants");
    }
    out.contraction[k] = SparseMatrix<Rational>::from_triplets(dst.size(), src.size(), std::move(trip));
  }
  check_square_zero(out);
  return out;
}

// A graph has an egg when it carries a tadpole or a vertex of positive genus.
inline bool has_egg(const ModularGraph& g) { return g.has_tadpole() || g.has_positive_genus_vertex(); }

/**
 * Egg part of a Com-bar complex. Under contraction no egg-free generator
 * reaches an egg graph, so the egg graphs span a quotient for contraction and
 * a subcomplex for the expansion differential. The closure is checked.
 */
inline ChainComplexData egg_subcomplex(const ChainComplexData& c) {
  if (c.meta.decoration != "com-bar") throw std::invalid_argument("egg_subcomplex requires the com-bar decoration");
  ChainComplexData out;
  out.meta = c.meta;
  out.graphs = c.graphs;
  out.direction = c.direction;
  std::map<int, std::vector<std::size_t>> new_pos;
  for (const auto& [k, basis] : c.basis) {
    auto& np = new_pos[k];
    np.assign(basis.size(), static_cast<std::size_t>(-1));
    auto& b = out.basis[k];
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (has_egg(c.graphs[basis[j].graph].graph)) {
        np[j] = b.size();
        b.push_back(basis[j]);
      }
  }
  for (const auto& [k, m] : c.contraction) {
    std::vector<MatrixEntry<Rational>> trip;
    const auto& rows = new_pos[k - 1];
    const auto& cols = new_pos[k];
    for (const auto& e : m.entries()) {
      bool r_egg = rows[e.row] != static_cast<std::size_t>(-1);
      bool c_egg = cols[e.col] != static_cast<std::size_t>(-1);
      if (r_egg && !c_egg)
        throw std::logic_error("egg_subcomplex: egg-free generator contracts onto an egg graph");
      if (r_egg && c_egg) trip.push_back({rows[e.row], cols[e.col], e.value});
    }
    out.contraction[k] = SparseMatrix<Rational>::from_triplets(out.dim(k - 1), out.dim(k), std::move(trip));
  }
  check_square_zero(out);
  return out;
}

/**
 * Affine map from edge counts to homological degrees of Γ_{g,n} for the Lie
 * sector: i = sigma·E + a·g + b·n + c.
 */
struct DegreeCalibration {
  int sigma = -1, a = 3, b = 1, c = -3;
  int gamma_degree(int edges, int g, int n) const { return sigma * edges + a * g + b * n + c; }
  std::string describe() const {
    return "i = " + std::to_string(sigma) + "*E + " + std::to_string(a) + "*g + " + std::to_string(b) + "*n + " +
           std::to_string(c);
  }
};

namespace detail {
inline std::map<int, std::size_t> nonzero(const std::map<int, std::size_t>& h) {
  std::map<int, std::size_t> out;
  for (const auto& [k, d] : h)
    if (d) out[k] = d;
  return out;
}
}  // namespace detail

/**
 * Fits the Lie degree map on four small anchors: a single class in Γ-degree 0
 * for (0,3) and (0,4); classes of dims 1,1 in Γ-degrees 0,2 for (1,3); dims
 * 1,3 in Γ-degrees 0,2 for (1,4). Throws unless exactly one sign works.
 */
inline DegreeCalibration calibrate_lie_degrees() {
  auto hom = [](int g, int n) { return detail::nonzero(homology_dims(build_sector(Sector::Lie, g, n))); };
  auto h03 = hom(0, 3), h04 = hom(0, 4), h13 = hom(1, 3), h14 = hom(1, 4);
  if (h03.size() != 1 || h04.size() != 1) throw std::runtime_error("calibration: genus-0 anchors are not single classes");
  std::vector<DegreeCalibration> fits;
  for (int sigma : {1, -1}) {
    DegreeCalibration cal;
    cal.sigma = sigma;
    int e0 = h03.begin()->first, e1 = h04.begin()->first;
    cal.b = -sigma * (e1 - e0);
    cal.c = -sigma * e0 - 3 * cal.b;
    int lowest = 1 << 20;
    for (const auto& [e, d] : h13) lowest = std::min(lowest, sigma * e + 3 * cal.b + cal.c);
    cal.a = -lowest;
    auto shifted = [&](const std::map<int, std::size_t>& h, int g, int n) {
      std::map<int, std::size_t> out;
      for (const auto& [e, d] : h) out[cal.gamma_degree(e, g, n)] = d;
      return out;
    };
    if (shifted(h13, 1, 3) == std::map<int, std::size_t>{{0, 1}, {2, 1}} &&
        shifted(h14, 1, 4) == std::map<int, std::size_t>{{0, 1}, {2, 3}})
      fits.push_back(cal);
  }
  if (fits.size() != 1) throw std::runtime_error("calibration: anchors do not determine a unique degree map");
  return fits.front();
}

// Homology of the Lie sector indexed by Γ-degree.
inline std::map<int, std::size_t> lie_gamma_homology(const ChainComplexData& c, const DegreeCalibration& cal,
                                                     RankMode mode = RankMode::ModularVerified) {
  std::map<int, std::size_t> out;
  for (const auto& [e, d] : homology_dims(c, mode)) out[cal.gamma_degree(e, c.meta.g, c.meta.n)] += d;
  return out;
}

using BigradedTable = std::map<std::pair<int, int>, std::size_t>;  // (r edges, s internal degree) -> dim
using GammaDims = std::map<std::pair<int, int>, std::map<int, std::size_t>>;

// Vertex types (genus, valence) occurring in stable graphs of type (g, n).
inline std::set<std::pair<int, int>> vertex_types(int g, int n) {
  std::set<std::pair<int, int>> out;
  for (const auto& cf : enumerate_graphs(g, n, GraphConstraints{}))
    for (int v = 0; v < cf.graph.num_vertices(); ++v) out.insert({cf.graph.genus[static_cast<std::size_t>(v)], cf.graph.valence(v)});
  return out;
}

/**
 * Dimensions of the underlying bigraded space of the Feynman transform of
 * the homology operad: for every graph with r edges, products of vertex-label
 * dimensions whose degrees sum to s.
 */
inline BigradedTable bigraded_support(int g, int n, const GammaDims& gamma_dims) {
  std::string missing;
  for (const auto& t : vertex_types(g, n))
    if (!gamma_dims.count(t)) missing += " (" + std::to_string(t.first) + "," + std::to_string(t.second) + ")";
  if (!missing.empty()) throw std::invalid_argument("bigraded_support: missing homology for" + missing);
  BigradedTable table;
  for (const auto& cf : enumerate_graphs(g, n, GraphConstraints{})) {
    std::map<int, std::size_t> acc{{0, 1}};
    for (int v = 0; v < cf.graph.num_vertices(); ++v) {
      const auto& h = gamma_dims.at({cf.graph.genus[static_cast<std::size_t>(v)], cf.graph.valence(v)});
      std::map<int, std::size_t> next;
      for (const auto& [s, d] : acc)
        for (const auto& [i, e] : h)
          if (e) next[s + i] += d * e;
      acc.swap(next);
    }
    for (const auto& [s, d] : acc) table[{cf.graph.num_edges(), s}] += d;
  }
  return table;
}

}  // namespace gcx
