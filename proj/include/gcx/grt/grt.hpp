#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/complex/assemble.hpp"
#include "gcx/complex/operations.hpp"
#include "gcx/theta/theta.hpp"

namespace gcx {

// Sparse combination of canonical graphs, keyed by canonical encoding.
using GraphVector = std::map<std::string, Rational>;

inline void add_term(GraphVector& v, const std::string& encoding, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = v.emplace(encoding, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

// Adds c·[g] where g's own edge/leg order is the orientation; zero generators are dropped.
inline void add_graph(GraphVector& v, const ModularGraph& g, const Rational& c, LegMode mode, const Twist& twist) {
  auto cf = canonicalize(g, mode, true);
  if (is_zero_generator(cf.automorphisms, twist)) return;
  add_term(v, cf.encoding, c * cf.twist_sign(twist));
}

/**
 * Contraction differential applied to a combination of canonical graphs.
 * Loops are contracted only when `contract_loops`; targets rejected by
 * `cons` are dropped.
 */
inline GraphVector contract_vector(const GraphVector& x, LegMode mode, const Twist& twist, GraphConstraints cons,
                                   bool contract_loops) {
  GraphVector out;
  for (const auto& [enc, c] : x) {
    auto g = decode_encoding(enc);
    for (int e = 0; e < g.num_edges(); ++e) {
      auto con = contract_edge(g, e);
      if (con.loop && !contract_loops) continue;
      if (!cons.admits(con.graph)) continue;
      add_graph(out, con.graph, c * con.sign(twist), mode, twist);
    }
  }
  return out;
}

// s-gon with one leg per vertex: vertex i carries the leg labeled labels[i]; edges (i, i+1) in dihedral order.
inline ModularGraph labeled_polygon(const std::vector<int>& labels) {
  int s = static_cast<int>(labels.size());
  ModularGraph g;
  g.genus.assign(labels.size(), 0);
  for (int i = 0; i < s; ++i) g.edges.push_back(Edge{i, (i + 1) % s});
  g.legs.assign(labels.size(), 0);
  for (int i = 0; i < s; ++i) g.legs[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)] - 1)] = i;
  return g;
}

inline Twist polygon_twist() { return Twist{TwistKind::EdgeOrder, false}; }

/**
 * Σ_{σ ∈ S_s} sgn(σ) σ·P_s over leg-labeled graphs of type (1, s), each
 * polygon carrying its dihedral edge order. Isomorphic labelings are merged,
 * so each labeled polygon class appears with coefficient ±2s.
 */
inline GraphVector polygon_sum(int s) {
  if (s < 3 || s % 2 == 0) throw std::invalid_argument("polygon_sum: s must be odd and at least 3 (even polygon sums vanish)");
  std::vector<int> labels(static_cast<std::size_t>(s));
  std::iota(labels.begin(), labels.end(), 1);
  GraphVector out;
  do {
    std::vector<int> perm(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) perm[i] = labels[i] - 1;
    add_graph(out, labeled_polygon(labels), Rational(permutation_sign(perm)), LegMode::Labeled, polygon_twist());
  } while (std::next_permutation(labels.begin(), labels.end()));
  return out;
}

// Relabels legs by swapping labels i and j (1-based) in every term.
inline GraphVector swap_leg_labels(const GraphVector& x, int i, int j, const Twist& twist) {
  GraphVector out;
  for (const auto& [enc, c] : x) {
    auto g = decode_encoding(enc);
    std::swap(g.legs[static_cast<std::size_t>(i - 1)], g.legs[static_cast<std::size_t>(j - 1)]);
    add_graph(out, g, c, LegMode::Labeled, twist);
  }
  return out;
}

/**
 * ν_{r,s}: an (r+1)-gon through a genus-1 vertex v carrying s-2 legs and one
 * leg at each other vertex. Vertex 0 is v, vertices 1..r are the polygon
 * vertices in order of travel, edge i runs from vertex i to i+1 (edge r
 * returns to v). Legs at v carry labels 1..s-2, the leg at vertex i carries
 * s-2+i. The orientation is the order: legs at v, then e_0, leg, e_1, ...,
 * leg, e_r.
 */
struct NuElement {
  int r = 0;
  int s = 0;
  int n = 0;
  ModularGraph graph;
  std::string order;  // 'E'/'L' sequence of the orientation
  std::pair<int, int> bidegree;
};

inline void check_nu_indices(int r, int s) {
  if (s < 3 || r <= s || r % 2 == 0 || s % 2 == 0) throw std::invalid_argument("nu: need r > s >= 3, both odd");
}

inline NuElement build_nu(int r, int s) {
  check_nu_indices(r, s);
  NuElement nu;
  nu.r = r;
  nu.s = s;
  nu.n = r + s - 2;
  nu.bidegree = {r + 1, s - 1};
  auto& g = nu.graph;
  g.genus.assign(static_cast<std::size_t>(r + 1), 0);
  g.genus[0] = 1;
  for (int i = 0; i < s - 2; ++i) {
    g.legs.push_back(0);
    nu.order += 'L';
  }
  for (int i = 0; i <= r; ++i) {
    g.edges.push_back(Edge{i, i == r ? 0 : i + 1});
    nu.order += 'E';
    if (i < r) {
      g.legs.push_back(i + 1);
      nu.order += 'L';
    }
  }
  return nu;
}

// Sign converting an interleaved edge/leg order into edges-then-legs order.
inline int interleaved_sign(const std::string& order) {
  int legs_seen = 0, sign = 1;
  for (char ch : order) {
    if (ch == 'L') ++legs_seen;
    else if (legs_seen % 2) sign = -sign;
  }
  return sign;
}

// Which end of the r-strand (its first edge e_0) is attached to the polygon vertex labeled s-1 or s.
enum class StrandGluing { FirstEdgeAtSMinus1, FirstEdgeAtS };

/**
 * Orientation conventions for d(ν). `gluing` places e_0; with
 * `dual_polygon_block` the s new polygon edges enter in reverse dihedral
 * order, i.e. as the dual of their dihedral orientation, a sign of
 * (-1)^(s(s-1)/2). The default attaches e_0 at the flag s-1, which is the
 * position ν's flag order gives it.
 */
struct NuConvention {
  StrandGluing gluing = StrandGluing::FirstEdgeAtSMinus1;
  bool dual_polygon_block = true;

  std::string name() const {
    return std::string(gluing == StrandGluing::FirstEdgeAtSMinus1 ? "e0-at-s-1" : "e0-at-s") +
           (dual_polygon_block ? "/dual-polygon" : "/dihedral-polygon");
  }
};

inline std::vector<NuConvention> all_nu_conventions() {
  return {{StrandGluing::FirstEdgeAtSMinus1, true},
          {StrandGluing::FirstEdgeAtSMinus1, false},
          {StrandGluing::FirstEdgeAtS, true},
          {StrandGluing::FirstEdgeAtS, false}};
}

struct NuDifferential {
  int r = 0;
  int s = 0;
  NuConvention convention;
  GraphVector graphs;                 // d(ν) among anti-invariant graphs of type (2, n)
  ThetaChain theta;                   // the same element in theta classes
  std::map<int, Rational> coefficients;  // q -> c_q for [q, s-2-q, r]^0
};

/**
 * d(ν_{r,s}) computed term by term: every labeled s-gon class of the polygon
 * sum (one per dihedral class) with the r-strand of ν glued between the
 * polygon vertices labeled s-1 and s, times the Leibniz sign -1, then passed
 * to anti-coinvariants and expressed in theta classes through
 * solve_membership. Throws when the result leaves the theta span.
 */
inline NuDifferential d_nu(int r, int s, NuConvention conv = {}) {
  auto nu = build_nu(r, s);
  int n = nu.n;
  Twist twist = sector_setup(Sector::GC2, true).twist;
  // ν's own order with the polygon edges in front; the polygon block has no legs before it
  int order_sign = interleaved_sign(nu.order);
  if (conv.dual_polygon_block && (s * (s - 1) / 2) % 2 == 1) order_sign = -order_sign;
  auto gluing = conv.gluing;
  NuDifferential out;
  out.r = r;
  out.s = s;
  out.convention = conv;
  Rational per_class(1, 2 * s);
  for (const auto& [enc, coeff] : polygon_sum(s)) {
    auto poly = decode_encoding(enc);
    ModularGraph g;
    g.genus = poly.genus;
    g.edges = poly.edges;
    int at_sm1 = poly.legs[static_cast<std::size_t>(s - 2)];
    int at_s = poly.legs[static_cast<std::size_t>(s - 1)];
    int start = gluing == StrandGluing::FirstEdgeAtSMinus1 ? at_sm1 : at_s;
    int end = gluing == StrandGluing::FirstEdgeAtSMinus1 ? at_s : at_sm1;
    int first = g.num_vertices();
    for (int i = 0; i < r; ++i) g.genus.push_back(0);
    for (int i = 0; i <= r; ++i) {
      int t = i == 0 ? start : first + i - 1;
      int h = i == r ? end : first + i;
      g.edges.push_back(Edge{t, h});
    }
    for (int j = 0; j < s - 2; ++j) g.legs.push_back(poly.legs[static_cast<std::size_t>(j)]);
    for (int i = 0; i < r; ++i) g.legs.push_back(first + i);
    add_graph(out.graphs, g, Rational(-1) * coeff * per_class * order_sign, LegMode::Unlabeled, twist);
  }
  // express in theta classes of degree n+3
  std::vector<ThetaElement> top;
  for (const auto& t : theta_basis(n))
    if (t.degree() == n + 3) top.push_back(t);
  std::map<std::string, std::size_t> row_of;
  std::vector<MatrixEntry<Rational>> trip;
  std::vector<ThetaImage> images;
  for (const auto& t : top) images.push_back(theta_image(t, twist));
  for (const auto& [enc, c] : out.graphs) row_of.emplace(enc, row_of.size());
  for (const auto& im : images)
    if (im.sign != 0) row_of.emplace(im.encoding, row_of.size());
  for (std::size_t j = 0; j < top.size(); ++j)
    if (images[j].sign != 0) trip.push_back({row_of.at(images[j].encoding), j, Rational(images[j].sign)});
  auto m = SparseMatrix<Rational>::from_triplets(row_of.size(), top.size(), std::move(trip));
  RationalVector rhs(row_of.size(), Rational(0));
  for (const auto& [enc, c] : out.graphs) rhs[row_of.at(enc)] = c;
  auto sol = solve_membership(m, rhs);
  if (!sol.in_image) throw std::runtime_error("d_nu: d(nu_" + std::to_string(r) + "," + std::to_string(s) + ") is not a theta combination");
  for (std::size_t j = 0; j < top.size(); ++j)
    if (sol.solution[j] != 0) out.theta.push_back(ThetaElement{top[j].a, top[j].b, top[j].c, 0, sol.solution[j]});
  for (int q = 0; 2 * q < s - 2; ++q) out.coefficients[q] = 0;
  for (const auto& t : out.theta) {
    if (t.c != r || t.a + t.b != s - 2)
      throw std::runtime_error("d_nu: unexpected theta class " + t.label() + " in d(nu)");
    out.coefficients[t.a] = t.coefficient;
  }
  return out;
}

struct PropositionChainReport {
  int r = 0;
  int s = 0;
  std::map<int, Rational> coefficients;
  Rational expected;               // -(s-2)!
  bool coefficients_match = false;
  bool primitive_identity = false;  // d(Σ_q [q,s-2-q,r-1]^1) = -[0,s-1,r-1]^0 + Σ_q [q,s-2-q,r]^0
  bool cohomologous = false;        // d(ν)/(-(s-2)!) - [0,s-1,r-1]^0 is that boundary
  bool pass() const { return coefficients_match && primitive_identity && cohomologous; }
};

inline bool same_chain(const ThetaChain& x, const ThetaChain& y) {
  auto a = combine(x), b = combine(y);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].same_generator(b[i]) || a[i].coefficient != b[i].coefficient) return false;
  return true;
}

inline ThetaChain scaled(ThetaChain x, const Rational& f) {
  for (auto& t : x) t.coefficient *= f;
  return x;
}

// Σ_q [q, s-2-q, r-1]^1, the primitive relating d(ν_{r,s}) to [0, s-1, r-1]^0.
inline ThetaChain nu_primitive(int r, int s) {
  ThetaChain p;
  for (int q = 0; 2 * q < s - 2; ++q) p.push_back(normalize(q, s - 2 - q, r - 1, 1));
  return combine(p);
}

inline PropositionChainReport verify_proposition_chain(int r, int s, NuConvention conv = {}) {
  check_nu_indices(r, s);
  PropositionChainReport rep;
  rep.r = r;
  rep.s = s;
  rep.expected = -Rational(static_cast<unsigned long>(factorial(s - 2)));
  auto dn = d_nu(r, s, conv);
  rep.coefficients = dn.coefficients;
  rep.coefficients_match = std::all_of(dn.coefficients.begin(), dn.coefficients.end(),
                                       [&](const auto& kv) { return kv.second == rep.expected; });
  ThetaChain target{normalize(0, s - 1, r - 1, 0, Rational(-1))};
  for (int q = 0; 2 * q < s - 2; ++q) target.push_back(normalize(q, s - 2 - q, r, 0));
  auto dp = theta_diff(nu_primitive(r, s));
  rep.primitive_identity = same_chain(dp, target);
  auto diff = scaled(dn.theta, Rational(1) / rep.expected);
  diff.push_back(normalize(0, s - 1, r - 1, 0, Rational(-1)));
  rep.cohomologous = same_chain(diff, dp);
  return rep;
}

struct DimensionIdentityReport {
  int n = 0;
  std::size_t delta_term = 0;  // dim H^{n+3} of the anti-invariant commutative complex
  std::size_t gamma_term = 0;  // dim H_{n+1}(Γ_{2,n}) anti-invariants, from the Lie sector
  std::size_t target = 0;      // ⌊(n-2)/4⌋
  bool other_degrees_vanish = false;
  bool pass() const { return delta_term + gamma_term == target && other_degrees_vanish; }
};

/**
 * Both summands of dim H^{i+2}(Δ_{2,n}) + dim H_i(Γ_{2,n}) at i = n+1 from
 * the anti-invariant com-bar complex (cohomological degree = edge count) and
 * the anti-invariant Lie complex (Γ-degree through `cal`).
 */
inline DimensionIdentityReport dimension_identity(int n, const ChainComplexData& combar_anti,
                                                  const ChainComplexData& lie_anti, const DegreeCalibration& cal) {
  if (n % 2 != 0) throw std::invalid_argument("dimension_identity: n must be even");
  DimensionIdentityReport rep;
  rep.n = n;
  rep.target = static_cast<std::size_t>((n - 2) / 4);
  auto hd = homology_dims(combar_anti);
  auto hl = lie_gamma_homology(lie_anti, cal);
  int delta_k = n + 3, gamma_i = n + 1;
  rep.delta_term = hd.count(delta_k) ? hd[delta_k] : 0;
  rep.gamma_term = hl.count(gamma_i) ? hl[gamma_i] : 0;
  rep.other_degrees_vanish = true;
  for (const auto& [k, d] : hd)
    if (k != delta_k && d != 0) rep.other_degrees_vanish = false;
  for (const auto& [i, d] : hl)
    if (i != gamma_i && d != 0) rep.other_degrees_vanish = false;
  return rep;
}

struct BracketRelationReport {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;  // (r, s)
  std::vector<std::string> labels;         // {σ_r,σ_s}
  std::vector<RationalVector> relations_nu;   // over the classes [ν_{r,s}]
  std::vector<RationalVector> relations_rho;  // over ρ_{r,s} = -ν_{r,s}/(s-2)!
  std::size_t span_dim = 0;
  std::size_t relation_dim = 0;
  std::size_t quotient_dim = 0;
  std::size_t expected_span = 0;      // ⌊(n-2)/4⌋
  std::size_t expected_relations = 0;  // ⌊(n-2)/4⌋ - ⌊n/6⌋
  std::size_t expected_quotient = 0;   // ⌊n/6⌋
  bool pass() const {
    return span_dim == expected_span && relation_dim == expected_relations && quotient_dim == expected_quotient;
  }
};

inline std::vector<std::pair<int, int>> bracket_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int s = 3; 2 * s < n + 2; s += 2) out.push_back({n + 2 - s, s});
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/**
 * Relations among the classes [ν_{r,s}], r+s = n+2, obtained from their images
 * d(ν_{r,s}) in H^{n+3}(Θ_n).
 */
inline BracketRelationReport bracket_report(int n) {
  if (n % 2 != 0) throw std::invalid_argument("bracket_report: n must be even");
  BracketRelationReport rep;
  rep.n = n;
  rep.pairs = bracket_pairs(n);
  rep.expected_span = static_cast<std::size_t>((n - 2) / 4);
  rep.expected_quotient = static_cast<std::size_t>(n / 6);
  rep.expected_relations = rep.expected_span - rep.expected_quotient;
  auto tc = theta_complex(n);
  std::vector<ThetaChain> images;
  for (auto [r, s] : rep.pairs) {
    rep.labels.push_back("{sigma_" + std::to_string(r) + ",sigma_" + std::to_string(s) + "}");
    images.push_back(d_nu(r, s).theta);
  }
  rep.span_dim = rep.pairs.size();
  if (!images.empty()) rep.relations_nu = theta_class_relations(tc, images);
  for (const auto& v : rep.relations_nu) {
    RationalVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      w[i] = -v[i] * Rational(static_cast<unsigned long>(factorial(rep.pairs[i].second - 2)));
    rep.relations_rho.push_back(std::move(w));
  }
  rep.relation_dim = rep.relations_nu.size();
  rep.quotient_dim = rep.span_dim - rep.relation_dim;
  return rep;
}

}  // namespace gcx
