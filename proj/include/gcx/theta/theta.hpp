#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "gcx/complex/chain_complex.hpp"
#include "gcx/linalg/rank.hpp"
#include "gcx/linalg/solve.hpp"

namespace gcx {

/**
 * Theta graph [a,b,c]^l: two distinguished vertices joined by strands with
 * a, b and c legs, and l legs on the distinguished vertices themselves.
 */
struct ThetaElement {
  int a = 0;
  int b = 0;
  int c = 0;
  int l = 0;
  Rational coefficient{1};

  int n() const { return a + b + c + l; }
  int degree() const { return a + b + c + 3; }
  bool is_zero() const { return coefficient == 0; }
  std::tuple<int, int, int, int> key() const { return {l, a, b, c}; }
  bool same_generator(const ThetaElement& o) const { return key() == o.key(); }

  std::string label() const {
    return "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]^" + std::to_string(l);
  }
};

using ThetaChain = std::vector<ThetaElement>;

// Vanishing of a sorted triple: reflection sign (-1)^(a+b+c+l/2) for even l, equal strands for a=b or b=c.
inline bool theta_vanishes(int a, int b, int c, int l) {
  int n = a + b + c + l;
  return (l == 0 && n % 2 == 1) || (l == 2 && n % 2 == 0) || a == b || b == c;
}

/**
 * Sorts the strands, multiplying by -1 per transposition of strands, and
 * sets the coefficient to zero when the generator vanishes.
 */
inline ThetaElement normalize(int a, int b, int c, int l, Rational coefficient = Rational(1)) {
  if (a < 0 || b < 0 || c < 0 || l < 0 || l > 2) throw std::invalid_argument("theta: invalid strand data");
  int s[3] = {a, b, c};
  int sign = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j + 1 < 3 - i; ++j)
      if (s[j] > s[j + 1]) {
        std::swap(s[j], s[j + 1]);
        sign = -sign;
      }
  ThetaElement t{s[0], s[1], s[2], l, coefficient * sign};
  if (theta_vanishes(t.a, t.b, t.c, t.l)) t.coefficient = 0;
  return t;
}

inline ThetaElement normalize(const ThetaElement& t) { return normalize(t.a, t.b, t.c, t.l, t.coefficient); }

// Merges equal generators and drops zero terms; sorted by (l, a, b, c).
inline ThetaChain combine(const ThetaChain& terms) {
  std::map<std::tuple<int, int, int, int>, ThetaElement> acc;
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    auto [it, fresh] = acc.emplace(t.key(), t);
    if (!fresh) it->second.coefficient += t.coefficient;
  }
  ThetaChain out;
  for (auto& [k, t] : acc)
    if (!t.is_zero()) out.push_back(t);
  return out;
}

// Nonvanishing normal forms with a+b+c+l = n, ordered by l then (a, b, c).
inline std::vector<ThetaElement> theta_basis(int n) {
  std::vector<ThetaElement> out;
  for (int l = 0; l <= 2; ++l)
    for (int a = 0; 3 * a + 3 <= n - l; ++a)
      for (int b = a + 1; a + 2 * b + 1 <= n - l; ++b) {
        int c = n - l - a - b;
        if (c > b && !theta_vanishes(a, b, c, l)) out.push_back(ThetaElement{a, b, c, l, Rational(1)});
      }
  return out;
}

// Expansion differential; l=2 requires a+b+c odd.
inline ThetaChain theta_diff(const ThetaElement& t) {
  if (t.is_zero() || t.l == 0) return {};
  if (t.l == 2 && (t.a + t.b + t.c) % 2 == 0)
    throw std::domain_error("theta_diff: formula precondition a+b+c odd fails for " + t.label());
  Rational f = t.coefficient * (t.l == 2 ? 2 : 1);
  int lo = t.l - 1;
  return combine({normalize(t.a + 1, t.b, t.c, lo, f), normalize(t.a, t.b + 1, t.c, lo, -f),
                  normalize(t.a, t.b, t.c + 1, lo, f)});
}

inline ThetaChain theta_diff(const ThetaChain& x) {
  ThetaChain out;
  for (const auto& t : x) {
    auto d = theta_diff(t);
    out.insert(out.end(), d.begin(), d.end());
  }
  return combine(out);
}

/**
 * Θ_n graded by degree a+b+c+3. differential[k] maps degree k to k+1; its
 * rows index basis[k+1] and its columns basis[k].
 */
struct ThetaComplex {
  int n = 0;
  std::map<int, std::vector<ThetaElement>> basis;
  std::map<int, SparseMatrix<Rational>> differential;

  std::size_t dim(int k) const {
    auto it = basis.find(k);
    return it == basis.end() ? 0 : it->second.size();
  }

  std::size_t index_of(const ThetaElement& t) const {
    const auto& b = basis.at(t.degree());
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i].same_generator(t)) return i;
    throw std::out_of_range("theta: " + t.label() + " not in basis");
  }

  // Coordinates of a homogeneous chain in basis[k].
  RationalVector coordinates(const ThetaChain& x, int k) const {
    RationalVector v(dim(k), Rational(0));
    for (const auto& t : combine(x)) {
      if (t.degree() != k) throw std::invalid_argument("theta: chain is not homogeneous of degree " + std::to_string(k));
      v[index_of(t)] += t.coefficient;
    }
    return v;
  }

  ThetaChain chain(const RationalVector& v, int k) const {
    ThetaChain out;
    const auto& b = basis.at(k);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) out.push_back(ThetaElement{b[i].a, b[i].b, b[i].c, b[i].l, v[i]});
    return out;
  }

  const SparseMatrix<Rational>& diff(int k) const {
    static const SparseMatrix<Rational> empty;
    auto it = differential.find(k);
    return it == differential.end() ? empty : it->second;
  }
};

inline ThetaComplex theta_complex(int n) {
  ThetaComplex tc;
  tc.n = n;
  for (const auto& t : theta_basis(n)) tc.basis[t.degree()].push_back(t);
  for (const auto& [k, b] : tc.basis) {
    auto up = tc.basis.find(k + 1);
    if (up == tc.basis.end()) continue;
    std::vector<MatrixEntry<Rational>> trip;
    for (std::size_t j = 0; j < b.size(); ++j)
      for (const auto& t : theta_diff(b[j])) trip.push_back({tc.index_of(t), j, t.coefficient});
    tc.differential[k] = SparseMatrix<Rational>::from_triplets(up->second.size(), b.size(), std::move(trip));
  }
  return tc;
}

namespace detail {

inline SparseMatrix<Rational> columns_matrix(std::size_t rows, const std::vector<RationalVector>& cols) {
  std::vector<MatrixEntry<Rational>> trip;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i)
      if (cols[j][i] != 0) trip.push_back({i, j, cols[j][i]});
  return SparseMatrix<Rational>::from_triplets(rows, cols.size(), std::move(trip));
}

inline SparseMatrix<Rational> hconcat(const SparseMatrix<Rational>& x, const SparseMatrix<Rational>& y) {
  if (x.rows() != y.rows()) throw std::invalid_argument("hconcat: row mismatch");
  auto trip = x.entries();
  for (const auto& e : y.entries()) trip.push_back({e.row, e.col + x.cols(), e.value});
  return SparseMatrix<Rational>::from_triplets(x.rows(), x.cols() + y.cols(), std::move(trip));
}

// Independent vectors spanning the same space (nonzero rows of the rref).
inline std::vector<RationalVector> independent_span(const std::vector<RationalVector>& vs, std::size_t len) {
  std::vector<QRow> rows;
  for (const auto& v : vs) {
    QRow r;
    for (std::size_t i = 0; i < len; ++i)
      if (v[i] != 0) r.emplace(i, v[i]);
    if (!r.empty()) rows.push_back(std::move(r));
  }
  rref_in_place(rows);
  std::vector<RationalVector> out;
  for (const auto& r : rows) {
    if (r.empty()) continue;
    RationalVector v(len, Rational(0));
    for (const auto& [i, x] : r) v[i] = x;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

struct ThetaCohomology {
  int degree = 0;
  std::size_t dim = 0;
  std::vector<ThetaElement> representatives;  // basis elements whose classes form a basis, l=0 preferred
  std::vector<RationalVector> relations;      // coboundaries, as coordinates over the degree's basis
};

/**
 * Cohomology of Θ_n in every degree. Representatives are chosen greedily
 * among cocycle basis elements, l=0 first; relations span the image of the
 * incoming differential.
 */
inline std::map<int, ThetaCohomology> theta_cohomology(const ThetaComplex& tc) {
  std::map<int, ThetaCohomology> out;
  for (const auto& [k, b] : tc.basis) {
    ThetaCohomology h;
    h.degree = k;
    std::vector<RationalVector> image;
    if (auto it = tc.differential.find(k - 1); it != tc.differential.end()) {
      const auto& d = it->second;
      std::vector<RationalVector> cols(d.cols(), RationalVector(d.rows(), Rational(0)));
      for (const auto& e : d.entries()) cols[e.col][e.row] = e.value;
      image = detail::independent_span(cols, b.size());
    }
    h.relations = image;
    const auto& out_d = tc.diff(k);
    auto span = image;
    std::size_t base = image.size();
    for (const auto& t : b) {
      RationalVector v(b.size(), Rational(0));
      v[tc.index_of(t)] = 1;
      if (out_d.rows() > 0 && !out_d.multiply(detail::columns_matrix(b.size(), {v})).is_zero()) continue;
      span.push_back(v);
      if (detail::independent_span(span, b.size()).size() == base + 1) {
        h.representatives.push_back(t);
        ++base;
      } else {
        span.pop_back();
      }
    }
    std::size_t rank_out = out_d.rows() > 0 ? rank(out_d, RankMode::ExactRational) : 0;
    h.dim = b.size() - rank_out - image.size();
    if (h.representatives.size() != h.dim) throw std::logic_error("theta_cohomology: representative count mismatch");
    out[k] = std::move(h);
  }
  return out;
}

inline std::map<int, ThetaCohomology> theta_cohomology(int n) { return theta_cohomology(theta_complex(n)); }

/**
 * Linear relations among the cohomology classes of the given cocycles (all of
 * one degree): a basis of {x : Σ x_i [classes_i] = 0}.
 */
inline std::vector<RationalVector> theta_class_relations(const ThetaComplex& tc, const std::vector<ThetaChain>& classes) {
  if (classes.empty()) return {};
  int k = -1;
  for (const auto& x : classes)
    if (!x.empty()) k = x.front().degree();
  if (k < 0) return {RationalVector(classes.size(), Rational(0))};
  std::size_t len = tc.dim(k);
  std::vector<RationalVector> cols;
  if (auto it = tc.differential.find(k - 1); it != tc.differential.end()) {
    const auto& d = it->second;
    std::vector<RationalVector> im(d.cols(), RationalVector(len, Rational(0)));
    for (const auto& e : d.entries()) im[e.col][e.row] = e.value;
    cols = std::move(im);
  }
  std::size_t base = cols.size();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto v = tc.coordinates(classes[i], k);
    if (tc.diff(k).rows() > 0)
      for (const auto& x : tc.diff(k).apply(v))
        if (x != 0) throw std::invalid_argument("theta_class_relations: class " + std::to_string(i) + " is not a cocycle");
    cols.push_back(std::move(v));
  }
  auto ker = kernel_basis(detail::columns_matrix(len, cols));
  std::vector<RationalVector> proj;
  for (const auto& x : ker) proj.emplace_back(x.begin() + static_cast<std::ptrdiff_t>(base), x.end());
  return detail::independent_span(proj, classes.size());
}

inline std::vector<RationalVector> theta_class_relations(const ThetaComplex& tc, const ThetaChain& classes) {
  std::vector<ThetaChain> single;
  for (const auto& t : classes) single.push_back({t});
  return theta_class_relations(tc, single);
}

/**
 * Θ_n -> Θ_{n+1} for even n, [a,b,c]^l -> 1/(l+1) [a,b,c]^(l+1). Per
 * degree, rows index the target basis and columns the source basis.
 */
inline std::map<int, SparseMatrix<Rational>> integration_map(const ThetaComplex& src, const ThetaComplex& dst) {
  if (src.n % 2 != 0) throw std::invalid_argument("integration_map: n must be even");
  if (dst.n != src.n + 1) throw std::invalid_argument("integration_map: target must be Θ_(n+1)");
  std::map<int, SparseMatrix<Rational>> out;
  for (const auto& [k, b] : src.basis) {
    std::vector<MatrixEntry<Rational>> trip;
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto t = normalize(b[j].a, b[j].b, b[j].c, b[j].l + 1, Rational(1, b[j].l + 1));
      if (!t.is_zero()) trip.push_back({dst.index_of(t), j, t.coefficient});
    }
    out[k] = SparseMatrix<Rational>::from_triplets(dst.dim(k), b.size(), std::move(trip));
  }
  return out;
}

inline std::map<int, SparseMatrix<Rational>> integration_map(int n) {
  return integration_map(theta_complex(n), theta_complex(n + 1));
}

/**
 * The leg-labeled theta graph with the standard ordering of edges and legs:
 * first the legs on the distinguished vertices, then along each strand in
 * turn its edges and legs alternately. The outer strands are walked away from
 * vertex 0 (which carries the first leg) and the middle strand towards it;
 * this is what makes the expansion differential read
 * d[a,b,c]^1 = [a+1,b,c]^0 - [a,b+1,c]^0 + [a,b,c+1]^0. `order_sign` converts
 * the interleaved order into edges-then-legs index order.
 */
struct ThetaGraph {
  ModularGraph graph;
  int order_sign = 1;
};

inline ThetaGraph theta_graph(int a, int b, int c, int l) {
  ThetaGraph tg;
  auto& g = tg.graph;
  g.genus = {0, 0};
  std::string seq;
  if (l >= 1) {
    g.legs.push_back(0);
    seq += 'L';
  }
  if (l == 2) {
    g.legs.push_back(1);
    seq += 'L';
  }
  for (int len : {a, b, c}) {
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      int v = g.num_vertices();
      g.genus.push_back(0);
      g.edges.push_back(Edge{prev, v});
      g.legs.push_back(v);
      seq += "EL";
      prev = v;
    }
    g.edges.push_back(Edge{prev, 1});
    seq += 'E';
  }
  int legs_seen = 0;
  for (char ch : seq) {
    if (ch == 'L') ++legs_seen;
    else if (legs_seen % 2) tg.order_sign = -tg.order_sign;
  }
  // reversing the middle strand's block of 2b+1 edges and legs
  if (b % 2) tg.order_sign = -tg.order_sign;
  return tg;
}

struct ThetaImage {
  std::string encoding;  // canonical encoding with unlabeled legs
  int sign = 0;          // 0 when the graph is a zero generator
};

// Class of the theta graph [a,b,c]^l among graphs with unlabeled legs.
inline ThetaImage theta_image(const ThetaElement& t, const Twist& twist) {
  auto tg = theta_graph(t.a, t.b, t.c, t.l);
  auto cf = canonicalize(tg.graph, LegMode::Unlabeled, true);
  ThetaImage im;
  im.encoding = cf.encoding;
  if (!is_zero_generator(cf.automorphisms, twist)) im.sign = tg.order_sign * cf.twist_sign(twist);
  return im;
}

/**
 * Inclusion Θ_n -> (GC_2^{2,n}) anti-invariants. Per edge degree, rows index
 * the graph complex basis and columns the theta basis.
 */
struct ThetaInclusion {
  std::map<int, SparseMatrix<Rational>> matrix;
};

inline ThetaInclusion theta_inclusion(const ThetaComplex& tc, const ChainComplexData& gc) {
  if (gc.meta.g != 2 || gc.meta.n != tc.n || gc.meta.leg_mode != LegMode::Unlabeled)
    throw std::invalid_argument("theta_inclusion: needs the anti-invariant genus-2 complex with n = " + std::to_string(tc.n));
  ThetaInclusion inc;
  for (const auto& [k, b] : tc.basis) {
    std::unordered_map<std::string, std::size_t> where;
    if (auto it = gc.basis.find(k); it != gc.basis.end())
      for (std::size_t i = 0; i < it->second.size(); ++i) where.emplace(gc.graphs[it->second[i].graph].encoding, i);
    std::vector<MatrixEntry<Rational>> trip;
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto im = theta_image(b[j], gc.meta.twist);
      if (im.sign == 0) continue;
      auto it = where.find(im.encoding);
      if (it == where.end())
        throw std::out_of_range("theta_inclusion: " + b[j].label() + " missing from the graph complex (edge cap?)");
      trip.push_back({it->second, j, Rational(im.sign)});
    }
    inc.matrix[k] = SparseMatrix<Rational>::from_triplets(gc.dim(k), b.size(), std::move(trip));
  }
  return inc;
}

/**
 * Theta generators at which ι∘d_Θ and d∘ι differ, where d on the graph side
 * is expansion on automorphism coinvariants. Empty when ι is a chain map.
 */
inline std::vector<std::string> inclusion_chain_map_defects(const ThetaComplex& tc, const ChainComplexData& gc,
                                                            const ThetaInclusion& inc) {
  std::vector<std::string> bad;
  for (const auto& [k, b] : tc.basis) {
    const auto& ik = inc.matrix.at(k);
    SparseMatrix<Rational> lhs(gc.dim(k + 1), b.size()), rhs(gc.dim(k + 1), b.size());
    if (gc.dim(k + 1) > 0 && gc.dim(k) > 0) lhs = gc.coinvariant_expansion(k).multiply(ik);
    if (auto up = inc.matrix.find(k + 1); up != inc.matrix.end() && tc.differential.count(k))
      rhs = up->second.multiply(tc.differential.at(k));
    for (std::size_t j = 0; j < b.size(); ++j) {
      bool same = true;
      for (std::size_t i = 0; i < gc.dim(k + 1) && same; ++i) same = lhs.at(i, j) == rhs.at(i, j);
      if (!same) bad.push_back(b[j].label());
    }
  }
  return bad;
}

struct QuasiIsoDegree {
  int degree = 0;
  std::size_t theta_dim = 0;  // dim H^k(Θ_n)
  std::size_t graph_dim = 0;  // dim H^k of the graph complex
  std::size_t induced_rank = 0;
  bool isomorphism() const { return theta_dim == graph_dim && induced_rank == theta_dim; }
};

// Per edge degree: cohomology dimensions on both sides and the rank of the induced map.
inline std::vector<QuasiIsoDegree> inclusion_cohomology_comparison(const ThetaComplex& tc, const ChainComplexData& gc,
                                                                   const ThetaInclusion& inc) {
  auto gdims = homology_dims(gc);
  auto tdims = theta_cohomology(tc);
  std::vector<QuasiIsoDegree> out;
  std::set<int> degrees;
  for (const auto& [k, d] : gdims) degrees.insert(k);
  for (const auto& [k, d] : tdims) degrees.insert(k);
  for (int k : degrees) {
    QuasiIsoDegree q;
    q.degree = k;
    q.graph_dim = gdims.count(k) ? gdims[k] : 0;
    q.theta_dim = tdims.count(k) ? tdims[k].dim : 0;
    if (q.theta_dim > 0) {
      auto cocycles = tc.diff(k).rows() > 0 ? kernel_basis(tc.diff(k)) : std::vector<RationalVector>{};
      if (tc.diff(k).rows() == 0)
        for (std::size_t i = 0; i < tc.dim(k); ++i) {
          RationalVector v(tc.dim(k), Rational(0));
          v[i] = 1;
          cocycles.push_back(std::move(v));
        }
      SparseMatrix<Rational> bnd(gc.dim(k), 0);
      if (gc.dim(k - 1) > 0) bnd = gc.coinvariant_expansion(k - 1);
      std::vector<RationalVector> images;
      for (const auto& z : cocycles) images.push_back(inc.matrix.at(k).apply(z));
      auto stacked = detail::hconcat(bnd, detail::columns_matrix(gc.dim(k), images));
      std::size_t r_b = bnd.is_zero() ? 0 : rank(bnd);
      q.induced_rank = rank(stacked) - r_b;
    }
    out.push_back(q);
  }
  return out;
}

}  // namespace gcx
