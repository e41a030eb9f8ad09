#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/linalg/rank.hpp"
#include "gcx/linalg/sparse_matrix.hpp"
#include "gcx/modgraph/canonical.hpp"
#include "gcx/modgraph/enumerate.hpp"

namespace gcx {

enum class Sector { ComBar, Com, Lie, GC2 };

inline std::string sector_name(Sector s) {
  switch (s) {
    case Sector::ComBar: return "com-bar";
    case Sector::Com: return "com";
    case Sector::Lie: return "lie";
    case Sector::GC2: return "gc2";
  }
  return "?";
}

inline Sector parse_sector(const std::string& s) {
  if (s == "com-bar") return Sector::ComBar;
  if (s == "com") return Sector::Com;
  if (s == "lie") return Sector::Lie;
  if (s == "gc2") return Sector::GC2;
  throw std::invalid_argument("unknown sector '" + s + "'");
}

struct BasisElement {
  std::size_t graph = 0;         // index into ChainComplexData::graphs
  std::string label = "1";       // decoration label
  std::uint64_t aut_order = 1;   // |Aut| of the underlying graph
};

struct ComplexMetadata {
  Sector sector = Sector::ComBar;
  int g = 0;
  int n = 0;
  std::string decoration;
  Twist twist;
  GraphConstraints constraints;
  LegMode leg_mode = LegMode::Labeled;  // Unlabeled: sign-isotypic part built directly
  int edge_cap = -1;
  std::string degree_convention = "edges";

  std::string key() const {
    std::ostringstream os;
    os << sector_name(sector) << "_g" << g << "_n" << n << (leg_mode == LegMode::Unlabeled ? "_anti" : "") << "_cap"
       << edge_cap;
    return os.str();
  }
};

struct LieGraphData;

/**
 * Graded generators (indexed by edge count) and the edge-contraction
 * matrices between them. contraction[k] maps degree k to degree k-1; its
 * rows index basis[k-1] and its columns basis[k]. The expansion
 * differential of the Feynman transform is the transpose.
 */
struct ChainComplexData {
  ComplexMetadata meta;
  std::vector<CanonicalForm> graphs;
  std::map<int, std::vector<BasisElement>> basis;
  std::map<int, SparseMatrix<Rational>> contraction;
  std::string direction = "contraction";
  // Lie sector only: per-graph coordinates of the decoration spaces
  std::shared_ptr<std::vector<LieGraphData>> lie_data;

  std::size_t dim(int k) const {
    auto it = basis.find(k);
    return it == basis.end() ? 0 : it->second.size();
  }
  int min_degree() const { return basis.empty() ? 0 : basis.begin()->first; }
  int max_degree() const { return basis.empty() ? -1 : basis.rbegin()->first; }
  std::size_t total_dim() const {
    std::size_t s = 0;
    for (const auto& [k, b] : basis) s += b.size();
    return s;
  }
  const SparseMatrix<Rational>& boundary(int k) const {
    static const SparseMatrix<Rational> empty;
    auto it = contraction.find(k);
    return it == contraction.end() ? empty : it->second;
  }
  // Expansion differential degree k -> k+1.
  SparseMatrix<Rational> expansion(int k) const { return boundary(k + 1).transpose(); }

  /**
   * Expansion on automorphism coinvariants, degree k -> k+1: vertex splittings
   * of Γ counted individually. The entry for (Γ', Γ) is the contraction entry
   * scaled by |Aut Γ| / |Aut Γ'|; conjugate to expansion(k) by the diagonal of
   * automorphism orders.
   */
  SparseMatrix<Rational> coinvariant_expansion(int k) const {
    auto t = expansion(k);
    std::vector<MatrixEntry<Rational>> trip;
    trip.reserve(t.nnz());
    const auto& lo = basis.at(k);
    const auto& hi = basis.at(k + 1);
    for (const auto& e : t.entries()) {
      Rational f(static_cast<unsigned long>(lo[e.col].aut_order), static_cast<unsigned long>(hi[e.row].aut_order));
      f.canonicalize();
      trip.push_back({e.row, e.col, e.value * f});
    }
    return SparseMatrix<Rational>::from_triplets(t.rows(), t.cols(), std::move(trip));
  }
};

class DifferentialSquareError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws DifferentialSquareError naming the first generator on which d∘d is nonzero.
inline void check_square_zero(const ChainComplexData& c) {
  for (const auto& [k, m] : c.contraction) {
    auto lower = c.contraction.find(k - 1);
    if (lower == c.contraction.end()) continue;
    auto prod = lower->second.multiply(m);
    if (!prod.is_zero()) {
      const auto& e = prod.entries().front();
      const auto& gen = c.basis.at(k)[e.col];
      throw DifferentialSquareError("d^2 != 0 in " + c.meta.key() + " at edge degree " + std::to_string(k) +
                                    " on generator " + encoding_text(c.graphs[gen.graph].encoding) + " [" + gen.label +
                                    "]");
    }
  }
}

inline std::map<int, std::size_t> boundary_ranks(const ChainComplexData& c, RankMode mode = RankMode::ModularVerified) {
  std::map<int, std::size_t> ranks;
  for (const auto& [k, m] : c.contraction) ranks[k] = m.is_zero() ? 0 : rank(m, mode);
  return ranks;
}

// Homology by edge degree: dim C_k - rank d_k - rank d_{k+1}.
inline std::map<int, std::size_t> homology_dims(const ChainComplexData& c, RankMode mode = RankMode::ModularVerified) {
  auto ranks = boundary_ranks(c, mode);
  std::map<int, std::size_t> h;
  for (const auto& [k, b] : c.basis) {
    std::size_t r_out = ranks.count(k) ? ranks[k] : 0;
    std::size_t r_in = ranks.count(k + 1) ? ranks[k + 1] : 0;
    h[k] = b.size() - r_out - r_in;
  }
  return h;
}

inline long euler_characteristic(const std::map<int, std::size_t>& dims) {
  long chi = 0;
  for (const auto& [k, d] : dims) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(d);
  return chi;
}

inline std::map<int, std::size_t> chain_dims(const ChainComplexData& c) {
  std::map<int, std::size_t> d;
  for (const auto& [k, b] : c.basis) d[k] = b.size();
  return d;
}

}  // namespace gcx
