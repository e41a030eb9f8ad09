#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include "gcx/complex/assemble.hpp"

namespace gcx {

class InfeasibleRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SizeEstimate {
  int max_edges = 0;          // largest edge count of a stable graph of the type
  std::size_t shapes = 0;     // unlabeled graphs within the cap
  double generators = 0;      // estimated generator count (before automorphism cancellations)
};

/**
 * Pre-flight size of a sector complex from its unlabeled shapes. A labeled
 * shape contributes n!/|Aut| copies of its decoration space; Lie vertices of
 * valence k contribute (k-2)!, divided by m! for m unlabeled legs at the
 * vertex. Zero generators are not removed.
 */
inline SizeEstimate estimate_size(Sector s, int g, int n, bool anti, int edge_cap) {
  if (s == Sector::GC2 && g < 1) throw std::invalid_argument("gc2 requires g >= 1");
  if (!is_stable_type(g, n)) throw std::invalid_argument("unstable type");
  auto st = sector_setup(s, anti);
  GraphConstraints cons = st.constraints;
  bool lie = st.deco->kind() == DecorationKind::Lie;
  if (lie) cons.allow_positive_genus = false;
  SizeEstimate est;
  est.max_edges = max_edges_for_type(g, n);
  auto levels = detail::supported_levels(g, n, *st.deco, cons, LegMode::Unlabeled, edge_cap);
  double nfact = static_cast<double>(factorial(n));
  for (const auto& level : levels)
    for (const auto& cf : level) {
      ++est.shapes;
      double copies = 1;
      if (!anti) copies = nfact / static_cast<double>(automorphisms(cf).order);
      if (lie) {
        auto val = cf.graph.valences();
        std::vector<int> legs(val.size(), 0);
        for (int v : cf.graph.legs) ++legs[static_cast<std::size_t>(v)];
        for (std::size_t v = 0; v < val.size(); ++v) {
          copies *= static_cast<double>(factorial(val[v] - 2));
          // unlabeled legs: one ordering of the legs at a vertex
          if (anti && legs[v] > 1) copies /= static_cast<double>(factorial(std::min(legs[v], val[v] - 2)));
        }
      }
      est.generators += copies;
    }
  return est;
}

struct FeasibilityBounds {
  int edge_cap = 12;
  bool truncate = false;              // cap the complex at edge_cap instead of refusing
  double max_generators = 400000;     // commutative sectors
  double max_lie_generators = 100000;
};

/**
 * Edge cap to use for a request, or InfeasibleRequest. Types whose graphs
 * exceed the cap are refused unless truncation is requested; the generator
 * estimate is then compared with the budget.
 */
inline int feasible_edge_cap(Sector s, int g, int n, bool anti, const FeasibilityBounds& b) {
  if (s == Sector::GC2 && g < 1) throw std::invalid_argument("gc2 requires g >= 1");
  if (!is_stable_type(g, n)) throw std::invalid_argument("unstable type");
  int max_edges = max_edges_for_type(g, n);
  if (max_edges > b.edge_cap && !b.truncate)
    throw InfeasibleRequest("(g,n)=(" + std::to_string(g) + "," + std::to_string(n) + ") has graphs with " +
                            std::to_string(max_edges) + " edges, above the edge cap " + std::to_string(b.edge_cap));
  int cap = max_edges > b.edge_cap ? b.edge_cap : -1;
  auto est = estimate_size(s, g, n, anti, cap);
  double budget = s == Sector::Lie ? b.max_lie_generators : b.max_generators;
  if (est.generators > budget)
    throw InfeasibleRequest(sector_name(s) + " (g,n)=(" + std::to_string(g) + "," + std::to_string(n) + ")" +
                            (anti ? " anti" : "") + ": about " + std::to_string(static_cast<long long>(est.generators)) +
                            " generators, above the budget " + std::to_string(static_cast<long long>(budget)));
  return cap;
}

}  // namespace gcx
