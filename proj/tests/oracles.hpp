#pragma once

// Independent reference computations used by the unit tests and the
// acceptance binary. Nothing here calls into the library's canonicalizer,
// elimination or Lie normal form.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Q = mpq_class;

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

inline std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

// Sign-representation multiplicities read off the floor formulas.
inline long alternating_gamma(int n) { return (n - 2) / 4 - n / 6; }
inline long theta_top(int n) { return n / 6; }
inline long bracket_span(int n) {
  long count = 0;
  for (int s = 3; s < n + 2; s += 2) {
    int r = n + 2 - s;
    if (r > s && r % 2 == 1) ++count;
  }
  return count;
}

// ---------------------------------------------------------------- ranks

// Dense Gauss-Jordan over Q.
inline std::size_t dense_rank(std::vector<std::vector<Q>> a) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Q f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// Solves a x = b when consistent; returns false otherwise.
inline bool dense_solve(std::vector<std::vector<Q>> a, std::vector<Q> b, std::vector<Q>& x) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Q inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Q f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return false;
  x.assign(cols, Q(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return true;
}

// ---------------------------------------------------------------- graphs

/**
 * Brute-force count of stable modular graphs of type (g, n) by edge count.
 * Skeletons (vertex genera plus an edge multiset) are deduplicated by trying
 * every vertex permutation. Leg placements are then counted with Burnside's
 * lemma over the skeleton's vertex automorphisms: a placement with leg counts
 * c is fixed by σ iff σ fixes every vertex carrying a leg. Parallel-edge and
 * loop-flip symmetries act trivially on placements and are ignored.
 */
struct GraphCounts {
  std::map<int, std::uint64_t> labeled;    // edges -> classes with labeled legs
  std::map<int, std::uint64_t> unlabeled;  // edges -> classes with interchangeable legs
};

namespace detail {

struct Skeleton {
  std::vector<int> genus;
  std::vector<std::pair<int, int>> edges;  // (min, max), sorted
};

inline std::vector<int> skeleton_key(const Skeleton& s, const std::vector<int>& perm) {
  std::size_t V = s.genus.size();
  std::vector<int> key(V);
  for (std::size_t v = 0; v < V; ++v) key[static_cast<std::size_t>(perm[v])] = s.genus[v];
  std::vector<std::pair<int, int>> e;
  for (auto [a, b] : s.edges) {
    int x = perm[static_cast<std::size_t>(a)], y = perm[static_cast<std::size_t>(b)];
    e.push_back({std::min(x, y), std::max(x, y)});
  }
  std::sort(e.begin(), e.end());
  for (auto [a, b] : e) {
    key.push_back(a);
    key.push_back(b);
  }
  return key;
}

inline bool connected(int V, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(V));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (auto [a, b] : edges) parent[static_cast<std::size_t>(find(a))] = find(b);
  for (int v = 1; v < V; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

inline void compositions(int total, int parts, std::vector<int>& cur, const auto& fn) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(total);
    fn(cur);
    cur.pop_back();
    return;
  }
  for (int x = 0; x <= total; ++x) {
    cur.push_back(x);
    compositions(total - x, parts, cur, fn);
    cur.pop_back();
  }
}

}  // namespace detail

inline GraphCounts brute_force_counts(int g, int n, int max_edges, bool allow_tadpoles = true,
                                      bool allow_genus = true) {
  GraphCounts out;
  for (int E = 0; E <= max_edges; ++E) {
    out.labeled[E] = 0;
    out.unlabeled[E] = 0;
    for (int V = 1; V <= E + 1; ++V) {
      int betti = E - V + 1;
      if (betti > g) continue;
      int spare = g - betti;
      if (spare > 0 && !allow_genus) continue;
      std::vector<std::pair<int, int>> pairs;
      for (int a = 0; a < V; ++a)
        for (int b = a; b < V; ++b)
          if (a != b || allow_tadpoles) pairs.push_back({a, b});
      std::vector<int> perm(static_cast<std::size_t>(V));
      std::set<std::vector<int>> seen;
      std::vector<std::pair<int, int>> chosen;
      // edge multisets as nondecreasing index sequences into `pairs`
      auto visit_edges = [&](auto&& self, std::size_t start) -> void {
        if (static_cast<int>(chosen.size()) == E) {
          if (!detail::connected(V, chosen)) return;
          std::vector<int> cur;
          detail::compositions(spare, V, cur, [&](const std::vector<int>& genus) {
            detail::Skeleton sk{genus, chosen};
            std::iota(perm.begin(), perm.end(), 0);
            std::vector<int> best;
            std::vector<std::vector<int>> auts;
            auto base = detail::skeleton_key(sk, perm);
            do {
              auto k = detail::skeleton_key(sk, perm);
              if (best.empty() || k < best) best = k;
              if (k == base) auts.push_back(perm);
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (!seen.insert(best).second) return;
            std::vector<int> degree(static_cast<std::size_t>(V), 0);
            for (auto [a, b] : chosen) {
              ++degree[static_cast<std::size_t>(a)];
              ++degree[static_cast<std::size_t>(b)];
            }
            std::set<std::vector<int>> leg_orbits;
            Q labeled = 0;
            std::vector<int> lc;
            detail::compositions(n, V, lc, [&](const std::vector<int>& c) {
              for (int v = 0; v < V; ++v)
                if (2 * genus[static_cast<std::size_t>(v)] + degree[static_cast<std::size_t>(v)] + c[static_cast<std::size_t>(v)] < 3)
                  return;
              std::uint64_t multinomial = factorial(n);
              for (int x : c) multinomial /= factorial(x);
              std::uint64_t fixing = 0;
              std::vector<int> orbit_min = c;
              for (const auto& s : auts) {
                bool fixes = true;
                std::vector<int> moved(static_cast<std::size_t>(V));
                for (int v = 0; v < V; ++v) {
                  moved[static_cast<std::size_t>(s[static_cast<std::size_t>(v)])] = c[static_cast<std::size_t>(v)];
                  if (c[static_cast<std::size_t>(v)] > 0 && s[static_cast<std::size_t>(v)] != v) fixes = false;
                }
                if (fixes) ++fixing;
                orbit_min = std::min(orbit_min, moved);
              }
              labeled += Q(static_cast<unsigned long>(multinomial * fixing), static_cast<unsigned long>(auts.size()));
              leg_orbits.insert(orbit_min);
            });
            labeled.canonicalize();
            out.labeled[E] += labeled.get_num().get_ui();
            out.unlabeled[E] += leg_orbits.size();
          });
          return;
        }
        for (std::size_t i = start; i < pairs.size(); ++i) {
          chosen.push_back(pairs[i]);
          self(self, i);
          chosen.pop_back();
        }
      };
      visit_edges(visit_edges, 0);
    }
  }
  return out;
}

// ---------------------------------------------------------------- Lie words

/**
 * Tensor-algebra model of Lie((F)): the element with output f0 and bracket
 * expression P in the remaining letters is Σ_w P_w · cyc(f0 w). Cyclic words
 * are rotated to start at their smallest letter.
 */
using Word = std::vector<int>;
using Poly = std::map<Word, Q>;

inline Poly letter(int x) { return {{Word{x}, Q(1)}}; }

inline Poly bracket(const Poly& p, const Poly& q) {
  Poly out;
  for (const auto& [u, a] : p)
    for (const auto& [v, b] : q) {
      Word uv = u, vu = v;
      uv.insert(uv.end(), v.begin(), v.end());
      vu.insert(vu.end(), u.begin(), u.end());
      out[uv] += a * b;
      out[vu] -= a * b;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline Word rotate_min(Word w) {
  std::rotate(w.begin(), std::min_element(w.begin(), w.end()), w.end());
  return w;
}

inline Poly cyclic(int root, const Poly& p) {
  Poly out;
  for (const auto& [w, c] : p) {
    Word x{root};
    x.insert(x.end(), w.begin(), w.end());
    out[rotate_min(x)] += c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline Poly relabel(const Poly& p, const std::map<int, int>& m) {
  Poly out;
  for (const auto& [w, c] : p) {
    Word x;
    for (int f : w) x.push_back(m.at(f));
    out[rotate_min(x)] += c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

// Left-normed bracket [[..[x1, x2], x3].., xm].
inline Poly left_normed(const std::vector<int>& letters) {
  Poly p = letter(letters.front());
  for (std::size_t i = 1; i < letters.size(); ++i) p = bracket(p, letter(letters[i]));
  return p;
}

// Cyclic-word coordinates of a family of vectors, as dense rows over a shared word index.
inline std::vector<std::vector<Q>> as_rows(const std::vector<Poly>& vs) {
  std::map<Word, std::size_t> index;
  for (const auto& v : vs)
    for (const auto& [w, c] : v) index.emplace(w, 0);
  std::size_t i = 0;
  for (auto& [w, k] : index) k = i++;
  std::vector<std::vector<Q>> rows;
  for (const auto& v : vs) {
    std::vector<Q> row(index.size(), Q(0));
    for (const auto& [w, c] : v) row[index.at(w)] = c;
    rows.push_back(std::move(row));
  }
  return rows;
}

// All left-normed brackets on flags[1..] with output flags[0].
inline std::vector<Poly> all_left_normed(const std::vector<int>& flags) {
  std::vector<int> rest(flags.begin() + 1, flags.end());
  std::sort(rest.begin(), rest.end());
  std::vector<Poly> out;
  do {
    out.push_back(cyclic(flags[0], left_normed(rest)));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

}  // namespace oracle
