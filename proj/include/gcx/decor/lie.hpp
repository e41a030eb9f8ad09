#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/permutation.hpp"
#include "gcx/rational.hpp"

namespace gcx {

/**
 * Cyclic Lie words on a finite flag set, realized inside the cyclic
 * associative operad: a Lie((F)) element is a combination of cyclic words in
 * F, each stored rotated so that its smallest flag comes first.
 *
 * Normal form. With f0 < f1 < ... the sorted flags, f0 is the output and
 * the basis element indexed by a permutation t of f2.. is the cyclic word of
 *   f0 ⊗ [[..[f1, t1], t2].., tm]
 * (left-normed, anchored at f1). Its only cyclic word starting f0 f1 is
 * (f0 f1 t1 .. tm), so the normal-form coordinates of any Lie element are its
 * coefficients on the words (f0 f1 ...).
 */
using CyclicWord = std::vector<int>;

inline void rotate_min_first(CyclicWord& w) {
  auto it = std::min_element(w.begin(), w.end());
  std::rotate(w.begin(), it, w.end());
}

inline std::size_t lie_dimension(int valence) {
  if (valence < 3) return 0;
  return static_cast<std::size_t>(factorial(valence - 2));
}

// Rank of a permutation of sorted distinct values in lexicographic order.
inline std::size_t permutation_rank(const std::vector<int>& seq) {
  std::size_t r = 0;
  std::size_t m = seq.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < m; ++j)
      if (seq[j] < seq[i]) ++smaller;
    r += smaller * static_cast<std::size_t>(factorial(static_cast<int>(m - i - 1)));
  }
  return r;
}

inline std::vector<int> permutation_unrank(std::vector<int> sorted, std::size_t r) {
  std::vector<int> out;
  while (!sorted.empty()) {
    std::size_t f = static_cast<std::size_t>(factorial(static_cast<int>(sorted.size()) - 1));
    std::size_t k = r / f;
    r %= f;
    out.push_back(sorted[k]);
    sorted.erase(sorted.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return out;
}

struct SignedWord {
  CyclicWord word;
  int sign;
};

// Expansion of basis element `index` over sorted flags into cyclic words.
inline std::vector<SignedWord> lie_basis_words(const std::vector<int>& flags, std::size_t index) {
  if (flags.size() < 3) throw std::invalid_argument("lie_basis_words: valence below 3");
  std::vector<int> rest(flags.begin() + 2, flags.end());
  auto t = permutation_unrank(rest, index);
  std::vector<SignedWord> words{{{flags[1]}, 1}};
  for (int x : t) {
    std::vector<SignedWord> next;
    next.reserve(2 * words.size());
    for (const auto& w : words) {
      SignedWord a = w;
      a.word.push_back(x);
      next.push_back(std::move(a));
      SignedWord b{{x}, -w.sign};
      b.word.insert(b.word.end(), w.word.begin(), w.word.end());
      next.push_back(std::move(b));
    }
    words.swap(next);
  }
  for (auto& w : words) w.word.insert(w.word.begin(), flags[0]);
  return words;
}

// Normal-form index of a cyclic word (rotated min first) when it starts f0 f1; npos otherwise.
inline std::size_t normal_form_index(const CyclicWord& w, int second_smallest) {
  if (w.size() < 3 || w[1] != second_smallest) return static_cast<std::size_t>(-1);
  return permutation_rank(std::vector<int>(w.begin() + 2, w.end()));
}

/**
 * A Lie((F)) element in normal-form coordinates over the sorted flag set F.
 */
struct LieElement {
  std::vector<int> flags;
  std::vector<Rational> coeffs;

  static LieElement zero(std::vector<int> flags) {
    std::sort(flags.begin(), flags.end());
    LieElement e;
    e.coeffs.assign(lie_dimension(static_cast<int>(flags.size())), Rational(0));
    e.flags = std::move(flags);
    return e;
  }
  static LieElement basis(std::vector<int> flags, std::size_t index) {
    auto e = zero(std::move(flags));
    e.coeffs.at(index) = 1;
    return e;
  }
  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& q) { return q == 0; });
  }
  bool operator==(const LieElement& o) const { return flags == o.flags && coeffs == o.coeffs; }

  // Combination of cyclic words (rotated min first).
  std::map<CyclicWord, Rational> words() const {
    std::map<CyclicWord, Rational> out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      for (const auto& sw : lie_basis_words(flags, i)) {
        auto& slot = out[sw.word];
        slot += coeffs[i] * sw.sign;
      }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += coeffs[i].get_str() + "*(";
      auto t = permutation_unrank(std::vector<int>(flags.begin() + 2, flags.end()), i);
      s += std::to_string(flags[0]) + ";" + std::to_string(flags[1]);
      for (int x : t) s += "," + std::to_string(x);
      s += ")";
    }
    return s.empty() ? "0" : s;
  }
};

// Reads normal-form coordinates from a word combination known to be a Lie element.
inline LieElement lie_from_words(std::vector<int> flags, const std::map<CyclicWord, Rational>& words) {
  auto e = LieElement::zero(std::move(flags));
  for (const auto& [w, c] : words) {
    if (w.empty() || w[0] != e.flags[0]) throw std::logic_error("lie_from_words: word not rotated to its output");
    auto idx = normal_form_index(w, e.flags[1]);
    if (idx != static_cast<std::size_t>(-1)) e.coeffs[idx] += c;
  }
  return e;
}

// Relabels flags by `relabel` (old flag -> new flag).
inline LieElement lie_act(const std::map<int, int>& relabel, const LieElement& x) {
  std::vector<int> new_flags;
  for (int f : x.flags) new_flags.push_back(relabel.at(f));
  std::map<CyclicWord, Rational> out;
  for (const auto& [word, c] : x.words()) {
    auto w = word;
    for (auto& f : w) f = relabel.at(f);
    rotate_min_first(w);
    out[w] += c;
  }
  return lie_from_words(std::move(new_flags), out);
}

// Glue (u a) with (b v) into (u v).
inline CyclicWord glue_words(const CyclicWord& w1, int a, const CyclicWord& w2, int b) {
  CyclicWord out;
  out.reserve(w1.size() + w2.size() - 2);
  auto i = static_cast<std::size_t>(std::find(w1.begin(), w1.end(), a) - w1.begin());
  auto j = static_cast<std::size_t>(std::find(w2.begin(), w2.end(), b) - w2.begin());
  for (std::size_t k = 1; k < w1.size(); ++k) out.push_back(w1[(i + k) % w1.size()]);
  for (std::size_t k = 1; k < w2.size(); ++k) out.push_back(w2[(j + k) % w2.size()]);
  rotate_min_first(out);
  return out;
}

// Composition along flag a of x and flag b of y.
inline LieElement lie_contract(const LieElement& x, int a, const LieElement& y, int b) {
  if (std::find(x.flags.begin(), x.flags.end(), a) == x.flags.end() ||
      std::find(y.flags.begin(), y.flags.end(), b) == y.flags.end())
    throw std::invalid_argument("lie_contract: flag not on word");
  std::vector<int> merged;
  for (int f : x.flags)
    if (f != a) merged.push_back(f);
  for (int f : y.flags) {
    if (f == b) continue;
    if (std::find(merged.begin(), merged.end(), f) != merged.end())
      throw std::invalid_argument("lie_contract: flag sets overlap (both flags on the same word)");
    merged.push_back(f);
  }
  std::map<CyclicWord, Rational> out;
  auto wx = x.words();
  auto wy = y.words();
  for (const auto& [u, cu] : wx)
    for (const auto& [v, cv] : wy) out[glue_words(u, a, v, b)] += cu * cv;
  return lie_from_words(std::move(merged), out);
}

}  // namespace gcx
