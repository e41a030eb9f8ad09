#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gcx/linalg/modular.hpp"
#include "gcx/linalg/sparse_matrix.hpp"

namespace gcx {

using ModRow = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

/**
 * Incremental row echelon form over F_p. Each stored pivot row is monic at its
 * leading (smallest) column and only reduced at leading positions, so fill-in
 * stays local for the very sparse rows produced by graph complexes.
 */
class ModularEchelon {
 public:
  // Columns beyond `cols` are accepted and grow the index on demand.
  ModularEchelon(std::size_t cols, std::uint64_t p) : p_(p), pivot_of_col_(cols, -1) {}

  std::uint64_t prime() const { return p_; }
  std::size_t rank() const { return pivots_.size(); }
  // Leading column of each stored pivot, in insertion order.
  const std::vector<std::uint32_t>& pivot_columns() const { return pivot_cols_; }

  // Returns true when the row was independent of the stored pivots.
  bool insert(ModRow row) {
    ModRow scratch;
    if (!row.empty() && row.back().first >= pivot_of_col_.size()) pivot_of_col_.resize(row.back().first + 1, -1);
    while (!row.empty()) {
      auto lead = row.front().first;
      int piv = pivot_of_col_[lead];
      if (piv < 0) {
        std::uint64_t inv = inv_mod(row.front().second, p_);
        for (auto& e : row) e.second = mul_mod(e.second, inv, p_);
        pivot_of_col_[lead] = static_cast<int>(pivots_.size());
        pivot_cols_.push_back(lead);
        pivots_.push_back(std::move(row));
        return true;
      }
      axpy(row, pivots_[static_cast<std::size_t>(piv)], p_ - row.front().second, scratch);
    }
    return false;
  }

 private:
  // row += factor * piv
  void axpy(ModRow& row, const ModRow& piv, std::uint64_t factor, ModRow& out) const {
    out.clear();
    out.reserve(row.size() + piv.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < piv.size()) {
      if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
        out.push_back(row[i++]);
      } else if (i == row.size() || piv[j].first < row[i].first) {
        out.push_back({piv[j].first, mul_mod(piv[j].second, factor, p_)});
        ++j;
      } else {
        std::uint64_t v = (row[i].second + mul_mod(piv[j].second, factor, p_)) % p_;
        if (v) out.push_back({row[i].first, v});
        ++i;
        ++j;
      }
    }
    row.swap(out);
  }

  std::uint64_t p_;
  std::vector<int> pivot_of_col_;
  std::vector<ModRow> pivots_;
  std::vector<std::uint32_t> pivot_cols_;
};

namespace detail {

// Column relabeling by ascending column count (sparse columns lead).
template <class Scalar>
std::vector<std::uint32_t> markowitz_column_order(const SparseMatrix<Scalar>& m) {
  std::vector<std::size_t> count(m.cols(), 0);
  for (const auto& e : m.entries()) ++count[e.col];
  std::vector<std::uint32_t> order(m.cols());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return count[a] < count[b]; });
  std::vector<std::uint32_t> relabel(m.cols());
  for (std::size_t i = 0; i < order.size(); ++i) relabel[order[i]] = static_cast<std::uint32_t>(i);
  return relabel;
}

template <class Row>
void sort_rows_by_length(std::vector<Row>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return !a.empty() && !b.empty() && a.front().first < b.front().first;
  });
}

inline void make_primitive(std::vector<std::pair<std::uint32_t, Integer>>& row) {
  Integer g = 0;
  for (const auto& e : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

}  // namespace detail

template <class Scalar>
std::size_t rank_mod_p(const SparseMatrix<Scalar>& m, std::uint64_t p) {
  // eliminate along the smaller dimension
  if (m.rows() < m.cols()) return rank_mod_p(m.transpose(), p);
  auto relabel = detail::markowitz_column_order(m);
  std::vector<ModRow> rows(m.rows());
  for (const auto& e : m.entries()) {
    std::uint64_t v = reduce_mod(e.value, p);
    if (v) rows[e.row].push_back({relabel[e.col], v});
  }
  for (auto& r : rows) std::sort(r.begin(), r.end());
  detail::sort_rows_by_length(rows);
  ModularEchelon ech(m.cols(), p);
  for (auto& r : rows) {
    if (r.empty()) continue;
    ech.insert(std::move(r));
    if (ech.rank() == m.cols()) break;
  }
  return ech.rank();
}

// Fraction-free elimination over the integers (rows scaled to primitive form).
inline std::size_t rank_exact(const SparseMatrix<Rational>& m) {
  if (m.rows() < m.cols()) return rank_exact(m.transpose());
  using IntRow = std::vector<std::pair<std::uint32_t, Integer>>;
  auto relabel = detail::markowitz_column_order(m);
  std::vector<IntRow> rows(m.rows());
  {
    std::vector<Integer> lcm(m.rows(), 1);
    for (const auto& e : m.entries()) mpz_lcm(lcm[e.row].get_mpz_t(), lcm[e.row].get_mpz_t(), e.value.get_den_mpz_t());
    for (const auto& e : m.entries()) {
      Integer v = e.value.get_num() * (lcm[e.row] / e.value.get_den());
      rows[e.row].push_back({relabel[e.col], v});
    }
  }
  for (auto& r : rows) {
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    detail::make_primitive(r);
  }
  detail::sort_rows_by_length(rows);
  std::vector<int> pivot_of_col(m.cols(), -1);
  std::vector<IntRow> pivots;
  IntRow out;
  for (auto& row : rows) {
    while (!row.empty()) {
      int piv = pivot_of_col[row.front().first];
      if (piv < 0) {
        pivot_of_col[row.front().first] = static_cast<int>(pivots.size());
        pivots.push_back(std::move(row));
        break;
      }
      const IntRow& pr = pivots[static_cast<std::size_t>(piv)];
      Integer a = pr.front().second;
      Integer b = row.front().second;
      Integer g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      a /= g;
      b /= g;
      // row := a*row - b*pr
      out.clear();
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < pr.size()) {
        if (j == pr.size() || (i < row.size() && row[i].first < pr[j].first)) {
          out.push_back({row[i].first, a * row[i].second});
          ++i;
        } else if (i == row.size() || pr[j].first < row[i].first) {
          out.push_back({pr[j].first, -b * pr[j].second});
          ++j;
        } else {
          Integer v = a * row[i].second - b * pr[j].second;
          if (v != 0) out.push_back({row[i].first, v});
          ++i;
          ++j;
        }
      }
      row.swap(out);
      detail::make_primitive(row);
    }
    if (pivots.size() == m.cols()) break;
  }
  return pivots.size();
}

enum class RankMode { ExactRational, ModularVerified };

struct RankReport {
  std::size_t rank = 0;
  RankMode mode = RankMode::ExactRational;
  std::vector<std::uint64_t> primes;
  std::vector<std::size_t> modular_ranks;
  bool exact_fallback = false;
};

namespace detail {
inline std::vector<std::uint64_t>& session_prime_slot() {
  static std::vector<std::uint64_t> primes;
  return primes;
}
}  // namespace detail

// Fixes the primes used by ModularVerified when none are supplied.
inline void set_session_primes(std::vector<std::uint64_t> primes) { detail::session_prime_slot() = std::move(primes); }
inline void seed_session_primes(std::uint64_t seed) { set_session_primes(random_primes(2, seed)); }

// Primes used by ModularVerified when none are supplied; drawn once per process unless seeded.
inline const std::vector<std::uint64_t>& session_primes() {
  auto& primes = detail::session_prime_slot();
  if (primes.empty()) {
    auto seed = static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count());
    primes = random_primes(2, seed ^ 0x9e3779b97f4a7c15ull);
  }
  return primes;
}

template <class Scalar>
RankReport rank_report(const SparseMatrix<Scalar>& m, RankMode mode = RankMode::ModularVerified,
                       std::vector<std::uint64_t> primes = {}) {
  RankReport rep;
  rep.mode = mode;
  auto exact = [&] {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      return rank_exact(m);
    } else {
      return rank_exact(convert_matrix<Rational>(m));
    }
  };
  if (mode == RankMode::ExactRational) {
    rep.rank = exact();
    return rep;
  }
  if (primes.empty()) primes = session_primes();
  if (primes.size() < 2) throw std::invalid_argument("rank: ModularVerified needs at least two primes");
  rep.primes = primes;
  for (auto p : primes) {
    try {
      rep.modular_ranks.push_back(rank_mod_p(m, p));
    } catch (const std::domain_error&) {
      rep.modular_ranks.push_back(static_cast<std::size_t>(-1));  // denominator divisible by p
    }
  }
  bool agree = std::all_of(rep.modular_ranks.begin(), rep.modular_ranks.end(),
                           [&](std::size_t r) { return r == rep.modular_ranks.front(); });
  if (agree && rep.modular_ranks.front() != static_cast<std::size_t>(-1)) {
    rep.rank = rep.modular_ranks.front();
  } else {
    rep.exact_fallback = true;
    rep.rank = exact();
  }
  return rep;
}

template <class Scalar>
std::size_t rank(const SparseMatrix<Scalar>& m, RankMode mode = RankMode::ModularVerified) {
  return rank_report(m, mode).rank;
}

}  // namespace gcx
