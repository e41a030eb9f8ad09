#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gcx/linalg/sparse_matrix.hpp"

namespace gcx {

using RationalVector = std::vector<Rational>;

struct MembershipResult {
  bool in_image = false;
  RationalVector solution;     // m * solution == v when in_image
  RationalVector certificate;  // certificate^T * m == 0 and certificate^T * v != 0 otherwise
};

namespace detail {

using QRow = std::map<std::size_t, Rational>;

inline void add_scaled(QRow& dst, const QRow& src, const Rational& factor) {
  for (const auto& [c, v] : src) {
    auto it = dst.find(c);
    if (it == dst.end()) {
      dst.emplace(c, factor * v);
    } else {
      it->second += factor * v;
      if (it->second == 0) dst.erase(it);
    }
  }
}

}  // namespace detail

/**
 * Exact solver for m x = v over the rationals. Rows are reduced one at a time
 * against pivots keyed by their leading column; each row carries the
 * combination of original rows that produced it so that an inconsistent row
 * yields a left certificate directly.
 */
inline MembershipResult solve_membership(const SparseMatrix<Rational>& m, const RationalVector& v) {
  if (v.size() != m.rows()) throw std::invalid_argument("solve_membership: vector length must equal rows(m)");
  struct Pivot {
    detail::QRow coeffs;
    Rational rhs;
    detail::QRow history;
  };
  std::map<std::size_t, Pivot> pivots;  // leading column -> pivot
  auto rows = m.row_lists();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Pivot cur;
    for (const auto& [c, val] : rows[r]) cur.coeffs.emplace(c, val);
    cur.rhs = v[r];
    cur.history.emplace(r, Rational(1));
    while (!cur.coeffs.empty()) {
      auto lead = cur.coeffs.begin()->first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) break;
      Rational factor = -cur.coeffs.begin()->second / it->second.coeffs.begin()->second;
      detail::add_scaled(cur.coeffs, it->second.coeffs, factor);
      cur.rhs += factor * it->second.rhs;
      detail::add_scaled(cur.history, it->second.history, factor);
    }
    if (cur.coeffs.empty()) {
      if (cur.rhs != 0) {
        MembershipResult res;
        res.certificate.assign(m.rows(), Rational(0));
        for (const auto& [i, c] : cur.history) res.certificate[i] = c;
        return res;
      }
      continue;
    }
    auto lead = cur.coeffs.begin()->first;
    pivots.emplace(lead, std::move(cur));
  }
  MembershipResult res;
  res.in_image = true;
  res.solution.assign(m.cols(), Rational(0));
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const auto& piv = it->second;
    Rational acc = piv.rhs;
    auto c = piv.coeffs.begin();
    const Rational lead_val = c->second;
    for (++c; c != piv.coeffs.end(); ++c) acc -= c->second * res.solution[c->first];
    res.solution[it->first] = acc / lead_val;
  }
  return res;
}

// Reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref_in_place(std::vector<detail::QRow>& rows) {
  std::vector<std::size_t> pivot_cols;
  std::vector<detail::QRow> done;
  for (auto& row : rows) {
    for (std::size_t k = 0; k < done.size(); ++k) {
      auto f = row.find(pivot_cols[k]);
      if (f != row.end()) {
        Rational factor = -f->second;
        detail::add_scaled(row, done[k], factor);
      }
    }
    if (row.empty()) continue;
    auto lead = row.begin();
    Rational inv = 1 / lead->second;
    for (auto& [c, val] : row) val *= inv;
    std::size_t col = row.begin()->first;
    for (auto& d : done) {
      auto f = d.find(col);
      if (f != d.end()) {
        Rational factor = -f->second;
        detail::add_scaled(d, row, factor);
      }
    }
    pivot_cols.push_back(col);
    done.push_back(std::move(row));
  }
  rows = std::move(done);
  return pivot_cols;
}

struct KernelBasis {
  std::vector<RationalVector> vectors;
  std::vector<std::size_t> free_columns;  // vectors[i] is 1 at free_columns[i] and 0 at the other free columns
};

// Basis of {x : m x = 0} from the reduced row echelon form.
inline KernelBasis kernel_with_free_columns(const SparseMatrix<Rational>& m) {
  auto lists = m.row_lists();
  std::vector<detail::QRow> rows;
  for (auto& l : lists) {
    detail::QRow r;
    for (auto& [c, v] : l) r.emplace(c, v);
    if (!r.empty()) rows.push_back(std::move(r));
  }
  auto pivots = rref_in_place(rows);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : pivots) is_pivot[c] = 1;
  KernelBasis basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector x(m.cols(), Rational(0));
    x[free] = 1;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      auto f = rows[k].find(free);
      if (f != rows[k].end()) x[pivots[k]] = -f->second;
    }
    basis.vectors.push_back(std::move(x));
    basis.free_columns.push_back(free);
  }
  return basis;
}

inline std::vector<RationalVector> kernel_basis(const SparseMatrix<Rational>& m) { return kernel_with_free_columns(m).vectors; }

}  // namespace gcx
