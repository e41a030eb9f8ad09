#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

template <class Scalar>
struct MatrixEntry {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

/**
 * Sparse matrix stored as a row-major sorted list of nonzero entries.
 * Duplicate positions are summed on construction and zeros are dropped.
 */
template <class Scalar = Rational>
class SparseMatrix {
 public:
  using Entry = MatrixEntry<Scalar>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Entry> triplets) {
    SparseMatrix m(rows, cols);
    for (const auto& e : triplets)
      if (e.row >= rows || e.col >= cols) throw std::out_of_range("SparseMatrix: entry index out of range");
    std::sort(triplets.begin(), triplets.end(), [](const Entry& a, const Entry& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    for (auto& e : triplets) {
      if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
        m.entries_.back().value += e.value;
      } else {
        m.entries_.push_back(std::move(e));
      }
    }
    std::erase_if(m.entries_, [](const Entry& e) { return e.value == 0; });
    return m;
  }

  static SparseMatrix identity(std::size_t n) {
    std::vector<Entry> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, Scalar(1)});
    return from_triplets(n, n, std::move(t));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Scalar at(std::size_t r, std::size_t c) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(r, c),
                               [](const Entry& e, const std::pair<std::size_t, std::size_t>& key) {
                                 return std::tie(e.row, e.col) < std::tie(key.first, key.second);
                               });
    if (it != entries_.end() && it->row == r && it->col == c) return it->value;
    return Scalar(0);
  }

  SparseMatrix transpose() const {
    std::vector<Entry> t;
    t.reserve(entries_.size());
    for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
    return from_triplets(cols_, rows_, std::move(t));
  }

  // this * other
  SparseMatrix multiply(const SparseMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("SparseMatrix::multiply: dimension mismatch");
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> other_rows(other.rows_);
    for (const auto& e : other.entries_) other_rows[e.row].push_back({e.col, e.value});
    std::vector<Entry> t;
    for (const auto& e : entries_)
      for (const auto& [c, v] : other_rows[e.col]) t.push_back({e.row, c, e.value * v});
    return from_triplets(rows_, other.cols_, std::move(t));
  }

  std::vector<Scalar> apply(const std::vector<Scalar>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("SparseMatrix::apply: dimension mismatch");
    std::vector<Scalar> y(rows_, Scalar(0));
    for (const auto& e : entries_) y[e.row] += e.value * x[e.col];
    return y;
  }

  SparseMatrix permuted(const std::vector<std::size_t>& row_perm, const std::vector<std::size_t>& col_perm) const {
    std::vector<Entry> t;
    t.reserve(entries_.size());
    for (const auto& e : entries_) t.push_back({row_perm[e.row], col_perm[e.col], e.value});
    return from_triplets(rows_, cols_, std::move(t));
  }

  std::vector<std::vector<std::pair<std::size_t, Scalar>>> row_lists() const {
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> out(rows_);
    for (const auto& e : entries_) out[e.row].push_back({e.col, e.value});
    return out;
  }

  bool operator==(const SparseMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_ || entries_.size() != other.entries_.size()) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& a = entries_[i];
      const auto& b = other.entries_[i];
      if (a.row != b.row || a.col != b.col || a.value != b.value) return false;
    }
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

template <class To, class From>
SparseMatrix<To> convert_matrix(const SparseMatrix<From>& m) {
  std::vector<MatrixEntry<To>> t;
  t.reserve(m.nnz());
  for (const auto& e : m.entries()) t.push_back({e.row, e.col, To(e.value)});
  return SparseMatrix<To>::from_triplets(m.rows(), m.cols(), std::move(t));
}

}  // namespace gcx
