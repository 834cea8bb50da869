#pragma once

// Exact linear algebra over an interned field: incremental row echelon form,
// null spaces and matrix inverses.

#include <map>
#include <optional>
#include <vector>

#include "hopfknot/scalar.hpp"

namespace hopfknot {

using Row = std::vector<Scalar>;
using Matrix = std::vector<Row>;

/// Reduced row echelon basis of a row space, grown one row at a time so that
/// tall systems (n^2 equations in n unknowns) never need to be stored whole.
class RowEchelon {
 public:
  RowEchelon(const Field* f, std::size_t cols) : field_(f), cols_(cols) {}

  /// Reduces `row` against the basis; returns true if it enlarged the row space.
  bool add(Row row) {
    for (const auto& [piv, basis] : rows_) {
      if (row[piv].is_zero()) continue;
      Scalar c = row[piv];
      for (std::size_t k = 0; k < cols_; ++k)
        if (!basis[k].is_zero()) row[k] -= c * basis[k];
    }
    std::size_t piv = 0;
    while (piv < cols_ && row[piv].is_zero()) ++piv;
    if (piv == cols_) return false;
    Scalar inv = row[piv].inverse();
    for (auto& x : row)
      if (!x.is_zero()) x = x * inv;
    for (auto& [p, basis] : rows_) {
      if (basis[piv].is_zero()) continue;
      Scalar c = basis[piv];
      for (std::size_t k = 0; k < cols_; ++k)
        if (!row[k].is_zero()) basis[k] -= c * row[k];
    }
    rows_.emplace(piv, std::move(row));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == cols_; }

  /// Basis of {x : row . x = 0 for every added row}.
  std::vector<Row> null_space() const {
    std::vector<Row> out;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (rows_.count(free)) continue;
      Row v(cols_, Scalar::zero(field_));
      v[free] = Scalar::one(field_);
      for (const auto& [piv, basis] : rows_)
        if (!basis[free].is_zero()) v[piv] = -basis[free];
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  const Field* field_;
  std::size_t cols_;
  std::map<std::size_t, Row> rows_;
};

/// Gauss-Jordan inverse; std::nullopt when singular.
inline std::optional<Matrix> invert(const Matrix& m, const Field* f) {
  const std::size_t n = m.size();
  Matrix a = m;
  Matrix inv(n, Row(n, Scalar::zero(f)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Scalar::one(f);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Scalar s = a[col][col].inverse();
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[col][k].is_zero()) a[col][k] = a[col][k] * s;
      if (!inv[col][k].is_zero()) inv[col][k] = inv[col][k] * s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Scalar c = a[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        if (!a[col][k].is_zero()) a[r][k] -= c * a[col][k];
        if (!inv[col][k].is_zero()) inv[r][k] -= c * inv[col][k];
      }
    }
  }
  return inv;
}

}  // namespace hopfknot
