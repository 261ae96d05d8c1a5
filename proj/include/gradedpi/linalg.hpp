#pragma once

// Exact incremental row reduction over cyclotomic scalars.

#include "gradedpi/cyclotomic.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gradedpi {

using Vector = std::vector<Scalar>;

inline bool is_zero_vector(const Vector& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

/// Reduced row echelon form maintained one row at a time.
///
/// Rows are kept fully reduced with unit pivots, so the null space can be
/// read off directly and membership tests are a single reduction pass.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t width) : width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == width_; }
  const std::vector<Vector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v against the current rows in place.
  void reduce(Vector& v) const {
    check(v);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Scalar& c = v[pivots_[r]];
      if (c.is_zero()) continue;
      const Scalar factor = c;
      const auto& row = rows_[r];
      for (std::size_t j = 0; j < width_; ++j) {
        if (!row[j].is_zero()) v[j] -= factor * row[j];
      }
    }
  }

  bool contains(Vector v) const {
    reduce(v);
    return is_zero_vector(v);
  }

  /// Inserts v; returns true when it increased the rank.
  bool add(Vector v) {
    reduce(v);
    std::size_t p = 0;
    while (p < width_ && v[p].is_zero()) ++p;
    if (p == width_) return false;
    const Scalar inv = v[p].inverse();
    for (std::size_t j = p; j < width_; ++j) {
      if (!v[j].is_zero()) v[j] *= inv;
    }
    for (auto& row : rows_) {
      const Scalar c = row[p];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (!v[j].is_zero()) row[j] -= c * v[j];
      }
    }
    // keep rows sorted by pivot column
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < p) ++at;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), p);
    return true;
  }

  /// Basis of {x : row . x = 0 for every row}, one vector per free column.
  std::vector<Vector> kernel() const {
    std::vector<bool> is_pivot(width_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    std::vector<Vector> out;
    for (std::size_t f = 0; f < width_; ++f) {
      if (is_pivot[f]) continue;
      Vector x(width_, Scalar(0));
      x[f] = Scalar(1);
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!rows_[r][f].is_zero()) x[pivots_[r]] = -rows_[r][f];
      }
      out.push_back(std::move(x));
    }
    return out;
  }

 private:
  void check(const Vector& v) const {
    if (v.size() != width_) throw std::invalid_argument("RowEchelon: vector width mismatch");
  }

  std::size_t width_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t rank_of(const std::vector<Vector>& vectors, std::size_t width) {
  RowEchelon ech(width);
  for (const auto& v : vectors) ech.add(v);
  return ech.rank();
}

/// Solves sum_i c_i basis[i] = target for c when target lies in the span.
inline std::optional<Vector> solve_in_span(const std::vector<Vector>& basis, const Vector& target) {
  const std::size_t n = basis.size();
  if (n == 0) {
    if (is_zero_vector(target)) return Vector{};
    return std::nullopt;
  }
  const std::size_t width = target.size();
  // Augmented rows [v | e_i] so that reducing the target tracks coefficients.
  RowEchelon ech(width + n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector row(width + n, Scalar(0));
    for (std::size_t j = 0; j < width; ++j) row[j] = basis[i][j];
    row[width + i] = Scalar(1);
    ech.add(std::move(row));
  }
  Vector t(width + n, Scalar(0));
  for (std::size_t j = 0; j < width; ++j) t[j] = target[j];
  ech.reduce(t);
  for (std::size_t j = 0; j < width; ++j) {
    if (!t[j].is_zero()) return std::nullopt;
  }
  Vector c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = -t[width + i];
  return c;
}

}  // namespace gradedpi
