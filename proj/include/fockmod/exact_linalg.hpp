#pragma once

// Row-reduced echelon spans over an exact field (mpq_class or
// GaussianRational). Shared by the localization and dynamics code.

#include <cstddef>
#include <optional>
#include <vector>

#include "fockmod/gaussian_rational.hpp"

namespace fockmod {

template <class F>
class RowEchelon {
public:
  explicit RowEchelon(std::size_t width) : width_(width) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<std::vector<F>>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Residual of v after eliminating every stored pivot column.
  std::vector<F> reduce(std::vector<F> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const F c = v[pivots_[k]];
      if (is_zero(c)) continue;
      for (std::size_t j = 0; j < width_; ++j)
        if (!is_zero(rows_[k][j])) v[j] -= c * rows_[k][j];
    }
    return v;
  }

  bool contains(const std::vector<F>& v) const {
    for (const auto& x : reduce(v))
      if (!is_zero(x)) return false;
    return true;
  }

  /// Adds v to the span; returns true when the dimension grew. Rows stay
  /// fully reduced and sorted by pivot column.
  bool insert(const std::vector<F>& v) {
    std::vector<F> r = reduce(v);
    std::size_t p = 0;
    while (p < width_ && is_zero(r[p])) ++p;
    if (p == width_) return false;
    const F lead = r[p];
    for (auto& x : r) x = x / lead;
    for (auto& row : rows_) {
      const F c = row[p];
      if (is_zero(c)) continue;
      for (std::size_t j = 0; j < width_; ++j) row[j] -= c * r[j];
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), p);
    return true;
  }

private:
  std::size_t width_;
  std::vector<std::vector<F>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Unique solution of the square system A x = b, or empty when A is singular.
template <class F>
std::optional<std::vector<F>> solve_unique(std::vector<std::vector<F>> a, std::vector<F> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(a[piv][col])) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || is_zero(a[i][col])) continue;
      const F f = a[i][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  std::vector<F> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace fockmod
