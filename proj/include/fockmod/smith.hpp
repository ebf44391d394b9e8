#pragma once

// Dense integer matrices and the Smith normal form that every module
// computation is reduced to.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace fockmod {

using IntVec = std::vector<mpz_class>;

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVec>& cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVec column(std::size_t j) const;
  IntVec row(std::size_t i) const;
  IntVec apply(const IntVec& x) const;
  IntMatrix transpose() const;
  /// [this | other]
  IntMatrix hcat(const IntMatrix& other) const;
  mpz_class determinant() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  /// row i += c * row j
  void add_row(std::size_t i, std::size_t j, const mpz_class& c);
  /// col i += c * col j
  void add_col(std::size_t i, std::size_t j, const mpz_class& c);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  std::string str() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// D = U * A * V with U, V unimodular and D diagonal, nonnegative, with
/// d_1 | d_2 | ... | d_rank and zeros after. The inverses are tracked
/// alongside so that callers never invert integer matrices themselves.
struct SmithForm {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
  std::size_t rank = 0;

  IntVec diagonal() const;
};

/// Pivot rule: smallest nonzero absolute value in the active block, ties
/// broken row-major. Deterministic for a given input.
SmithForm smith_normal_form(const IntMatrix& a);

/// Basis of the integer kernel {x : A x = 0}.
std::vector<IntVec> integer_kernel(const IntMatrix& a);

/// Some integer x with A x = b, if one exists.
std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b);

}  // namespace fockmod
