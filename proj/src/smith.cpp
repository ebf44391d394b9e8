#include "fockmod/smith.hpp"

#include <algorithm>
#include <sstream>

#include "fockmod/error.hpp"

namespace fockmod {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVec>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error(ErrorKind::DimensionMismatch, "column length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVec IntMatrix::column(std::size_t j) const {
  IntVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntVec IntMatrix::row(std::size_t i) const {
  return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVec IntMatrix::apply(const IntVec& x) const {
  if (x.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
  IntVec y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
  return y;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::hcat(const IntMatrix& other) const {
  if (other.rows_ != rows_) throw Error(ErrorKind::DimensionMismatch, "hcat row count");
  IntMatrix m(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
  }
  return m;
}

// Fraction-free Bareiss elimination.
mpz_class IntMatrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const mpz_class& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const mpz_class& c) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const mpz_class& c) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, j) = -(*this)(k, j);
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

IntVec SmithForm::diagonal() const {
  IntVec d(std::min(D.rows(), D.cols()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = D(i, i);
  return d;
}

namespace {

// Mirrors every elementary operation on A into U, U^{-1}, V, V^{-1}.
class SmithWorker {
public:
  explicit SmithWorker(const IntMatrix& a)
      : a_(a),
        u_(IntMatrix::identity(a.rows())),
        u_inv_(IntMatrix::identity(a.rows())),
        v_(IntMatrix::identity(a.cols())),
        v_inv_(IntMatrix::identity(a.cols())) {}

  void row_add(std::size_t i, std::size_t j, const mpz_class& c) {
    a_.add_row(i, j, c);
    u_.add_row(i, j, c);
    u_inv_.add_col(j, i, -c);
  }
  void row_swap(std::size_t i, std::size_t j) {
    a_.swap_rows(i, j);
    u_.swap_rows(i, j);
    u_inv_.swap_cols(i, j);
  }
  void row_negate(std::size_t i) {
    a_.negate_row(i);
    u_.negate_row(i);
    u_inv_.negate_col(i);
  }
  void col_add(std::size_t i, std::size_t j, const mpz_class& c) {
    a_.add_col(i, j, c);
    v_.add_col(i, j, c);
    v_inv_.add_row(j, i, -c);
  }
  void col_swap(std::size_t i, std::size_t j) {
    a_.swap_cols(i, j);
    v_.swap_cols(i, j);
    v_inv_.swap_rows(i, j);
  }

  SmithForm run() {
    const std::size_t m = a_.rows(), n = a_.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      if (!select_pivot(t)) break;
      for (;;) {
        bool clean = true;
        const mpz_class p = a_(t, t);
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a_(i, t) == 0) continue;
          mpz_class q;
          mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), p.get_mpz_t());
          if (q != 0) row_add(i, t, -q);
          if (a_(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a_(t, j) == 0) continue;
          mpz_class q;
          mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), p.get_mpz_t());
          if (q != 0) col_add(j, t, -q);
          if (a_(t, j) != 0) clean = false;
        }
        if (!clean) {
          select_pivot(t);
          continue;
        }
        // row t and column t are clear; enforce p | every remaining entry
        auto bad = find_non_multiple(t);
        if (!bad) break;
        row_add(t, *bad, 1);
      }
      if (a_(t, t) < 0) row_negate(t);
    }
    SmithForm out{std::move(u_), std::move(a_), std::move(v_), std::move(u_inv_), std::move(v_inv_), t};
    return out;
  }

private:
  bool select_pivot(std::size_t t) {
    const std::size_t m = a_.rows(), n = a_.cols();
    bool found = false;
    std::size_t bi = 0, bj = 0;
    mpz_class best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (a_(i, j) == 0) continue;
        mpz_class v = abs(a_(i, j));
        if (!found || v < best) {
          found = true;
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (!found) return false;
    row_swap(t, bi);
    col_swap(t, bj);
    return true;
  }

  std::optional<std::size_t> find_non_multiple(std::size_t t) const {
    const mpz_class& p = a_(t, t);
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      for (std::size_t j = t + 1; j < a_.cols(); ++j)
        if (!mpz_divisible_p(a_(i, j).get_mpz_t(), p.get_mpz_t())) return i;
    return std::nullopt;
  }

  IntMatrix a_, u_, u_inv_, v_, v_inv_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) { return SmithWorker(a).run(); }

std::vector<IntVec> integer_kernel(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  std::vector<IntVec> basis;
  for (std::size_t j = s.rank; j < a.cols(); ++j) basis.push_back(s.V.column(j));
  return basis;
}

std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "solve_integer rhs");
  SmithForm s = smith_normal_form(a);
  IntVec c = s.U.apply(b);
  IntVec w(a.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < s.rank) {
      const mpz_class& d = s.D(i, i);
      if (!mpz_divisible_p(c[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      w[i] = c[i] / d;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.apply(w);
}

}  // namespace fockmod
