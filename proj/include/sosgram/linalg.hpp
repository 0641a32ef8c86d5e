// Exact dense linear algebra over the rationals.
//
// Elimination is done fraction-free on an integer copy of the matrix (each row
// scaled by the lcm of its denominators) using the Jordan form of Bareiss'
// recurrence, a[i][j] <- (p*a[i][j] - a[i][c]*a[r][j]) / p_prev, where every
// division is exact. Rows are normalized to rationals only at the end.
#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "sosgram/errors.hpp"
#include "sosgram/rational.hpp"

namespace sosgram {

using RationalVector = std::vector<Rational>;

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("ragged row in from_rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  RationalVector row(std::size_t i) const {
    return RationalVector(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RationalVector operator*(const RationalVector& v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
    RationalVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(v[j]) != 0 && sgn((*this)(i, j)) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    RationalMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

struct RrefResult {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;  // strictly increasing column indices
  std::size_t rank = 0;
};

namespace detail {

using IntegerRows = std::vector<std::vector<Integer>>;

/// Scales every row by the lcm of its denominators.
inline IntegerRows integer_rows(const RationalMatrix& m) {
  IntegerRows out(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Integer& den = m(i, j).get_den();
      if (den != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& q = m(i, j);
      if (sgn(q) == 0) continue;
      out[i][j] = q.get_num() * (l / q.get_den());
    }
  }
  return out;
}

/// Fraction-free Gauss-Jordan in place; returns pivot columns. After return the
/// first |pivots| rows are the nonzero rows and each pivot row i has its pivot
/// entry at pivots[i].
inline std::vector<std::size_t> fraction_free_jordan(IntegerRows& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  Integer prev = 1, tmp;
  std::size_t r = 0;
  const std::size_t rows = a.size();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Integer piv = a[r][c];
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Integer aic = a[i][c];
      auto& row = a[i];
      const auto& prow = a[r];
      for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(aic) == 0) {
          if (sgn(row[j]) == 0) continue;
          row[j] *= piv;
        } else {
          row[j] *= piv;
          if (sgn(prow[j]) != 0) {
            tmp = aic * prow[j];
            row[j] -= tmp;
          }
        }
        if (prev != 1 && sgn(row[j]) != 0) mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = piv;
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Reduced row echelon form, computed exactly.
inline RrefResult rref(const RationalMatrix& m) {
  auto a = detail::integer_rows(m);
  auto pivots = detail::fraction_free_jordan(a, m.cols());
  RrefResult res;
  res.reduced = RationalMatrix(m.rows(), m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const Integer& p = a[i][pivots[i]];
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sgn(a[i][j]) == 0) continue;
      Rational q(a[i][j], p);
      q.canonicalize();
      res.reduced(i, j) = q;
    }
  }
  res.rank = pivots.size();
  res.pivots = std::move(pivots);
  return res;
}

inline std::size_t rank(const RationalMatrix& m) {
  auto a = detail::integer_rows(m);
  return detail::fraction_free_jordan(a, m.cols()).size();
}

/// Basis of the right kernel read off from the rref: one vector per free column.
inline std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Row-space basis in rref form (nonzero rows only).
inline RationalMatrix row_space(const RationalMatrix& m) {
  RrefResult r = rref(m);
  RationalMatrix out(r.rank, m.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = r.reduced(i, j);
  return out;
}

/// True when the two row sets span the same subspace.
inline bool same_row_space(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.cols()) return false;
  return row_space(a) == row_space(b);
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

}  // namespace sosgram
