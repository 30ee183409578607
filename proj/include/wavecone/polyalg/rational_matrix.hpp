#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wavecone/errors.hpp"
#include "wavecone/polyalg/rational.hpp"

namespace wavecone {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows) {
    if (rows.empty()) return {};
    RationalMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DimensionError("from_rows: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static RationalMatrix from_columns(const std::vector<RationalVector>& cols, std::size_t rows) {
    RationalMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionError("from_columns: column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalVector row(std::size_t i) const {
    return RationalVector(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
  }
  RationalVector column(std::size_t j) const {
    RationalVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionError("matrix product " + a.shape() + " * " + b.shape());
    RationalMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend RationalVector operator*(const RationalMatrix& a, const RationalVector& x) {
    if (a.cols_ != x.size()) throw DimensionError("matrix-vector product: length mismatch");
    RationalVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) {
    a.require_same_shape(b, "+");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) {
    a.require_same_shape(b, "-");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& s) {
    for (auto& q : a.data_) q *= s;
    return a;
  }
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Vertical concatenation [a; b].
  static RationalMatrix stack(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows_ == 0) return b;
    if (b.rows_ == 0) return a;
    if (a.cols_ != b.cols_) throw DimensionError("stack: column count mismatch");
    RationalMatrix m(a.rows_ + b.rows_, a.cols_);
    std::copy(a.data_.begin(), a.data_.end(), m.data_.begin());
    std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + static_cast<long>(a.data_.size()));
    return m;
  }

  RationalMatrix select_columns(const std::vector<std::size_t>& idx) const {
    RationalMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const RationalMatrix& b, const char* op) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw DimensionError(std::string("matrix ") + op + ": " + shape() + " vs " + b.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

namespace detail {

/// Sparse integer row: (column, value) pairs sorted by column, no zeros.
using IntRow = std::vector<std::pair<std::size_t, Integer>>;

inline const Integer* row_entry(const IntRow& r, std::size_t col) {
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != r.end() && it->first == col) ? &it->second : nullptr;
}

/// r <- a*r - b*p, then divide by the content of r.
inline void combine_rows(IntRow& r, const Integer& a, const Integer& b, const IntRow& p) {
  IntRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.emplace_back(r[i].first, a * r[i].second);
      ++i;
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -b * p[j].second);
      ++j;
    } else {
      Integer v = a * r[i].second - b * p[j].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  Integer g = 0;
  for (const auto& e : out) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) break;
  }
  if (g > 1)
    for (auto& e : out) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  r = std::move(out);
}

inline IntRow integer_row(const RationalMatrix& m, std::size_t i) {
  Integer l = 1;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(i, j) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
  IntRow r;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (m(i, j) == 0) continue;
    Integer v = m(i, j).get_num() * (l / m(i, j).get_den());
    r.emplace_back(j, std::move(v));
  }
  return r;
}

}  // namespace detail

/// Reduced echelon form computed by fraction-free Gauss-Jordan elimination.
///
/// Rows stay integral: each update is r <- p*r - a*pivot_row followed by
/// division by the row content, so no rational arithmetic is needed until the
/// final back-read. Pivot rows are chosen sparsest-first within a column.
class Echelon {
 public:
  explicit Echelon(const RationalMatrix& m) : cols_(m.cols()) {
    std::vector<detail::IntRow> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      auto r = detail::integer_row(m, i);
      if (!r.empty()) rows.push_back(std::move(r));
    }
    std::vector<bool> used(rows.size(), false);
    for (std::size_t c = 0; c < cols_ && pivots_.size() < rows.size(); ++c) {
      std::size_t best = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (used[i] || rows[i].empty() || rows[i].front().first != c) continue;
        if (best == rows.size() || rows[i].size() < rows[best].size()) best = i;
      }
      if (best == rows.size()) continue;
      used[best] = true;
      const detail::IntRow pivot_row = rows[best];
      const Integer pv = pivot_row.front().second;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == best) continue;
        const Integer* a = detail::row_entry(rows[i], c);
        if (!a) continue;
        const Integer g = gcd(pv, *a);
        detail::combine_rows(rows[i], pv / g, *a / g, pivot_row);
      }
      pivots_.push_back({c, best});
    }
    // Pivot rows of earlier columns had c eliminated after the fact, so every
    // non-pivot row is now zero and each pivot row is zero in all other pivot
    // columns.
    for (const auto& pv : pivots_) rows_.push_back(rows[pv.row]);
    for (std::size_t k = 0; k < pivots_.size(); ++k) pivots_[k].row = k;
    std::vector<bool> is_pivot(cols_, false);
    for (const auto& pv : pivots_) is_pivot[pv.col] = true;
    for (std::size_t c = 0; c < cols_; ++c)
      if (!is_pivot[c]) free_.push_back(c);
  }

  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<std::size_t>& free_columns() const { return free_; }
  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> c;
    for (const auto& pv : pivots_) c.push_back(pv.col);
    return c;
  }

  /// Entry (k, col) of the reduced form scaled so the k-th pivot is 1.
  Rational normalized(std::size_t k, std::size_t col) const {
    const Integer* v = detail::row_entry(rows_[k], col);
    if (!v) return 0;
    Rational q(*v, rows_[k].front().second);
    q.canonicalize();
    return q;
  }

  /// Nullspace basis: one vector per free column f with x_f = 1.
  std::vector<RationalVector> kernel_basis() const {
    std::vector<RationalVector> basis;
    for (std::size_t f : free_) {
      RationalVector x(cols_);
      x[f] = 1;
      for (std::size_t k = 0; k < pivots_.size(); ++k) x[pivots_[k].col] = -normalized(k, f);
      basis.push_back(std::move(x));
    }
    return basis;
  }

  /// Nonzero rows of the reduced form with unit pivots (a full-row-rank factor).
  RationalMatrix reduced_rows() const {
    RationalMatrix f(pivots_.size(), cols_);
    for (std::size_t k = 0; k < pivots_.size(); ++k)
      for (const auto& [c, v] : rows_[k]) {
        Rational q(v, rows_[k].front().second);
        q.canonicalize();
        f(k, c) = q;
      }
    return f;
  }

 private:
  struct Pivot {
    std::size_t col;
    std::size_t row;
  };
  std::size_t cols_;
  std::vector<Pivot> pivots_;
  std::vector<detail::IntRow> rows_;
  std::vector<std::size_t> free_;
};

struct NullspaceResult {
  std::size_t rank = 0;
  std::vector<RationalVector> basis;
};

inline NullspaceResult rational_nullspace(const RationalMatrix& m) {
  Echelon e(m);
  return {e.rank(), e.kernel_basis()};
}

inline std::size_t rank(const RationalMatrix& m) { return Echelon(m).rank(); }

/// Some solution of m x = b, or nullopt when the system is inconsistent.
inline std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b) {
  if (b.size() != m.rows()) throw DimensionError("solve: right-hand side length mismatch");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Echelon e(aug);
  const auto piv = e.pivot_columns();
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  RationalVector x(m.cols());
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = e.normalized(k, m.cols());
  return x;
}

inline std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of non-square " + m.shape() + " matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e(aug);
  if (e.rank() < n || e.pivot_columns().back() >= n) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) inv(k, j) = e.normalized(k, n + j);
  return inv;
}

/// Exact Moore-Penrose pseudoinverse through a rank factorization m = C F:
/// m^+ = F^T (F F^T)^{-1} (C^T C)^{-1} C^T.
inline RationalMatrix moore_penrose(const RationalMatrix& m) {
  Echelon e(m);
  if (e.rank() == 0) return RationalMatrix(m.cols(), m.rows());
  const RationalMatrix f = e.reduced_rows();
  const RationalMatrix c = m.select_columns(e.pivot_columns());
  const RationalMatrix ft = f.transpose();
  const RationalMatrix ct = c.transpose();
  auto ffi = inverse(f * ft);
  auto cci = inverse(ct * c);
  if (!ffi || !cci) throw InternalError("moore_penrose: rank factor is not of full rank");
  return ft * (*ffi) * (*cci) * ct;
}

/// Indices of a maximal linearly independent subset of the given vectors,
/// chosen greedily in input order.
inline std::vector<std::size_t> independent_subset(const std::vector<RationalVector>& vectors) {
  std::vector<std::size_t> keep;
  std::vector<RationalVector> kept;
  std::size_t current_rank = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    kept.push_back(vectors[i]);
    const std::size_t r = rank(RationalMatrix::from_rows(kept));
    if (r > current_rank) {
      current_rank = r;
      keep.push_back(i);
    } else {
      kept.pop_back();
    }
  }
  return keep;
}

}  // namespace wavecone
