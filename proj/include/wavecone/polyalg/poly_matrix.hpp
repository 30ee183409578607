#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wavecone/errors.hpp"
#include "wavecone/polyalg/hom_poly.hpp"
#include "wavecone/polyalg/rational_matrix.hpp"

namespace wavecone {

/// Matrix of homogeneous polynomials sharing one variable count and degree.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, int nvars, int degree)
      : rows_(rows), cols_(cols), nvars_(nvars), degree_(degree), entries_(rows * cols, HomPoly(nvars, degree)) {}

  static PolyMatrix identity(std::size_t n, int nvars) {
    return scalar_identity(n, HomPoly::constant(nvars, 1));
  }
  static PolyMatrix scalar_identity(std::size_t n, const HomPoly& p) {
    PolyMatrix m(n, n, p.nvars(), p.degree());
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, p);
    return m;
  }
  /// Degree-0 embedding of a constant matrix.
  static PolyMatrix constant(const RationalMatrix& c, int nvars) {
    PolyMatrix m(c.rows(), c.cols(), nvars, 0);
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) m.set(i, j, HomPoly::constant(nvars, c(i, j)));
    return m;
  }
  /// sum_alpha coeffs[alpha] xi^alpha; all alpha must share one degree.
  static PolyMatrix from_coefficients(std::size_t rows, std::size_t cols, int nvars, int degree,
                                      const std::map<MultiIndex, RationalMatrix, MonomialOrder>& coeffs) {
    PolyMatrix m(rows, cols, nvars, degree);
    for (const auto& [alpha, c] : coeffs) {
      if (c.rows() != rows || c.cols() != cols)
        throw DimensionError("coefficient matrix " + c.shape() + " does not match symbol shape");
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          if (c(i, j) != 0) m.at(i, j).add_term(alpha, c(i, j));
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int nvars() const { return nvars_; }
  int degree() const { return degree_; }

  const HomPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  HomPoly& at(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }

  void set(std::size_t i, std::size_t j, HomPoly p) {
    if (p.nvars() != nvars_ || p.degree() != degree_)
      throw DimensionError("PolyMatrix entry (" + std::to_string(i) + "," + std::to_string(j) + ") has degree " +
                           std::to_string(p.degree()) + ", matrix degree is " + std::to_string(degree_));
    entries_.at(i * cols_ + j) = std::move(p);
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  PolyMatrix transpose() const {
    PolyMatrix t(cols_, rows_, nvars_, degree_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.entries_[j * rows_ + i] = (*this)(i, j);
    return t;
  }

  HomPoly trace() const {
    if (rows_ != cols_) throw DimensionError("trace of non-square PolyMatrix");
    HomPoly t(nvars_, degree_);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  RationalMatrix evaluate(std::span<const Rational> xi) const {
    RationalMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).evaluate(xi);
    return m;
  }

  /// Coefficient matrix of xi^alpha.
  RationalMatrix coefficient(const MultiIndex& alpha) const {
    RationalMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).coefficient(alpha);
    return m;
  }

  PolyMatrix& operator+=(const PolyMatrix& o) {
    require_same_shape(o, "+");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }
  PolyMatrix& operator-=(const PolyMatrix& o) {
    require_same_shape(o, "-");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(PolyMatrix a, const Rational& s) {
    for (auto& e : a.entries_) e *= s;
    return a;
  }
  friend PolyMatrix operator*(const HomPoly& p, const PolyMatrix& a) {
    if (p.nvars() != a.nvars_) throw DimensionError("scalar polynomial times PolyMatrix: variable count mismatch");
    PolyMatrix r(a.rows_, a.cols_, a.nvars_, a.degree_ + p.degree());
    for (std::size_t k = 0; k < a.entries_.size(); ++k) r.entries_[k] = p * a.entries_[k];
    return r;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionError("PolyMatrix product " + a.shape() + " * " + b.shape());
    if (a.nvars_ != b.nvars_) throw DimensionError("PolyMatrix product: variable count mismatch");
    PolyMatrix c(a.rows_, b.cols_, a.nvars_, a.degree_ + b.degree_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const HomPoly& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const HomPoly& bkj = b(k, j);
          if (bkj.is_zero()) continue;
          c.entries_[i * c.cols_ + j] += aik * bkj;
        }
      }
    return c;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.nvars_ == b.nvars_ && a.degree_ == b.degree_ &&
           a.entries_ == b.entries_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const PolyMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || nvars_ != o.nvars_ || degree_ != o.degree_)
      throw DimensionError(std::string("PolyMatrix ") + op + ": " + shape() + " deg " + std::to_string(degree_) +
                           " vs " + o.shape() + " deg " + std::to_string(o.degree_));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int nvars_ = 0;
  int degree_ = 0;
  std::vector<HomPoly> entries_;
};

inline PolyMatrix polymatrix_mul(const PolyMatrix& p, const PolyMatrix& q) { return p * q; }

/// Leibniz expansion; intended for the small minors used by the null-Lagrangian solver.
inline HomPoly determinant(const std::vector<std::vector<HomPoly>>& m) {
  const std::size_t s = m.size();
  if (s == 0) throw DimensionError("determinant of an empty matrix");
  const int nvars = m[0][0].nvars();
  int degree = 0;
  for (std::size_t i = 0; i < s; ++i) degree += m[i][0].degree();
  HomPoly det(nvars, degree);
  std::vector<std::size_t> perm(s);
  for (std::size_t i = 0; i < s; ++i) perm[i] = i;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j)
        if (perm[i] > perm[j]) ++inversions;
    HomPoly term = m[0][perm[0]];
    for (std::size_t i = 1; i < s && !term.is_zero(); ++i) term = term * m[i][perm[i]];
    if (term.is_zero()) continue;
    if (inversions % 2) det -= term;
    else det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace wavecone
