#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "wavecone/errors.hpp"
#include "wavecone/operator/operator_symbol.hpp"

namespace wavecone {

/// Floating-point copy of a symbol, evaluated fast at real frequencies.
class NumericSymbol {
 public:
  NumericSymbol() = default;
  explicit NumericSymbol(const PolyMatrix& m) : rows_(m.rows()), cols_(m.cols()), n_(m.nvars()), order_(m.degree()) {
    terms_.resize(rows_ * cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        for (const auto& [alpha, c] : m(i, j).terms()) {
          Term t;
          t.coeff = c.get_d();
          for (std::size_t v = 0; v < alpha.size(); ++v) t.exps.push_back(alpha[v]);
          terms_[i * cols_ + j].push_back(std::move(t));
        }
  }
  explicit NumericSymbol(const OperatorSymbol& a) : NumericSymbol(a.symbol()) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int n() const { return n_; }
  int order() const { return order_; }

  Eigen::MatrixXd at(const std::vector<double>& xi) const {
    if (static_cast<int>(xi.size()) != n_) throw DimensionError("NumericSymbol: frequency has wrong length");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        double s = 0;
        for (const auto& t : terms_[i * cols_ + j]) {
          double m = t.coeff;
          for (std::size_t v = 0; v < t.exps.size(); ++v)
            for (int e = 0; e < t.exps[v]; ++e) m *= xi[v];
          s += m;
        }
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
      }
    return out;
  }

  /// Evaluation at xi / |xi|.
  Eigen::MatrixXd at_unit(const std::vector<int>& k) const {
    double norm = 0;
    for (int c : k) norm += static_cast<double>(c) * c;
    norm = std::sqrt(norm);
    if (norm == 0) throw DomainError("NumericSymbol: unit evaluation at xi = 0");
    std::vector<double> xi(k.size());
    for (std::size_t a = 0; a < k.size(); ++a) xi[a] = k[a] / norm;
    return at(xi);
  }

 private:
  struct Term {
    std::vector<int> exps;
    double coeff = 0;
  };
  std::size_t rows_ = 0, cols_ = 0;
  int n_ = 0, order_ = 0;
  std::vector<std::vector<Term>> terms_;
};

/// Singular values at or below tol * sigma_max count as zero.
inline constexpr double kernel_tolerance = 1e-10;

struct KernelProjection {
  Eigen::MatrixXd P;  // orthogonal projector onto the numerical kernel
  std::size_t rank = 0;
};

inline KernelProjection kernel_projection(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > kernel_tolerance * smax) ++r;
  const auto& V = svd.matrixV();
  const Eigen::Index cols = V.cols();
  Eigen::MatrixXd K = V.rightCols(cols - static_cast<Eigen::Index>(r));
  return {K * K.transpose(), r};
}

}  // namespace wavecone
