#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>

#include "wavecone/errors.hpp"
#include "wavecone/polyalg/poly_matrix.hpp"
#include "wavecone/polyalg/rational_matrix.hpp"

namespace wavecone {

using CoefficientMap = std::map<MultiIndex, RationalMatrix, MonomialOrder>;

/// A homogeneous constant-coefficient operator sum_{|alpha|=l} A_alpha d^alpha,
/// held as its symbol A(xi) (dim_to x dim_from, degree l).
class OperatorSymbol {
 public:
  OperatorSymbol() = default;
  OperatorSymbol(std::string name, PolyMatrix symbol) : name_(std::move(name)), symbol_(std::move(symbol)) {
    if (symbol_.rows() == 0 || symbol_.cols() == 0) throw DimensionError("operator '" + name_ + "' has an empty symbol");
    if (symbol_.degree() < 1) throw DomainError("operator '" + name_ + "' must have order >= 1");
    if (symbol_.nvars() < 1) throw DomainError("operator '" + name_ + "' must have at least one variable");
  }

  static OperatorSymbol from_coefficients(std::string name, int nvars, int order, std::size_t dim_to,
                                          std::size_t dim_from, const CoefficientMap& coeffs) {
    for (const auto& [alpha, m] : coeffs) {
      if (static_cast<int>(alpha.size()) != nvars || alpha.degree() != order)
        throw DimensionError("coefficient index " + alpha.key() + " does not match vars=" + std::to_string(nvars) +
                             ", order=" + std::to_string(order));
    }
    return OperatorSymbol(std::move(name), PolyMatrix::from_coefficients(dim_to, dim_from, nvars, order, coeffs));
  }

  const std::string& name() const { return name_; }
  void rename(std::string name) { name_ = std::move(name); }
  int n() const { return symbol_.nvars(); }
  int order() const { return symbol_.degree(); }
  std::size_t dim_from() const { return symbol_.cols(); }
  std::size_t dim_to() const { return symbol_.rows(); }
  const PolyMatrix& symbol() const { return symbol_; }

  RationalMatrix coefficient(const MultiIndex& alpha) const { return symbol_.coefficient(alpha); }

  /// Nonzero coefficient matrices only.
  CoefficientMap coefficients() const {
    CoefficientMap out;
    for (const auto& alpha : multi_indices(static_cast<std::size_t>(n()), order())) {
      RationalMatrix c = coefficient(alpha);
      if (!c.is_zero()) out.emplace(alpha, std::move(c));
    }
    return out;
  }

  RationalMatrix at(std::span<const Rational> xi) const {
    if (static_cast<int>(xi.size()) != n())
      throw DimensionError("frequency has " + std::to_string(xi.size()) + " components, operator '" + name_ +
                           "' has " + std::to_string(n()) + " variables");
    return symbol_.evaluate(xi);
  }

  friend bool operator==(const OperatorSymbol& a, const OperatorSymbol& b) { return a.symbol_ == b.symbol_; }

 private:
  std::string name_;
  PolyMatrix symbol_;
};

}  // namespace wavecone
