#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wavecone/errors.hpp"
#include "wavecone/potential/potential_symbol.hpp"

namespace wavecone {

/// Symmetric k-jets of U-valued maps on R^n. Coordinates (nu, alpha), |alpha| = k,
/// ordered by component first and then by the global monomial order.
class JetSpace {
 public:
  JetSpace() = default;
  JetSpace(int n, int k, std::size_t dim_U) : n_(n), k_(k), dim_U_(dim_U) {
    if (n < 1 || k < 1 || dim_U < 1) throw DomainError("JetSpace: n, k and dim U must be positive");
    alphas_ = multi_indices(static_cast<std::size_t>(n), k);
    betas_ = multi_indices(static_cast<std::size_t>(n), k - 1);
    for (std::size_t a = 0; a < alphas_.size(); ++a) alpha_pos_.emplace(alphas_[a], a);
  }

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t dim_U() const { return dim_U_; }
  std::size_t dim() const { return dim_U_ * alphas_.size(); }
  /// Row count of the matrix representation Psi.
  std::size_t N() const { return dim_U_ * betas_.size(); }
  const std::vector<MultiIndex>& alphas() const { return alphas_; }
  const std::vector<MultiIndex>& betas() const { return betas_; }

  std::size_t index(std::size_t nu, const MultiIndex& alpha) const { return nu * alphas_.size() + alpha_pos_.at(alpha); }
  std::pair<std::size_t, MultiIndex> coordinate(std::size_t idx) const {
    return {idx / alphas_.size(), alphas_[idx % alphas_.size()]};
  }

  /// Psi(X)[(nu, beta), i] = X_{nu, beta + e_i}, as jet-coordinate indices.
  std::size_t psi(std::size_t row, std::size_t col) const {
    const std::size_t nu = row / betas_.size();
    const MultiIndex& beta = betas_[row % betas_.size()];
    return index(nu, beta + MultiIndex::unit(static_cast<std::size_t>(n_), col));
  }

 private:
  int n_ = 0;
  int k_ = 0;
  std::size_t dim_U_ = 0;
  std::vector<MultiIndex> alphas_;
  std::vector<MultiIndex> betas_;
  std::map<MultiIndex, std::size_t, MonomialOrder> alpha_pos_;
};

/// T : jets -> V with B = T o D^k, plus the projection T_hat onto a complement of
/// ker T and the right inverse j_hat on im T induced by the same complement.
struct JetLinearMap {
  JetSpace jet;
  RationalMatrix T;
  RationalMatrix T_pinv;
  RationalMatrix T_hat;
  RationalMatrix j_hat;
  bool surjective = false;
  std::size_t rank = 0;
};

/// T[i][(nu, alpha)] = (B_alpha)[i][nu]. The complement of ker T is orthogonal by
/// default; `complement` (a basis of some other complement) overrides it.
inline JetLinearMap potential_to_jet_map(const PotentialSymbol& p,
                                         const std::optional<std::vector<RationalVector>>& complement = std::nullopt) {
  const OperatorSymbol& b = p.B;
  JetLinearMap out;
  out.jet = JetSpace(b.n(), b.order(), b.dim_from());
  out.T = RationalMatrix(b.dim_to(), out.jet.dim());
  for (const auto& alpha : out.jet.alphas()) {
    const RationalMatrix c = b.coefficient(alpha);
    for (std::size_t nu = 0; nu < b.dim_from(); ++nu)
      for (std::size_t i = 0; i < b.dim_to(); ++i) out.T(i, out.jet.index(nu, alpha)) = c(i, nu);
  }
  out.T_pinv = moore_penrose(out.T);
  out.rank = rank(out.T);
  out.surjective = out.rank == b.dim_to();
  if (!complement) {
    out.T_hat = out.T_pinv * out.T;
    out.j_hat = out.T_pinv;
  } else {
    if (complement->size() != out.rank) throw DimensionError("complement dimension must equal rank T");
    const RationalMatrix c = RationalMatrix::from_columns(*complement, out.jet.dim());
    const RationalMatrix tc = out.T * c;
    if (rank(tc) != out.rank) throw DomainError("supplied subspace is not a complement of ker T");
    out.j_hat = c * moore_penrose(tc);
    out.T_hat = out.j_hat * out.T;
  }
  return out;
}

}  // namespace wavecone
