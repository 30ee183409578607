#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavecone/errors.hpp"
#include "wavecone/operator/operator_symbol.hpp"
#include "wavecone/parallel.hpp"
#include "wavecone/polyalg/faddeev_leverrier.hpp"
#include "wavecone/polyalg/sampling.hpp"

namespace wavecone {

inline std::size_t symbol_rank_at(const OperatorSymbol& a, std::span<const Rational> xi) {
  bool nonzero = false;
  for (const auto& v : xi)
    if (v != 0) nonzero = true;
  if (!nonzero) throw DomainError("symbol_rank_at: xi = 0 (rank at the origin is meaningless)");
  return rank(a.at(xi));
}

enum class RankVerdict { constant_rank_verified_probabilistic, rank_not_constant, inconclusive };

inline std::string to_string(RankVerdict v) {
  switch (v) {
    case RankVerdict::constant_rank_verified_probabilistic: return "constant_rank_verified_probabilistic";
    case RankVerdict::rank_not_constant: return "rank_not_constant";
    case RankVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct RankReport {
  std::size_t generic_rank = 0;
  bool tail_vanishes = false;
  Rational min_sampled_cr;
  std::size_t sample_count = 0;
  std::vector<RationalVector> rank_drop_points;
  RankVerdict verdict = RankVerdict::inconclusive;
  std::uint64_t seed = 0;
  /// Faddeev-LeVerrier coefficients of M = A A^T, kept for the potential construction.
  std::vector<HomPoly> charpoly;
};

/// Gram symbol M = A A^T.
inline PolyMatrix gram_symbol(const OperatorSymbol& a) { return a.symbol() * a.symbol().transpose(); }

/// Upper bound rank <= r is certified exactly by c_j == 0 for j > r; the lower
/// bound is sampled through (-1)^r c_r, the sum of principal r-minors of M.
inline RankReport constant_rank_check(const OperatorSymbol& a, std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < a.dim_to())
    throw PreconditionError("constant_rank_check: sample_count (" + std::to_string(sample_count) +
                            ") must be at least dim_to (" + std::to_string(a.dim_to()) + ")");
  RankReport rep;
  rep.seed = seed;
  rep.charpoly = faddeev_leverrier(gram_symbol(a));
  const auto points = sample_frequencies(static_cast<std::size_t>(a.n()), sample_count, seed);
  rep.sample_count = points.size();

  std::vector<std::size_t> ranks(points.size());
  parallel_for(points.size(), [&](std::size_t i) { ranks[i] = rank(a.at(points[i])); });
  for (auto r : ranks) rep.generic_rank = std::max(rep.generic_rank, r);
  const std::size_t r = rep.generic_rank;

  rep.tail_vanishes = true;
  for (std::size_t j = r + 1; j <= rep.charpoly.size(); ++j)
    if (!rep.charpoly[j - 1].is_zero()) rep.tail_vanishes = false;

  if (r == 0) {
    rep.min_sampled_cr = 0;
    rep.verdict = rep.tail_vanishes ? RankVerdict::constant_rank_verified_probabilistic : RankVerdict::inconclusive;
    return rep;
  }
  const HomPoly& cr = rep.charpoly[r - 1];
  const Rational sign = r % 2 ? Rational(-1) : Rational(1);
  std::vector<Rational> witness(points.size());
  parallel_for(points.size(), [&](std::size_t i) { witness[i] = sign * cr.evaluate(points[i]); });
  rep.min_sampled_cr = witness.front();
  for (std::size_t i = 0; i < points.size(); ++i) {
    rep.min_sampled_cr = std::min(rep.min_sampled_cr, witness[i]);
    if (ranks[i] < r || witness[i] == 0) rep.rank_drop_points.push_back(points[i]);
  }
  if (!rep.rank_drop_points.empty()) rep.verdict = RankVerdict::rank_not_constant;
  else if (rep.tail_vanishes && rep.min_sampled_cr > 0) rep.verdict = RankVerdict::constant_rank_verified_probabilistic;
  else rep.verdict = RankVerdict::inconclusive;
  return rep;
}

struct WaveConeReport {
  std::vector<RationalVector> span_basis;
  std::vector<RationalVector> witnesses;  // witnesses[i] is a xi with A(xi) span_basis[i] = 0
  bool spans_V = false;
  std::size_t samples_used = 0;
};

inline WaveConeReport wave_cone_span(const OperatorSymbol& a, std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw PreconditionError("wave_cone_span: sample_count must be >= 1");
  WaveConeReport rep;
  const auto points = sample_frequencies(static_cast<std::size_t>(a.n()), sample_count, seed);
  for (const auto& xi : points) {
    ++rep.samples_used;
    for (auto& v : rational_nullspace(a.at(xi)).basis) {
      rep.span_basis.push_back(v);
      if (rank(RationalMatrix::from_rows(rep.span_basis)) < rep.span_basis.size()) {
        rep.span_basis.pop_back();
      } else {
        rep.witnesses.push_back(xi);
      }
    }
    if (rep.span_basis.size() == a.dim_from()) break;
  }
  rep.spans_V = rep.span_basis.size() == a.dim_from();
  return rep;
}

/// Vertical stack of every coefficient matrix B_alpha, |alpha| = k.
inline RationalMatrix stacked_coefficients(const OperatorSymbol& b) {
  const auto alphas = multi_indices(static_cast<std::size_t>(b.n()), b.order());
  RationalMatrix s(alphas.size() * b.dim_to(), b.dim_from());
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const RationalMatrix c = b.coefficient(alphas[k]);
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) s(k * b.dim_to() + i, j) = c(i, j);
  }
  return s;
}

struct CocancelReport {
  std::vector<RationalVector> invariant_basis;  // basis of I_B = intersection of ker B(xi)
  bool cocanceling = false;
};

inline CocancelReport cocanceling_check(const OperatorSymbol& b) {
  CocancelReport rep;
  rep.invariant_basis = rational_nullspace(stacked_coefficients(b)).basis;
  rep.cocanceling = rep.invariant_basis.empty();
  return rep;
}

/// Orthogonal complement J of span(vs) inside Q^dim, as a basis.
inline std::vector<RationalVector> orthogonal_complement(const std::vector<RationalVector>& vs, std::size_t dim) {
  if (vs.empty()) {
    std::vector<RationalVector> id;
    for (std::size_t i = 0; i < dim; ++i) id.push_back(RationalMatrix::identity(dim).row(i));
    return id;
  }
  return rational_nullspace(RationalMatrix::from_rows(vs)).basis;
}

/// B restricted to the subspace spanned by `basis` (columns B_alpha * J).
inline OperatorSymbol restrict_domain(const OperatorSymbol& b, const std::vector<RationalVector>& basis) {
  if (basis.empty()) throw DimensionError("restrict_domain: empty subspace");
  const RationalMatrix j = RationalMatrix::from_columns(basis, b.dim_from());
  CoefficientMap coeffs;
  for (const auto& [alpha, c] : b.coefficients()) coeffs.emplace(alpha, c * j);
  return OperatorSymbol::from_coefficients(b.name() + "|J", b.n(), b.order(), b.dim_to(), basis.size(), coeffs);
}

}  // namespace wavecone
