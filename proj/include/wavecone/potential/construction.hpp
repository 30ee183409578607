#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavecone/errors.hpp"
#include "wavecone/operator/analysis.hpp"
#include "wavecone/potential/potential_symbol.hpp"

namespace wavecone {

struct DecellResult {
  std::size_t rank = 0;
  HomPoly c_r;
  PolyMatrix numerator;  // N with A^dagger = -N / c_r away from the origin
  std::size_t self_check_points = 0;
};

namespace detail {

inline bool penrose_axioms(const RationalMatrix& m, const RationalMatrix& g) {
  const RationalMatrix mg = m * g;
  const RationalMatrix gm = g * m;
  return mg * m == m && gm * g == g && mg.transpose() == mg && gm.transpose() == gm;
}

/// S = M^{r-1} + c_1 M^{r-2} + ... + c_{r-1} I by Horner's rule.
inline PolyMatrix decell_sum(const PolyMatrix& m, const std::vector<HomPoly>& c, std::size_t r) {
  PolyMatrix s = PolyMatrix::identity(m.rows(), m.nvars());
  for (std::size_t j = 1; j < r; ++j) s = s * m + PolyMatrix::scalar_identity(m.rows(), c[j - 1]);
  return s;
}

}  // namespace detail

/// Polynomial form of the pseudoinverse of a constant-rank symbol. The sign
/// convention is checked against moore_penrose at 20 random rational points.
inline DecellResult decell_pseudoinverse(const OperatorSymbol& a, std::size_t r, std::uint64_t seed = 0) {
  if (r == 0 || r > a.dim_to()) throw PreconditionError("decell_pseudoinverse: rank " + std::to_string(r) + " out of range");
  const PolyMatrix m = gram_symbol(a);
  const auto c = faddeev_leverrier(m);
  DecellResult out;
  out.rank = r;
  out.c_r = c[r - 1];
  if (out.c_r.is_zero())
    throw PreconditionError("decell_pseudoinverse: c_" + std::to_string(r) + " vanishes identically; rank " +
                            std::to_string(r) + " is not the generic rank of '" + a.name() + "'");
  out.numerator = a.symbol().transpose() * detail::decell_sum(m, c, r);

  Rng rng(seed);
  std::size_t draws = 0;
  while (out.self_check_points < 20) {
    if (++draws > 200)
      throw PreconditionError("decell_pseudoinverse: c_r vanishes at too many sampled points (rank not constant?)");
    const RationalVector xi = random_rational_frequency(rng, static_cast<std::size_t>(a.n()));
    const Rational cr = out.c_r.evaluate(xi);
    if (cr == 0) continue;
    const RationalMatrix ax = a.at(xi);
    const RationalMatrix g = out.numerator.evaluate(xi) * (Rational(-1) / cr);
    if (!detail::penrose_axioms(ax, g) || !(g == moore_penrose(ax)))
      throw InternalError("Decell convention mismatch for '" + a.name() + "'");
    ++out.self_check_points;
  }
  return out;
}

/// B = c_r I + N A = c_r (I - A^dagger A), of order 2 l r with U = V.
inline PotentialSymbol raita_potential(const OperatorSymbol& a, std::optional<std::size_t> r = std::nullopt,
                                       std::uint64_t seed = 0) {
  if (!r) {
    const auto rep = constant_rank_check(a, std::max<std::size_t>(a.dim_to(), 50), seed);
    if (rep.verdict != RankVerdict::constant_rank_verified_probabilistic)
      throw PreconditionError("raita_potential: '" + a.name() + "' is not certified constant rank (" +
                              to_string(rep.verdict) + ")");
    r = rep.generic_rank;
  }
  const std::size_t dimV = a.dim_from();
  if (*r == 0) throw PreconditionError("raita_potential: operator '" + a.name() + "' has generic rank 0");
  const DecellResult d = decell_pseudoinverse(a, *r, seed);
  PolyMatrix b = PolyMatrix::scalar_identity(dimV, d.c_r) + d.numerator * a.symbol();
  return {OperatorSymbol("raita_" + a.name(), std::move(b)), Provenance::raita_construction};
}

struct ExactnessReport {
  bool product_is_zero = false;
  bool rank_complementarity = false;
  std::size_t samples = 0;
  std::vector<RationalVector> failing_points;
  bool exact() const { return product_is_zero && rank_complementarity; }
};

inline ExactnessReport verify_exactness(const OperatorSymbol& a, const OperatorSymbol& b, std::size_t samples,
                                        std::uint64_t seed) {
  if (a.dim_from() != b.dim_to())
    throw DimensionError("verify_exactness: A acts on R^" + std::to_string(a.dim_from()) + " but B maps into R^" +
                         std::to_string(b.dim_to()));
  if (a.n() != b.n()) throw DimensionError("verify_exactness: variable counts differ");
  ExactnessReport rep;
  rep.product_is_zero = (a.symbol() * b.symbol()).is_zero();
  const auto points = sample_frequencies(static_cast<std::size_t>(a.n()), samples, seed);
  rep.samples = points.size();
  std::vector<char> ok(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    ok[i] = rank(b.at(points[i])) + rank(a.at(points[i])) == a.dim_from();
  });
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!ok[i]) rep.failing_points.push_back(points[i]);
  rep.rank_complementarity = rep.failing_points.empty();
  return rep;
}

struct PotentialSearch {
  int order = 0;
  std::size_t dim_U = 0;
  std::vector<MultiIndex> alphas;
  /// Kernel of the single-column system; unknown (i, alpha) sits at alpha_index * dimV + i.
  std::vector<RationalVector> column_space;
  std::size_t solution_space_dim = 0;
  std::vector<PotentialSymbol> basis;
  /// Best rank, over random members of the space, that holds at every sampled frequency.
  std::size_t max_generic_rank = 0;
  /// Best rank at a single random frequency (can exceed max_generic_rank).
  std::size_t max_random_point_rank = 0;
  std::size_t annihilator_rank = 0;
  bool potential_exists = false;
};

namespace detail {

/// Rows: coefficients of xi^gamma in row w of A(xi) b(xi); columns: unknowns b_alpha[i].
inline RationalMatrix column_system(const OperatorSymbol& a, int kappa, const std::vector<MultiIndex>& alphas) {
  const std::size_t n = static_cast<std::size_t>(a.n());
  const std::size_t dimV = a.dim_from();
  const auto gammas = multi_indices(n, a.order() + kappa);
  std::map<MultiIndex, std::size_t, MonomialOrder> gamma_index;
  for (std::size_t g = 0; g < gammas.size(); ++g) gamma_index.emplace(gammas[g], g);
  const auto coeffs = a.coefficients();
  RationalMatrix sys(a.dim_to() * gammas.size(), dimV * alphas.size());
  for (std::size_t ai = 0; ai < alphas.size(); ++ai)
    for (const auto& [beta, ab] : coeffs) {
      const std::size_t g = gamma_index.at(alphas[ai] + beta);
      for (std::size_t w = 0; w < a.dim_to(); ++w)
        for (std::size_t i = 0; i < dimV; ++i)
          if (ab(w, i) != 0) sys(g * a.dim_to() + w, ai * dimV + i) += ab(w, i);
    }
  return sys;
}

inline PolyMatrix symbol_from_columns(const std::vector<RationalVector>& cols, std::size_t dimV, int nvars,
                                      const std::vector<MultiIndex>& alphas, int kappa) {
  PolyMatrix b(dimV, cols.size(), nvars, kappa);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t ai = 0; ai < alphas.size(); ++ai)
      for (std::size_t i = 0; i < dimV; ++i) {
        const Rational& v = cols[j][ai * dimV + i];
        if (v != 0) b.at(i, j).add_term(alphas[ai], v);
      }
  return b;
}

}  // namespace detail

/// All B of order kappa with A B = 0, and whether some of them is a potential.
inline PotentialSearch potentials_of_order(const OperatorSymbol& a, int kappa, std::uint64_t seed,
                                           std::optional<std::size_t> dim_U = std::nullopt, bool build_basis = true) {
  if (kappa < 1) throw PreconditionError("potentials_of_order: order must be >= 1");
  PotentialSearch out;
  out.order = kappa;
  out.dim_U = dim_U.value_or(a.dim_from());
  const std::size_t dimV = a.dim_from();
  out.alphas = multi_indices(static_cast<std::size_t>(a.n()), kappa);
  out.column_space = rational_nullspace(detail::column_system(a, kappa, out.alphas)).basis;
  out.solution_space_dim = out.column_space.size() * out.dim_U;

  if (build_basis)
    for (std::size_t j = 0; j < out.dim_U; ++j)
      for (const auto& k : out.column_space) {
        std::vector<RationalVector> cols(out.dim_U, RationalVector(k.size(), Rational(0)));
        cols[j] = k;
        out.basis.push_back({OperatorSymbol("candidate", detail::symbol_from_columns(cols, dimV, a.n(), out.alphas, kappa)),
                             Provenance::order_search});
      }

  Rng rng(seed);
  for (int t = 0; t < 10; ++t) out.annihilator_rank = std::max(out.annihilator_rank, rank(a.at(random_rational_frequency(rng, static_cast<std::size_t>(a.n())))));
  if (!out.column_space.empty()) {
    // Exactness needs the rank at every xi != 0, and rank drops sit on coordinate
    // subspaces: each trial takes the minimum over the structured frequencies plus
    // random points on every coordinate hyperplane and one fully random point.
    const std::size_t n = static_cast<std::size_t>(a.n());
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<RationalVector> cols;
      for (std::size_t j = 0; j < out.dim_U; ++j) {
        RationalVector c(out.column_space.front().size(), Rational(0));
        for (const auto& k : out.column_space) {
          const Rational lambda = random_rational(rng);
          for (std::size_t q = 0; q < c.size(); ++q) c[q] += lambda * k[q];
        }
        cols.push_back(c);
      }
      const PolyMatrix b = detail::symbol_from_columns(cols, dimV, a.n(), out.alphas, kappa);
      const std::size_t at_random = rank(b.evaluate(random_rational_frequency(rng, n)));
      out.max_random_point_rank = std::max(out.max_random_point_rank, at_random);
      auto points = structured_frequencies(n);
      for (std::size_t h = 0; h < n && n > 1; ++h) {
        RationalVector xi;
        do {
          xi = random_rational_vector(rng, n);
          xi[h] = 0;
        } while (is_zero_vector(xi));
        points.push_back(xi);
      }
      std::size_t uniform = at_random;
      for (const auto& xi : points) uniform = std::min(uniform, rank(b.evaluate(xi)));
      out.max_generic_rank = std::max(out.max_generic_rank, uniform);
    }
  }
  out.potential_exists = out.max_generic_rank == dimV - out.annihilator_rank && dimV > out.annihilator_rank;
  return out;
}

/// Exact membership of B in the solution space found by potentials_of_order.
inline bool solution_space_contains(const PotentialSearch& s, const OperatorSymbol& b) {
  if (b.order() != s.order || b.dim_from() != s.dim_U) return false;
  const std::size_t dimV = b.dim_to();
  if (s.column_space.empty()) return b.symbol().is_zero();
  const RationalMatrix k = RationalMatrix::from_columns(s.column_space, s.alphas.size() * dimV);
  for (std::size_t j = 0; j < b.dim_from(); ++j) {
    RationalVector col(s.alphas.size() * dimV);
    for (std::size_t ai = 0; ai < s.alphas.size(); ++ai)
      for (std::size_t i = 0; i < dimV; ++i) col[ai * dimV + i] = b.symbol()(i, j).coefficient(s.alphas[ai]);
    if (!solve(k, col)) return false;
  }
  return true;
}

struct IsomorphismSearch {
  std::optional<RationalMatrix> Q;
  bool consistent = false;
  std::size_t homogeneous_dim = 0;
  int trials = 0;
};

/// Looks for Q in GL(U) with B1_alpha Q = B2_alpha for every alpha.
inline IsomorphismSearch symbol_isomorphism_search(const OperatorSymbol& b1, const OperatorSymbol& b2,
                                                   std::uint64_t seed = 0) {
  if (b1.dim_to() != b2.dim_to() || b1.dim_from() != b2.dim_from() || b1.n() != b2.n())
    throw DimensionError("symbol_isomorphism: shapes " + b1.symbol().shape() + " and " + b2.symbol().shape() +
                         " differ");
  if (b1.order() != b2.order()) throw DimensionError("symbol_isomorphism: orders differ");
  IsomorphismSearch out;
  const std::size_t dimU = b1.dim_from();
  const RationalMatrix s = stacked_coefficients(b1);
  const RationalMatrix t = stacked_coefficients(b2);
  RationalMatrix particular(dimU, dimU);
  for (std::size_t j = 0; j < dimU; ++j) {
    const auto q = solve(s, t.column(j));
    if (!q) return out;
    for (std::size_t i = 0; i < dimU; ++i) particular(i, j) = (*q)[i];
  }
  out.consistent = true;
  const auto hom = rational_nullspace(s).basis;
  out.homogeneous_dim = hom.size();
  if (rank(particular) == dimU) {
    out.Q = particular;
    return out;
  }
  if (hom.empty()) return out;
  Rng rng(seed);
  for (out.trials = 1; out.trials <= 10; ++out.trials) {
    RationalMatrix q = particular;
    for (std::size_t j = 0; j < dimU; ++j)
      for (const auto& h : hom) {
        const Rational lambda = random_rational(rng);
        for (std::size_t i = 0; i < dimU; ++i) q(i, j) += lambda * h[i];
      }
    if (rank(q) == dimU) {
      out.Q = q;
      return out;
    }
  }
  out.trials = 10;
  return out;
}

inline std::optional<RationalMatrix> symbol_isomorphism(const OperatorSymbol& b1, const OperatorSymbol& b2,
                                                        std::uint64_t seed = 0) {
  return symbol_isomorphism_search(b1, b2, seed).Q;
}

}  // namespace wavecone
