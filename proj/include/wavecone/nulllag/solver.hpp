#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavecone/errors.hpp"
#include "wavecone/nulllag/jet.hpp"
#include "wavecone/operator/analysis.hpp"
#include "wavecone/parallel.hpp"
#include "wavecone/polyalg/sampling.hpp"

namespace wavecone {

struct Minor {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::size_t order() const { return rows.size(); }
};

namespace detail {

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t s) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(s);
  for (std::size_t i = 0; i < s; ++i) cur[i] = i;
  if (s > n) return out;
  for (;;) {
    out.push_back(cur);
    std::size_t i = s;
    while (i > 0 && cur[i - 1] == n - s + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < s; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

inline long long minor_count(std::size_t N, std::size_t n, std::size_t s) {
  return static_cast<long long>(binomial(static_cast<long>(N), static_cast<long>(s))) *
         binomial(static_cast<long>(n), static_cast<long>(s));
}

}  // namespace detail

inline std::vector<Minor> enumerate_minors(std::size_t N, std::size_t n, std::size_t s) {
  if (s < 1 || s > std::min(N, n))
    throw DomainError("enumerate_minors: order " + std::to_string(s) + " outside [1, min(N, n)] = [1, " +
                      std::to_string(std::min(N, n)) + "]");
  std::vector<Minor> out;
  const auto rs = detail::subsets(N, s);
  const auto cs = detail::subsets(n, s);
  for (const auto& r : rs)
    for (const auto& c : cs) out.push_back({r, c});
  return out;
}

/// Determinant of the minor of Psi(L) where L maps each jet coordinate to a linear form.
inline HomPoly minor_polynomial(const JetSpace& jet, const Minor& m, const std::vector<HomPoly>& forms) {
  std::vector<std::vector<HomPoly>> sub(m.order(), std::vector<HomPoly>(m.order()));
  for (std::size_t a = 0; a < m.order(); ++a)
    for (std::size_t b = 0; b < m.order(); ++b) sub[a][b] = forms[jet.psi(m.rows[a], m.cols[b])];
  return determinant(sub);
}

/// Linear forms x -> (M x)_c for every row c of M.
inline std::vector<HomPoly> linear_forms(const RationalMatrix& m) {
  std::vector<HomPoly> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const RationalVector row = m.row(i);
    out.push_back(HomPoly::linear_form(row));
  }
  return out;
}

inline constexpr long long default_minor_cap = 20000;

struct AssembledSystem {
  RationalMatrix matrix;  // rows: monomials in X, columns: minors
  std::vector<Minor> minors;
  std::vector<std::string> warnings;
};

/// Coefficient system of M(Psi(X)) - M(Psi(T_hat X)) over all minors of order s.
inline AssembledSystem assemble_system(const JetLinearMap& t, std::size_t s, long long cap = default_minor_cap) {
  const JetSpace& jet = t.jet;
  const std::size_t n = static_cast<std::size_t>(jet.n());
  if (s < 1 || s > std::min(jet.N(), n))
    throw DomainError("assemble_system: minor order " + std::to_string(s) + " outside [1, min(N, n)] = [1, " +
                      std::to_string(std::min(jet.N(), n)) + "]");
  const long long count = detail::minor_count(jet.N(), n, s);
  if (count > cap)
    throw SizeLimitError("assemble_system: C(" + std::to_string(jet.N()) + "," + std::to_string(s) + ")*C(" +
                         std::to_string(n) + "," + std::to_string(s) + ") = " + std::to_string(count) +
                         " minors exceeds the cap of " + std::to_string(cap));
  AssembledSystem out;
  if (!t.surjective)
    out.warnings.push_back("T is not surjective (rank " + std::to_string(t.rank) + " < dim V = " +
                           std::to_string(t.T.rows()) + "): functions of the unreached directions are unconstrained");
  out.minors = enumerate_minors(jet.N(), n, s);
  const std::vector<HomPoly> identity = linear_forms(RationalMatrix::identity(jet.dim()));
  const std::vector<HomPoly> projected = linear_forms(t.T_hat);
  std::vector<HomPoly> diffs(out.minors.size());
  parallel_for(out.minors.size(), [&](std::size_t m) {
    diffs[m] = minor_polynomial(jet, out.minors[m], identity) - minor_polynomial(jet, out.minors[m], projected);
  });
  std::map<MultiIndex, std::size_t, MonomialOrder> rows;
  for (const auto& d : diffs)
    for (const auto& [mono, c] : d.terms()) rows.emplace(mono, 0);
  std::size_t r = 0;
  for (auto& [mono, idx] : rows) idx = r++;
  out.matrix = RationalMatrix(rows.size(), out.minors.size());
  for (std::size_t m = 0; m < diffs.size(); ++m)
    for (const auto& [mono, c] : diffs[m].terms()) out.matrix(rows.at(mono), m) = c;
  return out;
}

struct NullLagrangian {
  RationalVector c;  // coefficients over the minors (empty for degree 1)
  HomPoly F;         // polynomial in the V-coordinates v1..vd
};

struct NullLagrangianBasis {
  std::size_t degree = 0;
  std::size_t c_space_dim = 0;
  std::size_t f_space_dim = 0;
  std::vector<NullLagrangian> elements;
  std::vector<Minor> minors;
  std::vector<std::string> warnings;
};

/// Every s-homogeneous A-quasiaffine polynomial on V for the potential B, as an
/// independent set in reduced echelon form (leading coefficient 1).
inline NullLagrangianBasis solve_null_lagrangians(const PotentialSymbol& p, std::size_t s,
                                                  const std::optional<std::vector<RationalVector>>& complement = std::nullopt,
                                                  long long cap = default_minor_cap) {
  const std::size_t n = static_cast<std::size_t>(p.B.n());
  const std::size_t dimV = p.B.dim_to();
  const std::size_t bound = std::min(n, dimV);
  if (s < 1 || s > bound)
    throw DomainError("null Lagrangians are polynomials of degree s <= min(n, dim V) = min(" + std::to_string(n) +
                      ", " + std::to_string(dimV) + ") = " + std::to_string(bound) + "; got s = " + std::to_string(s));
  NullLagrangianBasis out;
  out.degree = s;
  if (s == 1) {
    // Linear functions are quasiaffine for every operator.
    for (std::size_t i = 0; i < dimV; ++i)
      out.elements.push_back({{}, HomPoly::variable(static_cast<int>(dimV), static_cast<int>(i))});
    out.f_space_dim = dimV;
    return out;
  }
  const JetLinearMap t = potential_to_jet_map(p, complement);
  if (s > t.jet.N()) {
    out.warnings.push_back("no minors of order " + std::to_string(s) + " exist (N = " + std::to_string(t.jet.N()) + ")");
    return out;
  }
  AssembledSystem sys = assemble_system(t, s, cap);
  out.minors = sys.minors;
  out.warnings = sys.warnings;
  const auto cspace = rational_nullspace(sys.matrix).basis;
  out.c_space_dim = cspace.size();
  if (cspace.empty()) return out;

  // Pull every minor back along j_hat once; F_c = sum_M c_M M(Psi(j_hat v)).
  const std::vector<HomPoly> jforms = linear_forms(t.j_hat);
  std::vector<HomPoly> pulled(sys.minors.size());
  parallel_for(sys.minors.size(), [&](std::size_t m) { pulled[m] = minor_polynomial(t.jet, sys.minors[m], jforms); });
  const auto monos = multi_indices(dimV, static_cast<int>(s));
  // Row k of [Phi | I]: coefficients of F_{c_k}, then the unit vector e_k to track combinations.
  RationalMatrix aug(cspace.size(), monos.size() + cspace.size());
  for (std::size_t k = 0; k < cspace.size(); ++k) {
    HomPoly f(static_cast<int>(dimV), static_cast<int>(s));
    for (std::size_t m = 0; m < sys.minors.size(); ++m)
      if (cspace[k][m] != 0) f += pulled[m] * cspace[k][m];
    for (std::size_t q = 0; q < monos.size(); ++q) aug(k, q) = f.coefficient(monos[q]);
    aug(k, monos.size() + k) = 1;
  }
  const Echelon ech(aug);
  const RationalMatrix red = ech.reduced_rows();
  for (std::size_t row = 0; row < red.rows(); ++row) {
    if (ech.pivot_columns()[row] >= monos.size()) break;
    NullLagrangian el{RationalVector(sys.minors.size(), Rational(0)), HomPoly(static_cast<int>(dimV), static_cast<int>(s))};
    for (std::size_t q = 0; q < monos.size(); ++q) el.F.add_term(monos[q], red(row, q));
    for (std::size_t k = 0; k < cspace.size(); ++k) {
      const Rational g = red(row, monos.size() + k);
      if (g == 0) continue;
      for (std::size_t m = 0; m < sys.minors.size(); ++m) el.c[m] += g * cspace[k][m];
    }
    out.elements.push_back(std::move(el));
  }
  out.f_space_dim = out.elements.size();
  return out;
}

struct MuratFailure {
  std::size_t r = 0;
  std::vector<RationalVector> frequencies;
  std::vector<RationalVector> directions;
  RationalVector point;
  Rational value;
};

struct MuratReport {
  bool passed = true;
  std::size_t evaluations = 0;
  std::size_t discarded = 0;
  std::vector<MuratFailure> failures;
};

/// D^r F(v)[lambda_1..lambda_r] for lambda_i in ker A(xi_i) and rank(xi_1..xi_r) < r.
inline MuratReport murat_check(const HomPoly& f, const OperatorSymbol& a, std::size_t trials, std::uint64_t seed) {
  if (f.degree() < 2) throw PreconditionError("murat_check: F must have degree >= 2");
  if (static_cast<std::size_t>(f.nvars()) != a.dim_from())
    throw DimensionError("murat_check: F has " + std::to_string(f.nvars()) + " variables but V has dimension " +
                         std::to_string(a.dim_from()));
  const std::size_t n = static_cast<std::size_t>(a.n());
  MuratReport rep;
  Rng rng(seed);
  for (int r = 2; r <= f.degree(); ++r) {
    const std::size_t sub_dim = std::min<std::size_t>(static_cast<std::size_t>(r - 1), n);
    std::size_t done = 0;
    std::size_t budget = 20 * trials + 20;
    while (done < trials && budget-- > 0) {
      std::vector<RationalVector> span;
      for (std::size_t d = 0; d < sub_dim; ++d) span.push_back(random_rational_vector(rng, n));
      std::vector<RationalVector> xis;
      std::vector<RationalVector> lambdas;
      bool usable = true;
      for (int i = 0; i < r && usable; ++i) {
        RationalVector xi(n, Rational(0));
        for (const auto& s : span) {
          const Rational c = random_rational(rng);
          for (std::size_t q = 0; q < n; ++q) xi[q] += c * s[q];
        }
        if (is_zero_vector(xi)) {
          usable = false;
          break;
        }
        const auto ker = rational_nullspace(a.at(xi)).basis;
        if (ker.empty()) {
          usable = false;
          break;
        }
        RationalVector lambda(a.dim_from(), Rational(0));
        for (const auto& k : ker) {
          const Rational c = random_rational(rng);
          for (std::size_t q = 0; q < lambda.size(); ++q) lambda[q] += c * k[q];
        }
        xis.push_back(xi);
        lambdas.push_back(lambda);
      }
      if (!usable) {
        ++rep.discarded;
        continue;
      }
      const RationalVector v = random_rational_vector(rng, a.dim_from());
      HomPoly d = f;
      for (const auto& l : lambdas) d = d.directional_derivative(l);
      const Rational value = d.evaluate(v);
      ++rep.evaluations;
      ++done;
      if (value != 0) rep.failures.push_back({static_cast<std::size_t>(r), xis, lambdas, v, value});
    }
  }
  rep.passed = rep.failures.empty();
  return rep;
}

}  // namespace wavecone
