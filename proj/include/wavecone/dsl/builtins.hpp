#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wavecone/appendix_data.hpp"
#include "wavecone/dsl/parser.hpp"
#include "wavecone/errors.hpp"
#include "wavecone/potential/potential_symbol.hpp"

namespace wavecone::dsl {

struct BuiltinParams {
  int n = 2;
  int m = 1;     // grad: number of scalar components
  int k = 1;     // grad: derivative order
  int rows = 1;  // div: number of rows of the matrix field
};

struct Builtin {
  OperatorSymbol A;
  std::optional<PotentialSymbol> potential;
  bool constant_rank = true;
};

struct BuiltinDescriptor {
  std::string name;
  std::string parameters;
  std::string description;
  std::string potential;
};

namespace detail_builtin {

inline HomPoly xi(int n, int i) { return HomPoly::variable(n, i); }

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError("invalid builtin parameters: " + what);
}

inline PotentialSymbol attach(std::string name, PolyMatrix b) {
  return {OperatorSymbol(std::move(name), std::move(b)), Provenance::user_supplied};
}

/// Symmetric index pairs (i <= j), row-major.
inline std::vector<std::pair<int, int>> sym_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out.emplace_back(i, j);
  return out;
}

inline std::size_t sym_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  const auto pairs = sym_pairs(n);
  return static_cast<std::size_t>(std::find(pairs.begin(), pairs.end(), std::make_pair(i, j)) - pairs.begin());
}

inline const std::vector<OperatorSymbol>& appendix_operators() {
  static const std::vector<OperatorSymbol> ops =
      parse_operators({data::appendix_operators, "data/operators/appendix.op"});
  return ops;
}

inline const OperatorSymbol& appendix(const std::string& name) {
  for (const auto& op : appendix_operators())
    if (op.name() == name) return op;
  throw InternalError("embedded appendix data lacks operator '" + name + "'");
}

/// Compatibility conditions for k-jets of R^m-valued maps, with potential D^k.
inline Builtin grad(const BuiltinParams& p) {
  require(p.n >= 2, "grad needs n >= 2");
  require(p.m >= 1 && p.k >= 1, "grad needs m >= 1 and k >= 1");
  const int n = p.n;
  const auto jets = multi_indices(static_cast<std::size_t>(n), p.k);
  const auto lower = multi_indices(static_cast<std::size_t>(n), p.k - 1);
  const std::size_t dimV = static_cast<std::size_t>(p.m) * jets.size();
  auto coord = [&](int nu, const MultiIndex& a) {
    const auto it = std::find(jets.begin(), jets.end(), a);
    return static_cast<std::size_t>(nu) * jets.size() + static_cast<std::size_t>(it - jets.begin());
  };
  std::vector<std::vector<std::pair<std::size_t, HomPoly>>> rows;
  for (int nu = 0; nu < p.m; ++nu)
    for (const auto& beta : lower)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const auto ei = MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i));
          const auto ej = MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(j));
          rows.push_back({{coord(nu, beta + ei), xi(n, j)}, {coord(nu, beta + ej), -xi(n, i)}});
        }
  PolyMatrix a(rows.size(), dimV, n, 1);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, poly] : rows[r]) a.set(r, c, poly);
  PolyMatrix b(dimV, static_cast<std::size_t>(p.m), n, p.k);
  for (int nu = 0; nu < p.m; ++nu)
    for (const auto& alpha : jets) b.set(coord(nu, alpha), static_cast<std::size_t>(nu), HomPoly::monomial(alpha));
  const std::string tag = std::to_string(n) + "_m" + std::to_string(p.m) + "_k" + std::to_string(p.k);
  return {OperatorSymbol("grad" + tag, a), attach("D" + std::to_string(p.k), b), true};
}

inline Builtin div(const BuiltinParams& p) {
  require(p.n >= 2, "div needs n >= 2");
  require(p.rows >= 1, "div needs rows >= 1");
  const int n = p.n;
  const auto rows = static_cast<std::size_t>(p.rows);
  const auto nn = static_cast<std::size_t>(n);
  PolyMatrix a(rows, rows * nn, n, 1);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t i = 0; i < nn; ++i) a.set(r, r * nn + i, xi(n, static_cast<int>(i)));
  Builtin out{OperatorSymbol("div" + std::to_string(n), a), std::nullopt, true};
  if (n == 2) {
    PolyMatrix b(rows * 2, rows, 2, 1);
    for (std::size_t r = 0; r < rows; ++r) {
      b.set(2 * r, r, xi(2, 1));
      b.set(2 * r + 1, r, -xi(2, 0));
    }
    out.potential = attach("perp_grad", b);
  } else if (n == 3) {
    PolyMatrix b(rows * 3, rows * 3, 3, 1);
    for (std::size_t r = 0; r < rows; ++r)
      for (int c = 0; c < 3; ++c) {
        const int c1 = (c + 1) % 3;
        const int c2 = (c + 2) % 3;
        b.set(3 * r + static_cast<std::size_t>(c), 3 * r + static_cast<std::size_t>(c2), xi(3, c1));
        b.set(3 * r + static_cast<std::size_t>(c), 3 * r + static_cast<std::size_t>(c1), -xi(3, c2));
      }
    out.potential = attach("curl", b);
  }
  return out;
}

/// Saint-Venant compatibility on symmetric matrices, with the symmetric gradient as potential.
inline Builtin symgrad(const BuiltinParams& p) {
  require(p.n >= 2, "symgrad needs n >= 2");
  const int n = p.n;
  const auto pairs = sym_pairs(n);
  const std::size_t dimV = pairs.size();
  std::vector<RationalVector> flat;  // coefficient vectors for independence tests
  std::vector<std::vector<HomPoly>> rows;
  const auto monos = multi_indices(static_cast<std::size_t>(n), 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          std::vector<HomPoly> row(dimV, HomPoly(n, 2));
          row[sym_index(n, i, j)] += xi(n, k) * xi(n, l);
          row[sym_index(n, k, l)] += xi(n, i) * xi(n, j);
          row[sym_index(n, j, l)] -= xi(n, i) * xi(n, k);
          row[sym_index(n, i, k)] -= xi(n, j) * xi(n, l);
          RationalVector f;
          for (const auto& poly : row)
            for (const auto& m : monos) f.push_back(poly.coefficient(m));
          if (is_zero_vector(f)) continue;
          flat.push_back(f);
          if (rank(RationalMatrix::from_rows(flat)) < flat.size()) {
            flat.pop_back();
            continue;
          }
          rows.push_back(row);
        }
  PolyMatrix a(rows.size(), dimV, n, 2);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < dimV; ++c) a.set(r, c, rows[r][c]);
  PolyMatrix b(dimV, static_cast<std::size_t>(n), n, 1);
  const Rational half(1, 2);
  for (std::size_t q = 0; q < dimV; ++q) {
    const auto [i, j] = pairs[q];
    if (i == j) {
      b.set(q, static_cast<std::size_t>(i), xi(n, i));
    } else {
      b.set(q, static_cast<std::size_t>(j), xi(n, i) * half);
      b.set(q, static_cast<std::size_t>(i), xi(n, j) * half);
    }
  }
  return {OperatorSymbol("saint_venant" + std::to_string(n), a), attach("symmetric_gradient", b), true};
}

/// div B = 0 and curl E = 0 on V = (B, E).
inline Builtin divcurl(const BuiltinParams& p) {
  require(p.n >= 2, "divcurl needs n >= 2");
  const int n = p.n;
  const auto nn = static_cast<std::size_t>(n);
  std::size_t nrows = 1 + nn * (nn - 1) / 2;
  PolyMatrix a(nrows, 2 * nn, n, 1);
  for (std::size_t i = 0; i < nn; ++i) a.set(0, i, xi(n, static_cast<int>(i)));
  std::size_t r = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++r) {
      a.set(r, nn + static_cast<std::size_t>(j), xi(n, i));
      a.set(r, nn + static_cast<std::size_t>(i), -xi(n, j));
    }
  Builtin out{OperatorSymbol("divcurl" + std::to_string(n), a), std::nullopt, true};
  if (n == 2) {
    // U = (psi, u): B = perp-grad psi, E = grad u.
    PolyMatrix b(4, 2, 2, 1);
    b.set(0, 0, xi(2, 1));
    b.set(1, 0, -xi(2, 0));
    b.set(2, 1, xi(2, 0));
    b.set(3, 1, xi(2, 1));
    out.potential = attach("perp_grad_and_grad", b);
  } else if (n == 3) {
    // U = (w, u): B = curl w, E = grad u.
    PolyMatrix b(6, 4, 3, 1);
    for (int c = 0; c < 3; ++c) {
      const int c1 = (c + 1) % 3;
      const int c2 = (c + 2) % 3;
      b.set(static_cast<std::size_t>(c), static_cast<std::size_t>(c2), xi(3, c1));
      b.set(static_cast<std::size_t>(c), static_cast<std::size_t>(c1), -xi(3, c2));
      b.set(3 + static_cast<std::size_t>(c), 3, xi(3, c));
    }
    out.potential = attach("curl_and_grad", b);
  }
  return out;
}

/// d_i v_j = 0 for i != j: v_j depends on x_j alone. Not of constant rank.
inline Builtin separate_convexity(const BuiltinParams& p) {
  require(p.n >= 2, "separate_convexity needs n >= 2");
  const int n = p.n;
  PolyMatrix a(static_cast<std::size_t>(n * (n - 1)), static_cast<std::size_t>(n), n, 1);
  std::size_t r = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) a.set(r++, static_cast<std::size_t>(j), xi(n, i));
  return {OperatorSymbol("separate_convexity" + std::to_string(n), a), std::nullopt, false};
}

/// A u = (d1 u1, d2 u2, (d1 + d2) u3) on R^2.
inline Builtin tartar(const BuiltinParams&) {
  PolyMatrix a(3, 3, 2, 1);
  a.set(0, 0, xi(2, 0));
  a.set(1, 1, xi(2, 1));
  a.set(2, 2, xi(2, 0) + xi(2, 1));
  return {OperatorSymbol("tartar", a), std::nullopt, false};
}

}  // namespace detail_builtin

inline const std::vector<BuiltinDescriptor>& builtin_catalogue() {
  static const std::vector<BuiltinDescriptor> cat = {
      {"grad", "n>=2, m>=1, k>=1", "compatibility conditions of k-th gradients of R^m-valued maps", "D^k"},
      {"curl", "n>=2", "curl on R^n vector fields (grad with m=1, k=1)", "gradient"},
      {"div", "n>=2, rows>=1", "row-wise divergence of rows x n matrix fields", "perp-gradient (n=2), curl (n=3)"},
      {"symgrad", "n>=2", "Saint-Venant compatibility operator on symmetric matrices", "symmetric gradient"},
      {"curlcurl", "n>=2", "alias of symgrad", "symmetric gradient"},
      {"divcurl", "n>=2", "div B = 0, curl E = 0 on pairs (B, E)", "(perp-grad, grad) for n=2, (curl, grad) for n=3"},
      {"hessian", "n>=2", "compatibility conditions of Hessians (grad with m=1, k=2)", "D^2"},
      {"separate_convexity", "n>=2", "d_i v_j = 0 for i != j (not constant rank)", "none"},
      {"tartar", "", "(d1 u1, d2 u2, (d1 + d2) u3) on R^2 (not constant rank)", "none"},
      {"appendix_A", "", "3x7 first-order operator on R^3 from the appendix computations", "appendix_B1"},
      {"appendix_B1", "", "7x7 third-order cocanceling potential of appendix_A", "none"},
      {"appendix_B2", "", "second 7x7 third-order potential of appendix_A", "none"},
  };
  return cat;
}

inline Builtin builtin(const std::string& name, const BuiltinParams& params = {}) {
  using namespace detail_builtin;
  if (name == "grad") return grad(params);
  if (name == "curl") {
    Builtin b = grad({params.n, 1, 1, 1});
    b.A.rename("curl" + std::to_string(params.n));
    return b;
  }
  if (name == "hessian") {
    Builtin b = grad({params.n, 1, 2, 1});
    b.A.rename("hessian" + std::to_string(params.n));
    return b;
  }
  if (name == "div") return div(params);
  if (name == "symgrad" || name == "curlcurl") return symgrad(params);
  if (name == "divcurl") return divcurl(params);
  if (name == "separate_convexity") return separate_convexity(params);
  if (name == "tartar") return tartar(params);
  if (name == "appendix_A") return {appendix("appendix_A"), PotentialSymbol{appendix("appendix_B1"), Provenance::user_supplied}, true};
  if (name == "appendix_B1" || name == "appendix_B2") return {appendix(name), std::nullopt, true};
  std::string known;
  for (const auto& d : builtin_catalogue()) known += (known.empty() ? "" : ", ") + d.name;
  throw DomainError("unknown builtin '" + name + "' (known: " + known + ")");
}

}  // namespace wavecone::dsl
