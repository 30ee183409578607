#pragma once

#include <vector>

#include "wavecone/errors.hpp"
#include "wavecone/polyalg/poly_matrix.hpp"

namespace wavecone {

/// Coefficients c_1..c_w of det(lambda I - P) = lambda^w + c_1 lambda^{w-1} + ... + c_w.
///
/// Recurrence: N_1 = P, c_1 = -tr N_1, N_{k+1} = P (N_k + c_k I), c_{k+1} = -tr N_{k+1} / (k+1).
/// c_j is homogeneous of degree j * deg P.
inline std::vector<HomPoly> faddeev_leverrier(const PolyMatrix& p) {
  if (p.rows() != p.cols()) throw DimensionError("faddeev_leverrier: matrix is " + p.shape() + ", not square");
  const std::size_t w = p.rows();
  std::vector<HomPoly> c;
  c.reserve(w);
  if (w == 0) return c;
  PolyMatrix n = p;
  c.push_back(-n.trace());
  for (std::size_t k = 1; k < w; ++k) {
    n = p * (n + PolyMatrix::scalar_identity(w, c.back()));
    c.push_back(n.trace() * Rational(-1, static_cast<long>(k + 1)));
  }
  return c;
}

}  // namespace wavecone
