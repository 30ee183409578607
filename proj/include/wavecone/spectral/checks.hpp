#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "wavecone/nulllag/solver.hpp"
#include "wavecone/operator/analysis.hpp"
#include "wavecone/potential/potential_symbol.hpp"
#include "wavecone/spectral/fields.hpp"

namespace wavecone {

namespace detail {

inline std::string format_frequency(const std::vector<int>& k) {
  std::string s = "(";
  for (std::size_t a = 0; a < k.size(); ++a) s += (a ? ", " : "") + std::to_string(k[a]);
  return s + ")";
}

inline int min_size(const TorusGrid& g) { return *std::min_element(g.sizes().begin(), g.sizes().end()); }

/// Refinement factor (power of two) that makes products of `factors` band-limited fields alias free.
inline int alias_free_pad(int factors) {
  int p = 1;
  while (2 * p <= factors) p *= 2;
  return 2 * p;
}

/// Evaluates a spectrum on a refined grid.
inline PeriodicField refine(const TorusGrid& grid, const Spectrum& s, int pad) {
  std::vector<int> sizes = grid.sizes();
  for (int& n : sizes) n *= pad;
  TorusGrid fine(grid.n(), sizes);
  Fft fft(fine);
  Spectrum out;
  for (const auto& c : s) out.push_back(zero_pad(c, grid, fine));
  return from_spectrum(fft, out);
}

inline std::vector<double> pointwise(const HomPoly& f, const PeriodicField& v, const std::vector<double>& shift = {}) {
  std::vector<double> out(v.grid.total());
  std::vector<double> x(v.dim);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t c = 0; c < v.dim; ++c) x[c] = v.values[c][i] + (shift.empty() ? 0.0 : shift[c]);
    out[i] = f.evaluate(std::span<const double>(x));
  }
  return out;
}

}  // namespace detail

/// Random A-free field: each mode with |k|_inf <= band is projected onto ker A(k).
/// Modes above the band and the Nyquist modes are zero; the zero mode is `mean`.
inline PeriodicField synthesize_A_free(const OperatorSymbol& a, const TorusGrid& grid, std::uint64_t seed,
                                       const std::vector<double>& mean = {}, int band = -1) {
  if (grid.n() != a.n())
    throw DimensionError("synthesize_A_free: grid has n = " + std::to_string(grid.n()) + ", operator has n = " +
                         std::to_string(a.n()));
  const std::size_t d = a.dim_from();
  if (!mean.empty() && mean.size() != d) throw DimensionError("synthesize_A_free: mean has the wrong length");
  if (band < 0) band = detail::default_band(grid);
  if (band < 1 || band > detail::min_size(grid) / 2 - 1) throw DomainError("synthesize_A_free: band out of range");

  const NumericSymbol sym(a);
  const auto modes = detail::half_band(grid, band);

  // The numerical kernel must agree with the exact rank.
  Rng check_rng(seed ^ 0x5eedULL);
  for (int t = 0; t < 10 && !modes.empty(); ++t) {
    const auto& k = modes[static_cast<std::size_t>(random_int(check_rng, 0, static_cast<long>(modes.size()) - 1))];
    RationalVector xi;
    for (int c : k) xi.emplace_back(c);
    const std::size_t exact = symbol_rank_at(a, xi);
    const std::size_t numeric = kernel_projection(sym.at_unit(k)).rank;
    if (exact != numeric) {
      std::ostringstream msg;
      msg << "synthesize_A_free: numeric rank " << numeric << " differs from exact rank " << exact << " at xi = "
          << detail::format_frequency(k) << " (operator " << a.name() << ")";
      throw InternalError(msg.str());
    }
  }

  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::vector<std::vector<Complex>> draws(modes.size(), std::vector<Complex>(d));
  for (auto& z : draws)
    for (auto& c : z) c = Complex(normal(rng), normal(rng));

  Spectrum s(d, std::vector<Complex>(grid.total(), Complex(0, 0)));
  parallel_for(modes.size(), [&](std::size_t m) {
    const auto& k = modes[m];
    const Eigen::MatrixXd P = kernel_projection(sym.at_unit(k)).P;
    std::vector<int> neg(k.size());
    for (std::size_t t = 0; t < k.size(); ++t) neg[t] = -k[t];
    const std::size_t i = grid.index_of(k), j = grid.index_of(neg);
    for (std::size_t r = 0; r < d; ++r) {
      Complex z(0, 0);
      for (std::size_t c = 0; c < d; ++c) z += P(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * draws[m][c];
      s[r][i] = z;
      s[r][j] = std::conj(z);
    }
  });
  for (std::size_t c = 0; c < d && !mean.empty(); ++c) s[c][0] = mean[c];
  Fft fft(grid);
  return from_spectrum(fft, s);
}

/// ||A v||_2 / (||v||_2 (2 pi max|xi|)^l), with A v evaluated spectrally.
inline double spectral_residual(const OperatorSymbol& a, const PeriodicField& v) {
  Fft fft(v.grid);
  const Spectrum vs = to_spectrum(fft, v);
  const double norm = spectral_l2(vs);
  if (norm == 0) return 0;
  const Spectrum av = apply_symbol(NumericSymbol(a), v.grid, vs);
  const double scale = std::pow(2.0 * std::numbers::pi * std::max(1.0, max_frequency_norm(v.grid, vs)), a.order());
  return spectral_l2(av) / (norm * scale);
}

struct HodgeResult {
  PeriodicField Bu_part;
  PeriodicField Astar_part;
  std::vector<double> mean_part;
  double relative_residual = 0;
  double orthogonality = 0;  // |<Bu_part, Astar_part>| / ||v||^2
  double min_ellipticity = 0;
};

/// v = mean + B B* Box^-1 v + A* A Box^-1 v per mode, Box = B B* + A* A at xi / |xi|.
inline HodgeResult hodge_decompose(const OperatorSymbol& a, const PotentialSymbol& b, const PeriodicField& v) {
  if (b.dim_V() != a.dim_from() || v.dim != a.dim_from())
    throw DimensionError("hodge_decompose: V dimensions differ (A: " + std::to_string(a.dim_from()) +
                         ", B: " + std::to_string(b.dim_V()) + ", field: " + std::to_string(v.dim) + ")");
  if (v.grid.n() != a.n() || b.B.n() != a.n()) throw DimensionError("hodge_decompose: space dimension mismatch");
  const TorusGrid& grid = v.grid;
  const std::size_t d = v.dim, total = grid.total();
  const NumericSymbol as(a), bs(b.B);
  Fft fft(grid);
  const Spectrum vs = to_spectrum(fft, v);

  Spectrum bu(d, std::vector<Complex>(total, Complex(0, 0))), aw = bu;
  std::vector<double> ellipticity(total, 1.0);
  parallel_for(total, [&](std::size_t i) {
    if (i == 0 || grid.is_nyquist(i)) return;
    const auto k = grid.frequency(i);
    const Eigen::MatrixXd A = as.at_unit(k), B = bs.at_unit(k);
    const Eigen::MatrixXd BB = B * B.transpose(), AA = A.transpose() * A;
    const Eigen::MatrixXd box = BB + AA;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(box);
    const auto& ev = eig.eigenvalues();
    const double ratio = ev.maxCoeff() > 0 ? ev.minCoeff() / ev.maxCoeff() : 0.0;
    ellipticity[i] = ratio;
    if (ratio < 1e-10)
      throw DomainError("hodge_decompose: B B* + A* A is numerically singular at xi = " +
                        detail::format_frequency(k) + " (exactness or constant rank fails)");
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(d));
    for (std::size_t c = 0; c < d; ++c) rhs(static_cast<Eigen::Index>(c)) = vs[c][i];
    const Eigen::MatrixXd inv = eig.eigenvectors() * ev.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
    const Eigen::VectorXcd phi = inv.cast<Complex>() * rhs;
    const Eigen::VectorXcd p1 = BB.cast<Complex>() * phi, p2 = AA.cast<Complex>() * phi;
    for (std::size_t c = 0; c < d; ++c) {
      bu[c][i] = p1(static_cast<Eigen::Index>(c));
      aw[c][i] = p2(static_cast<Eigen::Index>(c));
    }
  });

  HodgeResult res;
  res.Bu_part = from_spectrum(fft, bu);
  res.Astar_part = from_spectrum(fft, aw);
  res.mean_part.resize(d);
  for (std::size_t c = 0; c < d; ++c) res.mean_part[c] = vs[c][0].real();
  res.min_ellipticity = *std::min_element(ellipticity.begin(), ellipticity.end());

  const double vnorm = v.l2_norm();
  PeriodicField r(grid, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t i = 0; i < total; ++i)
      r.values[c][i] = v.values[c][i] - res.mean_part[c] - res.Bu_part.values[c][i] - res.Astar_part.values[c][i];
  res.relative_residual = vnorm > 0 ? r.l2_norm() / vnorm : 0.0;
  res.orthogonality = vnorm > 0 ? std::abs(inner(res.Bu_part, res.Astar_part)) / (vnorm * vnorm) : 0.0;
  return res;
}

/// |mean F(z + v) - F(z)| / (mean |F(z + v)| + |F(z)|) over a random mean-zero A-free v.
/// The band is small enough that the grid mean is the exact integral.
inline double periodic_quasiaffinity_check(const HomPoly& f, const OperatorSymbol& a, const std::vector<double>& z,
                                           const TorusGrid& grid, std::uint64_t seed) {
  if (static_cast<std::size_t>(f.nvars()) != a.dim_from() || z.size() != a.dim_from())
    throw DimensionError("periodic_quasiaffinity_check: F and z must live on V (dimension " +
                         std::to_string(a.dim_from()) + ")");
  const int deg = std::max(1, f.degree());
  const int band = std::min(8, (detail::min_size(grid) / 2 - 1) / deg);
  if (band < 1) throw PreconditionError("periodic_quasiaffinity_check: grid too coarse for degree " + std::to_string(deg));
  const PeriodicField v = synthesize_A_free(a, grid, seed, {}, band);
  const double fz = f.evaluate(std::span<const double>(z));
  const auto vals = detail::pointwise(f, v, z);
  double sum = 0, abs_sum = 0;
  for (double x : vals) {
    sum += x;
    abs_sum += std::abs(x);
  }
  const double n = static_cast<double>(vals.size());
  return std::abs(sum / n - fz) / (abs_sum / n + std::abs(fz) + DBL_MIN);
}

/// v = B u for a compactly supported u; returns |int F(v)| / int |F(v)|.
inline double zero_mean_check(const HomPoly& f, const PotentialSymbol& b, const TorusGrid& grid, std::uint64_t seed) {
  if (static_cast<std::size_t>(f.nvars()) != b.dim_V())
    throw DimensionError("zero_mean_check: F has " + std::to_string(f.nvars()) + " variables, V has dimension " +
                         std::to_string(b.dim_V()));
  if (grid.n() != b.B.n()) throw DimensionError("zero_mean_check: grid dimension differs from the operator");
  const PeriodicField u = random_bump_field(grid, b.dim_U(), seed);
  Fft fft(grid);
  const Spectrum vs = apply_symbol(NumericSymbol(b.B), grid, to_spectrum(fft, u));
  const PeriodicField v = detail::refine(grid, vs, detail::alias_free_pad(std::max(1, f.degree())));
  const auto vals = detail::pointwise(f, v);
  double sum = 0, abs_sum = 0;
  for (double x : vals) {
    sum += x;
    abs_sum += std::abs(x);
  }
  return abs_sum > 0 ? std::abs(sum) / abs_sum : 0.0;
}

/// |int phi (F(B u1) - F(B u2))| / (||v1 - v2||_{W^-1,q} (||v1||_p + ||v2||_p)^(s-1) ||D phi||_inf).
inline double quantitative_estimate_check(const HomPoly& f, const PotentialSymbol& b, const PeriodicField& u1,
                                          const PeriodicField& u2, const PeriodicField& phi, double p, double q) {
  const double s = f.degree();
  if (std::abs((s - 1) / p + 1 / q - 1) > 1e-12)
    throw DomainError("quantitative_estimate_check: exponents violate (s-1)/p + 1/q = 1 (s = " + std::to_string(f.degree()) +
                      ", p = " + std::to_string(p) + ", q = " + std::to_string(q) + ")");
  if (u1.dim != b.dim_U() || u2.dim != b.dim_U() || phi.dim != 1)
    throw DimensionError("quantitative_estimate_check: u must take values in U and phi must be scalar");
  if (!(u1.grid == u2.grid) || !(u1.grid == phi.grid)) throw DimensionError("quantitative_estimate_check: grids differ");
  const TorusGrid& grid = u1.grid;
  const std::size_t total = grid.total();
  Fft fft(grid);
  const NumericSymbol bs(b.B);
  const Spectrum v1 = apply_symbol(bs, grid, to_spectrum(fft, u1));
  const Spectrum v2 = apply_symbol(bs, grid, to_spectrum(fft, u2));
  const Spectrum ph = to_spectrum(fft, phi);

  const int pad = detail::alias_free_pad(f.degree() + 1);
  const PeriodicField f1 = detail::refine(grid, v1, pad), f2 = detail::refine(grid, v2, pad);
  const PeriodicField fphi = detail::refine(grid, ph, pad);
  const auto F1 = detail::pointwise(f, f1), F2 = detail::pointwise(f, f2);
  double lhs = 0;
  for (std::size_t i = 0; i < F1.size(); ++i) lhs += fphi.values[0][i] * (F1[i] - F2[i]);
  lhs = std::abs(lhs / static_cast<double>(F1.size()));
  if (lhs == 0) return 0;

  auto lnorm = [&](const PeriodicField& w, double e) {
    double t = 0;
    for (std::size_t i = 0; i < total; ++i) {
      double m = 0;
      for (const auto& c : w.values) m += c[i] * c[i];
      t += std::pow(std::sqrt(m), e);
    }
    return std::pow(t / static_cast<double>(total), 1 / e);
  };

  Spectrum diff(v1.size(), std::vector<Complex>(total, Complex(0, 0)));
  for (std::size_t c = 0; c < v1.size(); ++c)
    for (std::size_t i = 1; i < total; ++i) {
      double n2 = 0;
      for (int k : grid.frequency(i)) n2 += static_cast<double>(k) * k;
      diff[c][i] = (v1[c][i] - v2[c][i]) / (2 * std::numbers::pi * std::sqrt(n2));
    }
  const double wnorm = lnorm(from_spectrum(fft, diff), q);
  const double vsum = lnorm(from_spectrum(fft, v1), p) + lnorm(from_spectrum(fft, v2), p);

  // D phi through the gradient symbol of a scalar.
  PolyMatrix g(static_cast<std::size_t>(grid.n()), 1, grid.n(), 1);
  for (int j = 0; j < grid.n(); ++j) g.set(static_cast<std::size_t>(j), 0, HomPoly::variable(grid.n(), j));
  const PeriodicField dphi = from_spectrum(fft, apply_symbol(NumericSymbol(g), grid, ph));
  double dmax = 0;
  for (std::size_t i = 0; i < total; ++i) {
    double m = 0;
    for (const auto& c : dphi.values) m += c[i] * c[i];
    dmax = std::max(dmax, std::sqrt(m));
  }
  const double rhs = wnorm * std::pow(vsum, s - 1) * dmax;
  if (rhs == 0) throw DomainError("quantitative_estimate_check: right-hand side vanishes while the left does not");
  return lhs / rhs;
}

}  // namespace wavecone
