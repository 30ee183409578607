#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "wavecone/parallel.hpp"
#include "wavecone/polyalg/sampling.hpp"
#include "wavecone/spectral/grid.hpp"
#include "wavecone/spectral/numeric_symbol.hpp"

namespace wavecone {

/// Fourier coefficients, one array per component.
using Spectrum = std::vector<std::vector<Complex>>;

inline Spectrum to_spectrum(const Fft& fft, const PeriodicField& f) {
  Spectrum s;
  s.reserve(f.dim);
  for (const auto& c : f.values) s.push_back(fft.forward(c));
  return s;
}

inline PeriodicField from_spectrum(const Fft& fft, const Spectrum& s) {
  PeriodicField f(fft.grid(), s.size());
  for (std::size_t c = 0; c < s.size(); ++c) f.values[c] = fft.backward_real(s[c]);
  return f;
}

inline Complex derivative_factor(int order) { return std::pow(Complex(0.0, 2.0 * std::numbers::pi), order); }

/// (2 pi i)^k M(xi) applied per integer frequency; Nyquist modes are dropped.
inline Spectrum apply_symbol(const NumericSymbol& m, const TorusGrid& grid, const Spectrum& in) {
  if (in.size() != m.cols())
    throw DimensionError("apply_symbol: field has " + std::to_string(in.size()) + " components, symbol expects " +
                         std::to_string(m.cols()));
  const std::size_t total = grid.total();
  Spectrum out(m.rows(), std::vector<Complex>(total, Complex(0, 0)));
  const Complex scale = derivative_factor(m.order());
  parallel_for(total, [&](std::size_t i) {
    if (grid.is_nyquist(i)) return;
    const auto k = grid.frequency(i);
    bool any = false;
    for (std::size_t c = 0; c < in.size(); ++c)
      if (in[c][i] != Complex(0, 0)) any = true;
    if (!any) return;
    std::vector<double> xi(k.begin(), k.end());
    const Eigen::MatrixXd M = m.at(xi);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Complex s(0, 0);
      for (std::size_t c = 0; c < m.cols(); ++c) s += M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c][i];
      out[r][i] = scale * s;
    }
  });
  return out;
}

/// Spectral differentiation: the field M(D) f.
inline PeriodicField apply_operator(const NumericSymbol& m, const PeriodicField& f) {
  Fft fft(f.grid);
  return from_spectrum(fft, apply_symbol(m, f.grid, to_spectrum(fft, f)));
}

/// Largest |xi| carrying a nonzero coefficient.
inline double max_frequency_norm(const TorusGrid& grid, const Spectrum& s) {
  double best = 0;
  for (std::size_t i = 0; i < grid.total(); ++i) {
    bool any = false;
    for (const auto& c : s)
      if (std::abs(c[i]) > 0) any = true;
    if (!any) continue;
    double n2 = 0;
    for (int k : grid.frequency(i)) n2 += static_cast<double>(k) * k;
    best = std::max(best, std::sqrt(n2));
  }
  return best;
}

/// Discrete L2 norm from coefficients (Parseval).
inline double spectral_l2(const Spectrum& s) {
  double t = 0;
  for (const auto& c : s)
    for (const auto& z : c) t += std::norm(z);
  return std::sqrt(t);
}

namespace detail {

/// Frequencies with |k|_inf <= band that come first in each +-k pair.
inline std::vector<std::vector<int>> half_band(const TorusGrid& grid, int band) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < grid.total(); ++i) {
    if (grid.is_nyquist(i)) continue;
    const auto k = grid.frequency(i);
    int inf = 0;
    for (int c : k) inf = std::max(inf, std::abs(c));
    if (inf == 0 || inf > band) continue;
    int lead = 0;
    for (int c : k)
      if (c != 0) {
        lead = c;
        break;
      }
    if (lead > 0) out.push_back(k);
  }
  return out;
}

inline int default_band(const TorusGrid& grid) {
  int nmin = grid.sizes()[0];
  for (int s : grid.sizes()) nmin = std::min(nmin, s);
  return std::min(8, nmin / 4);
}

}  // namespace detail

/// Real random field with all modes |k|_inf <= band, zero mean.
inline PeriodicField random_periodic_field(const TorusGrid& grid, std::size_t dim, std::uint64_t seed, int band = -1) {
  int nmin = grid.sizes()[0];
  for (int s : grid.sizes()) nmin = std::min(nmin, s);
  if (band < 0) band = nmin / 2 - 1;
  if (band > nmin / 2 - 1) throw DomainError("random_periodic_field: band reaches the Nyquist frequency");
  Rng rng(seed);
  std::normal_distribution<double> normal;
  Spectrum s(dim, std::vector<Complex>(grid.total(), Complex(0, 0)));
  for (const auto& k : detail::half_band(grid, band)) {
    std::vector<int> neg(k.size());
    for (std::size_t a = 0; a < k.size(); ++a) neg[a] = -k[a];
    const std::size_t i = grid.index_of(k), j = grid.index_of(neg);
    for (std::size_t c = 0; c < dim; ++c) {
      const Complex z(normal(rng), normal(rng));
      s[c][i] = z;
      s[c][j] = std::conj(z);
    }
  }
  Fft fft(grid);
  return from_spectrum(fft, s);
}

/// C-infinity bump prod exp(-1/(1-(4x-2)^2)) supported in (0.25, 0.75)^n.
inline double box_bump(const std::vector<double>& x) {
  double v = 1.0;
  for (double xa : x) {
    const double t = 4.0 * xa - 2.0;
    if (std::abs(t) >= 1.0) return 0.0;
    v *= std::exp(-1.0 / (1.0 - t * t));
  }
  return v;
}

/// bump * (random trigonometric polynomial of degree `degree`), per component.
inline PeriodicField random_bump_field(const TorusGrid& grid, std::size_t dim, std::uint64_t seed, int degree = 3) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  struct Mode {
    std::vector<int> k;
    double a, b;
  };
  std::vector<std::vector<Mode>> modes(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    modes[c].push_back({std::vector<int>(static_cast<std::size_t>(grid.n()), 0), normal(rng), 0.0});
    for (const auto& k : detail::half_band(grid, degree)) modes[c].push_back({k, normal(rng), normal(rng)});
  }
  PeriodicField f(grid, dim);
  for (std::size_t i = 0; i < grid.total(); ++i) {
    const auto x = grid.point(i);
    const double eta = box_bump(x);
    if (eta == 0) continue;
    for (std::size_t c = 0; c < dim; ++c) {
      double s = 0;
      for (const auto& m : modes[c]) {
        double phase = 0;
        for (std::size_t a = 0; a < x.size(); ++a) phase += m.k[a] * x[a];
        phase *= 2.0 * std::numbers::pi;
        s += m.a * std::cos(phase) + m.b * std::sin(phase);
      }
      f.values[c][i] = eta * s;
    }
  }
  return f;
}

}  // namespace wavecone
