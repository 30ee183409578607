#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "wavecone/spectral/fields.hpp"

namespace wavecone {

/// Discrete grand-maximal proxy: integral of max_t |psi_t * f| with psi a smooth
/// unit-mass bump on the unit ball. f is treated as supported in [0,1)^n and is
/// embedded in a box four times larger so convolutions do not wrap around.
inline double hardy_norm_proxy(const PeriodicField& f, const std::vector<double>& scales) {
  if (f.dim != 1) throw DimensionError("hardy_norm_proxy: f must be scalar");
  if (scales.empty()) throw DomainError("hardy_norm_proxy: no scales");
  const TorusGrid& grid = f.grid;
  const int n = grid.n();
  const int N = *std::min_element(grid.sizes().begin(), grid.sizes().end());
  const double h = 1.0 / N;
  for (double t : scales)
    if (t < 2 * h || t > 1.5)
      throw DomainError("hardy_norm_proxy: scale " + std::to_string(t) + " outside the resolvable range [" +
                        std::to_string(2 * h) + ", 1.5]");
  for (int s : grid.sizes())
    if (s != N) throw DomainError("hardy_norm_proxy: grid must be a cube");

  const TorusGrid big = TorusGrid::cube(n, 4 * N);
  const std::size_t total = big.total();
  const double cell = std::pow(h, n);
  std::vector<double> padded(total, 0.0);
  for (std::size_t i = 0; i < grid.total(); ++i) padded[big.index_of(grid.unflatten(i))] = f.values[0][i];

  Fft fft(big);
  const auto fc = fft.forward(padded);
  std::vector<double> best(total, 0.0);
  for (double t : scales) {
    std::vector<double> psi(total, 0.0);
    double mass = 0;
    for (std::size_t i = 0; i < total; ++i) {
      const auto k = big.unflatten(i);
      double r2 = 0;
      for (int c : k) {
        const int w = c < 2 * N ? c : c - 4 * N;  // signed offset
        const double x = w * h / t;
        r2 += x * x;
      }
      if (r2 < 1) {
        psi[i] = std::exp(-1.0 / (1.0 - r2));
        mass += psi[i];
      }
    }
    for (double& x : psi) x /= mass;  // discrete unit mass: sum psi = 1
    auto pc = fft.forward(psi);
    for (std::size_t i = 0; i < total; ++i) pc[i] *= fc[i] * static_cast<double>(total);
    const auto conv = fft.backward_real(std::move(pc));
    for (std::size_t i = 0; i < total; ++i) best[i] = std::max(best[i], std::abs(conv[i]));
  }
  double sum = 0;
  for (double x : best) sum += x;
  return sum * cell;
}

/// Dyadic scales 2^-j from `largest` down to the finest resolvable one.
inline std::vector<double> dyadic_scales(const TorusGrid& grid, double largest = 1.0) {
  const int N = *std::min_element(grid.sizes().begin(), grid.sizes().end());
  std::vector<double> out;
  for (double t = largest; t >= 2.0 / N; t /= 2) out.push_back(t);
  return out;
}

struct ConcentrationStep {
  double epsilon = 0;
  double l1_norm = 0;
  double proxy = 0;
  double ratio = 0;  // proxy / l1_norm
};

struct ConcentrationReport {
  std::vector<ConcentrationStep> steps;
  double growth = 0;     // last ratio / first ratio
  double l1_spread = 0;  // max l1 / min l1
};

/// u = eta(x) S_eps(x_1 - 1/2) with S_eps a smoothed Heaviside step, v = grad u and
/// the linear F(v) = e_1 . v. As eps -> 0, v tends to a measure on the hyperplane x_1 = 1/2.
inline ConcentrationReport concentration_demo(int grid_size = 256, double eps0 = 0.125, int refinements = 3) {
  const TorusGrid grid = TorusGrid::cube(2, grid_size);
  const auto scales = dyadic_scales(grid);
  ConcentrationReport rep;
  double eps = eps0;
  for (int r = 0; r <= refinements; ++r, eps /= 2) {
    PeriodicField f(grid, 1);
    double l1 = 0;
    for (std::size_t i = 0; i < grid.total(); ++i) {
      const auto x = grid.point(i);
      const double eta = box_bump(x);
      if (eta == 0) continue;
      // d/dx_a of the bump factor exp(-1/(1-t^2)), t = 4x-2
      double d_eta[2];
      for (int a = 0; a < 2; ++a) {
        const double t = 4 * x[static_cast<std::size_t>(a)] - 2;
        d_eta[a] = eta * (-2 * t / ((1 - t * t) * (1 - t * t))) * 4;
      }
      const double z = (x[0] - 0.5) / eps;
      const double step = 0.5 * (1 + std::tanh(z));
      const double dstep = 0.5 / (eps * std::cosh(z) * std::cosh(z));
      const double v1 = d_eta[0] * step + eta * dstep;
      const double v2 = d_eta[1] * step;
      f.values[0][i] = v1;
      l1 += std::hypot(v1, v2);
    }
    l1 /= static_cast<double>(grid.total());
    ConcentrationStep st;
    st.epsilon = eps;
    st.l1_norm = l1;
    st.proxy = hardy_norm_proxy(f, scales);
    st.ratio = st.proxy / l1;
    rep.steps.push_back(st);
  }
  double lo = rep.steps.front().l1_norm, hi = lo;
  for (const auto& s : rep.steps) {
    lo = std::min(lo, s.l1_norm);
    hi = std::max(hi, s.l1_norm);
  }
  rep.growth = rep.steps.back().ratio / rep.steps.front().ratio;
  rep.l1_spread = hi / lo;
  return rep;
}

}  // namespace wavecone
