#pragma once

#include <complex>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include <fftw3.h>

#include "wavecone/errors.hpp"

namespace wavecone {

using Complex = std::complex<double>;

/// Uniform grid on [0,1)^n. Index layout is row-major (last axis fastest).
class TorusGrid {
 public:
  TorusGrid() = default;
  TorusGrid(int n, std::vector<int> sizes) : n_(n), sizes_(std::move(sizes)) {
    if (n < 1 || static_cast<int>(sizes_.size()) != n) throw DimensionError("TorusGrid: need one size per axis");
    for (int s : sizes_)
      if (s < 8 || (s & (s - 1)) != 0) throw DomainError("TorusGrid: sizes must be powers of two >= 8");
  }
  static TorusGrid cube(int n, int size) { return TorusGrid(n, std::vector<int>(static_cast<std::size_t>(n), size)); }

  int n() const { return n_; }
  const std::vector<int>& sizes() const { return sizes_; }
  int size(int axis) const { return sizes_[static_cast<std::size_t>(axis)]; }
  std::size_t total() const {
    return std::accumulate(sizes_.begin(), sizes_.end(), std::size_t{1},
                           [](std::size_t a, int b) { return a * static_cast<std::size_t>(b); });
  }

  /// Multi-index of a flat index.
  std::vector<int> unflatten(std::size_t idx) const {
    std::vector<int> out(static_cast<std::size_t>(n_));
    for (int a = n_ - 1; a >= 0; --a) {
      const auto s = static_cast<std::size_t>(sizes_[static_cast<std::size_t>(a)]);
      out[static_cast<std::size_t>(a)] = static_cast<int>(idx % s);
      idx /= s;
    }
    return out;
  }

  /// Integer frequency of a Fourier index; the Nyquist index maps to -N/2.
  std::vector<int> frequency(std::size_t idx) const {
    auto k = unflatten(idx);
    for (std::size_t a = 0; a < k.size(); ++a)
      if (k[a] >= sizes_[a] / 2) k[a] -= sizes_[a];
    return k;
  }
  /// Flat index of an integer frequency (taken modulo the sizes).
  std::size_t index_of(const std::vector<int>& k) const {
    std::size_t idx = 0;
    for (std::size_t a = 0; a < k.size(); ++a) {
      const int s = sizes_[a];
      idx = idx * static_cast<std::size_t>(s) + static_cast<std::size_t>(((k[a] % s) + s) % s);
    }
    return idx;
  }
  bool is_nyquist(std::size_t idx) const {
    const auto k = unflatten(idx);
    for (std::size_t a = 0; a < k.size(); ++a)
      if (k[a] == sizes_[a] / 2) return true;
    return false;
  }

  std::vector<double> point(std::size_t idx) const {
    const auto k = unflatten(idx);
    std::vector<double> x(k.size());
    for (std::size_t a = 0; a < k.size(); ++a) x[a] = static_cast<double>(k[a]) / sizes_[a];
    return x;
  }

  std::string describe() const {
    std::string s;
    for (std::size_t a = 0; a < sizes_.size(); ++a) s += (a ? "x" : "") + std::to_string(sizes_[a]);
    return s;
  }

  friend bool operator==(const TorusGrid& a, const TorusGrid& b) { return a.sizes_ == b.sizes_; }

 private:
  int n_ = 0;
  std::vector<int> sizes_;
};

/// Real field with `dim` components on a grid.
struct PeriodicField {
  TorusGrid grid;
  std::size_t dim = 0;
  std::vector<std::vector<double>> values;

  PeriodicField() = default;
  PeriodicField(TorusGrid g, std::size_t d) : grid(std::move(g)), dim(d), values(d, std::vector<double>(grid.total(), 0.0)) {}

  /// Discrete L2 norm, sqrt(mean |v|^2).
  double l2_norm() const {
    double s = 0;
    for (const auto& c : values)
      for (double x : c) s += x * x;
    return std::sqrt(s / static_cast<double>(grid.total()));
  }
};

/// Discrete L2 inner product, mean of u . v.
inline double inner(const PeriodicField& u, const PeriodicField& v) {
  if (u.dim != v.dim || !(u.grid == v.grid)) throw DimensionError("inner: field shapes differ");
  double s = 0;
  for (std::size_t c = 0; c < u.dim; ++c)
    for (std::size_t i = 0; i < u.grid.total(); ++i) s += u.values[c][i] * v.values[c][i];
  return s / static_cast<double>(u.grid.total());
}

/// Complex FFT on a grid. forward() returns coefficients c with v(x) = sum c(k) e^{2 pi i k.x}.
class Fft {
 public:
  explicit Fft(const TorusGrid& grid) : grid_(grid), total_(grid.total()) {
    std::vector<Complex> buf(total_);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft(grid.n(), grid.sizes().data(), p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    backward_ = fftw_plan_dft(grid.n(), grid.sizes().data(), p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  ~Fft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::vector<Complex> forward(const std::vector<double>& values) const {
    std::vector<Complex> buf(values.begin(), values.end());
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(forward_, p, p);
    const double scale = 1.0 / static_cast<double>(total_);
    for (auto& c : buf) c *= scale;
    return buf;
  }

  /// Real part of the synthesis sum.
  std::vector<double> backward_real(std::vector<Complex> coeffs) const {
    auto* p = reinterpret_cast<fftw_complex*>(coeffs.data());
    fftw_execute_dft(backward_, p, p);
    std::vector<double> out(total_);
    for (std::size_t i = 0; i < total_; ++i) out[i] = coeffs[i].real();
    return out;
  }

  std::vector<Complex> backward(std::vector<Complex> coeffs) const {
    auto* p = reinterpret_cast<fftw_complex*>(coeffs.data());
    fftw_execute_dft(backward_, p, p);
    return coeffs;
  }

  const TorusGrid& grid() const { return grid_; }

 private:
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }
  TorusGrid grid_;
  std::size_t total_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

/// Coefficients of `grid` embedded into the finer grid `fine` (zero padding).
/// Nyquist coefficients are dropped.
inline std::vector<Complex> zero_pad(const std::vector<Complex>& coeffs, const TorusGrid& grid, const TorusGrid& fine) {
  std::vector<Complex> out(fine.total(), Complex(0, 0));
  for (std::size_t i = 0; i < grid.total(); ++i) {
    if (grid.is_nyquist(i) || coeffs[i] == Complex(0, 0)) continue;
    out[fine.index_of(grid.frequency(i))] = coeffs[i];
  }
  return out;
}

}  // namespace wavecone
