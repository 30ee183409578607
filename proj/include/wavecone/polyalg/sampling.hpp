#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wavecone/polyalg/rational.hpp"
#include "wavecone/polyalg/rational_matrix.hpp"

namespace wavecone {

using Rng = std::mt19937_64;

inline long random_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Rational with numerator in [-9, 9] and denominator in [1, 9].
inline Rational random_rational(Rng& rng) { return make_rational(random_int(rng, -9, 9), random_int(rng, 1, 9)); }

inline RationalVector random_rational_vector(Rng& rng, std::size_t n) {
  RationalVector v(n);
  for (auto& x : v) x = random_rational(rng);
  return v;
}

/// Random rational vector, redrawn until nonzero.
inline RationalVector random_rational_frequency(Rng& rng, std::size_t n) {
  for (;;) {
    RationalVector v = random_rational_vector(rng, n);
    if (!is_zero_vector(v)) return v;
  }
}

inline RationalMatrix random_rational_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rational(rng);
  return m;
}

/// Nonzero integer point with coordinates uniform in [-9, 9].
inline RationalVector random_frequency(Rng& rng, std::size_t n) {
  for (;;) {
    RationalVector v(n);
    bool nonzero = false;
    for (auto& x : v) {
      x = random_int(rng, -9, 9);
      if (x != 0) nonzero = true;
    }
    if (nonzero) return v;
  }
}

/// Coordinate directions e_i followed by every e_i + e_j and e_i - e_j (i < j).
/// The sign-flipped copies are omitted: ranks and the sampled c_r are even in xi.
inline std::vector<RationalVector> structured_frequencies(std::size_t n) {
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n, Rational(0));
    e[i] = 1;
    out.push_back(e);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (int s : {1, -1}) {
        RationalVector e(n, Rational(0));
        e[i] = 1;
        e[j] = s;
        out.push_back(e);
      }
  return out;
}

/// Structured frequencies plus `count` random integer frequencies.
inline std::vector<RationalVector> sample_frequencies(std::size_t n, std::size_t count, std::uint64_t seed) {
  auto out = structured_frequencies(n);
  Rng rng(seed);
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_frequency(rng, n));
  return out;
}

}  // namespace wavecone
