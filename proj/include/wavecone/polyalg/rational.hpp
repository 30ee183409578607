#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wavecone/errors.hpp"

namespace wavecone {

using Integer = mpz_class;
/// GMP rationals are kept in lowest terms with a positive denominator by every
/// arithmetic operation; only the two-argument constructor needs canonicalize().
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

inline Rational make_rational(long numerator, long denominator = 1) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

inline Rational parse_rational(std::string_view text) {
  Rational q;
  if (q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) {
    throw DomainError("malformed rational '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline double to_double(const Rational& q) { return q.get_d(); }

inline RationalVector to_rational_vector(const std::vector<long>& xs) {
  RationalVector out;
  out.reserve(xs.size());
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline bool is_zero_vector(const RationalVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace wavecone
