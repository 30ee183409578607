#pragma once

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "wavecone/errors.hpp"

namespace wavecone {

/// Exponent vector alpha of a monomial xi^alpha.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
    for (int e : exps_)
      if (e < 0) throw DomainError("negative exponent in multi-index");
    degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
  }
  MultiIndex(std::initializer_list<int> exponents) : MultiIndex(std::vector<int>(exponents)) {}

  static MultiIndex zero(std::size_t nvars) { return MultiIndex(std::vector<int>(nvars, 0)); }
  static MultiIndex unit(std::size_t nvars, std::size_t i) {
    std::vector<int> e(nvars, 0);
    e.at(i) = 1;
    return MultiIndex(std::move(e));
  }

  std::size_t size() const { return exps_.size(); }
  int degree() const { return degree_; }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }

  MultiIndex operator+(const MultiIndex& other) const {
    if (other.size() != size()) throw DimensionError("multi-index variable count mismatch");
    std::vector<int> e(exps_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
    return MultiIndex(std::move(e));
  }

  /// Componentwise difference. Requires other.divides(*this).
  MultiIndex operator-(const MultiIndex& other) const {
    if (other.size() != size()) throw DimensionError("multi-index variable count mismatch");
    std::vector<int> e(exps_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= other.exps_[i];
    return MultiIndex(std::move(e));
  }

  bool divides(const MultiIndex& other) const {
    if (other.size() != size()) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  /// "2,0,1", the key format used in the JSON coefficient view.
  std::string key() const {
    std::string s;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(exps_[i]);
    }
    return s;
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.exps_ == b.exps_; }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// Graded order: lower total degree first; within a degree, larger exponent in
/// the first differing variable first (xi1^3, xi1^2 xi2, xi1^2 xi3, xi1 xi2^2, ...).
struct MonomialOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != b[i]) return a[i] > b[i];
    return a.size() < b.size();
  }
};

/// All multi-indices in nvars variables of total degree `degree`, in MonomialOrder.
inline std::vector<MultiIndex> multi_indices(std::size_t nvars, int degree) {
  std::vector<MultiIndex> out;
  if (degree < 0) return out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(std::vector<int>{});
    return out;
  }
  std::vector<int> e(nvars, 0);
  // Recursive fill: first variable takes the largest share first.
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == nvars) {
      e[pos] = remaining;
      out.emplace_back(e);
      return;
    }
    for (int take = remaining; take >= 0; --take) {
      e[pos] = take;
      self(self, pos + 1, remaining - take);
    }
  };
  rec(rec, 0, degree);
  return out;
}

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Number of monomials of total degree d in n variables.
inline long monomial_count(long nvars, long degree) {
  if (degree < 0) return 0;
  return binomial(nvars + degree - 1, degree);
}

}  // namespace wavecone
