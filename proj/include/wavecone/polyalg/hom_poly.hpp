#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>

#include "wavecone/errors.hpp"
#include "wavecone/polyalg/multi_index.hpp"
#include "wavecone/polyalg/rational.hpp"

namespace wavecone {

/// Homogeneous polynomial with exact rational coefficients.
///
/// Every stored monomial has total degree degree(); zero coefficients are never
/// stored. The zero polynomial keeps its declared degree, so sums of zero
/// entries inside a symbol stay homogeneous of the right order.
class HomPoly {
 public:
  using TermMap = std::map<MultiIndex, Rational, MonomialOrder>;

  HomPoly() = default;
  HomPoly(int nvars, int degree) : nvars_(nvars), degree_(degree) {
    if (nvars < 0 || degree < 0) throw DomainError("HomPoly: negative variable count or degree");
  }

  static HomPoly constant(int nvars, const Rational& c) {
    HomPoly p(nvars, 0);
    p.add_term(MultiIndex::zero(static_cast<std::size_t>(nvars)), c);
    return p;
  }
  static HomPoly variable(int nvars, int i) {
    HomPoly p(nvars, 1);
    p.add_term(MultiIndex::unit(static_cast<std::size_t>(nvars), static_cast<std::size_t>(i)), 1);
    return p;
  }
  static HomPoly monomial(const MultiIndex& alpha, const Rational& c = 1) {
    HomPoly p(static_cast<int>(alpha.size()), alpha.degree());
    p.add_term(alpha, c);
    return p;
  }
  /// Linear form sum_i coeffs[i] * x_i.
  static HomPoly linear_form(std::span<const Rational> coeffs) {
    const int n = static_cast<int>(coeffs.size());
    HomPoly p(n, 1);
    for (int i = 0; i < n; ++i)
      if (coeffs[i] != 0) p.add_term(MultiIndex::unit(coeffs.size(), static_cast<std::size_t>(i)), coeffs[i]);
    return p;
  }

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  Rational coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Accumulates c * x^alpha, pruning a coefficient that cancels to zero.
  void add_term(const MultiIndex& alpha, const Rational& c) {
    if (static_cast<int>(alpha.size()) != nvars_)
      throw DimensionError("HomPoly: monomial has " + std::to_string(alpha.size()) + " variables, expected " +
                           std::to_string(nvars_));
    if (alpha.degree() != degree_)
      throw DimensionError("HomPoly: monomial of degree " + std::to_string(alpha.degree()) +
                           " in a polynomial of degree " + std::to_string(degree_));
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  HomPoly& operator+=(const HomPoly& q) {
    require_same_shape(q, "add");
    for (const auto& [a, c] : q.terms_) add_term(a, c);
    return *this;
  }
  HomPoly& operator-=(const HomPoly& q) {
    require_same_shape(q, "sub");
    for (const auto& [a, c] : q.terms_) add_term(a, -c);
    return *this;
  }
  HomPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [a, c] : terms_) c *= s;
    return *this;
  }

  friend HomPoly operator+(HomPoly p, const HomPoly& q) { return p += q; }
  friend HomPoly operator-(HomPoly p, const HomPoly& q) { return p -= q; }
  friend HomPoly operator*(HomPoly p, const Rational& s) { return p *= s; }
  friend HomPoly operator*(const Rational& s, HomPoly p) { return p *= s; }
  HomPoly operator-() const { return *this * Rational(-1); }

  friend HomPoly operator*(const HomPoly& p, const HomPoly& q) {
    if (p.nvars_ != q.nvars_) throw DimensionError("HomPoly mul: variable count mismatch");
    HomPoly r(p.nvars_, p.degree_ + q.degree_);
    for (const auto& [a, ca] : p.terms_)
      for (const auto& [b, cb] : q.terms_) r.add_term(a + b, ca * cb);
    return r;
  }

  friend bool operator==(const HomPoly& p, const HomPoly& q) {
    return p.nvars_ == q.nvars_ && p.degree_ == q.degree_ && p.terms_ == q.terms_;
  }

  Rational evaluate(std::span<const Rational> xi) const {
    if (static_cast<int>(xi.size()) != nvars_)
      throw DimensionError("HomPoly eval: point has " + std::to_string(xi.size()) + " coordinates, expected " +
                           std::to_string(nvars_));
    Rational total = 0;
    for (const auto& [a, c] : terms_) {
      Rational m = c;
      for (int i = 0; i < nvars_; ++i)
        for (int e = 0; e < a[static_cast<std::size_t>(i)]; ++e) m *= xi[static_cast<std::size_t>(i)];
      total += m;
    }
    return total;
  }

  double evaluate(std::span<const double> x) const {
    double total = 0.0;
    for (const auto& [a, c] : terms_) {
      double m = c.get_d();
      for (int i = 0; i < nvars_; ++i)
        for (int e = 0; e < a[static_cast<std::size_t>(i)]; ++e) m *= x[static_cast<std::size_t>(i)];
      total += m;
    }
    return total;
  }

  /// Partial derivative in variable i; degree drops by one.
  HomPoly derivative(int i) const {
    if (degree_ == 0) throw DomainError("HomPoly: derivative of a degree-0 polynomial");
    if (i < 0 || i >= nvars_) throw DimensionError("HomPoly: derivative variable out of range");
    HomPoly r(nvars_, degree_ - 1);
    for (const auto& [a, c] : terms_) {
      const int e = a[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      r.add_term(a - MultiIndex::unit(a.size(), static_cast<std::size_t>(i)), c * e);
    }
    return r;
  }

  /// Directional derivative sum_i dir[i] * d/dx_i.
  HomPoly directional_derivative(std::span<const Rational> dir) const {
    if (static_cast<int>(dir.size()) != nvars_) throw DimensionError("HomPoly: direction length mismatch");
    HomPoly r(nvars_, degree_ == 0 ? 0 : degree_ - 1);
    if (degree_ == 0) return r;
    for (int i = 0; i < nvars_; ++i)
      if (dir[static_cast<std::size_t>(i)] != 0) r += derivative(i) * dir[static_cast<std::size_t>(i)];
    return r;
  }

  /// Stable text rendering, e.g. "-3/2*d1^2*d3 + d2^3". Variables are 1-based.
  std::string to_string(const std::string& var = "d") const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [a, c] : terms_) {
      Rational mag = abs(c);
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += var + std::to_string(i + 1);
        if (a[i] > 1) mono += "^" + std::to_string(a[i]);
      }
      if (mono.empty()) {
        out += mag.get_str();
      } else if (mag == 1) {
        out += mono;
      } else {
        out += mag.get_str() + "*" + mono;
      }
    }
    return out;
  }

 private:
  void require_same_shape(const HomPoly& q, const char* op) const {
    if (q.nvars_ != nvars_ || q.degree_ != degree_)
      throw DimensionError(std::string("HomPoly ") + op + ": (nvars, degree) = (" + std::to_string(nvars_) + ", " +
                           std::to_string(degree_) + ") vs (" + std::to_string(q.nvars_) + ", " +
                           std::to_string(q.degree_) + ")");
  }

  int nvars_ = 0;
  int degree_ = 0;
  TermMap terms_;
};

}  // namespace wavecone
