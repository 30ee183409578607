#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavecone/dsl/lexer.hpp"
#include "wavecone/operator/operator_symbol.hpp"
#include "wavecone/polyalg/hom_poly.hpp"

namespace wavecone::dsl {

struct OperatorSource {
  std::string text;
  std::string file = "<input>";
};

namespace detail {

struct TermAst {
  Rational coeff = 1;
  std::map<int, int> powers;  // 1-based variable -> exponent
  SourceSpan span;
  int degree() const {
    int d = 0;
    for (const auto& [v, e] : powers) d += e;
    return d;
  }
  std::string monomial_text(char var) const {
    std::string s = coeff.get_str();
    for (const auto& [v, e] : powers) s += std::string("*") + var + std::to_string(v) + (e > 1 ? "^" + std::to_string(e) : "");
    return s;
  }
};

struct PolyAst {
  std::vector<TermAst> terms;
  SourceSpan span;
};

class Parser {
 public:
  Parser(std::string_view text, std::string file, char var) : file_(std::move(file)), var_(var) {
    tokens_ = tokenize(text, file_);
  }

  const Token& peek() const { return tokens_[pos_]; }
  bool at_symbol(std::string_view s) const { return peek().kind == TokenKind::symbol && peek().text == s; }
  bool at_end() const { return peek().kind == TokenKind::end; }
  Token take() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] void fail(const std::string& message, std::set<std::string> expected = {}) const {
    throw ParseError(file_, peek().span, message, std::move(expected));
  }
  [[noreturn]] void fail_at(SourceSpan at, const std::string& message) const { throw ParseError(file_, at, message); }

  Token expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail("unexpected " + describe(peek()), {"'" + std::string(s) + "'"});
    return take();
  }
  Token expect_identifier(std::set<std::string> allowed = {}) {
    if (peek().kind != TokenKind::identifier || (!allowed.empty() && !allowed.count(peek().text))) {
      std::set<std::string> exp;
      if (allowed.empty()) exp.insert("identifier");
      for (const auto& a : allowed) exp.insert("'" + a + "'");
      fail("unexpected " + describe(peek()), exp);
    }
    return take();
  }
  long expect_integer() {
    if (peek().kind != TokenKind::integer) fail("unexpected " + describe(peek()), {"integer"});
    const Token t = take();
    if (t.text.size() > 9) fail_at(t.span, "integer literal '" + t.text + "' is too large");
    return std::stol(t.text);
  }

  /// poly := ["-"] term (("+"|"-") term)*
  PolyAst parse_poly() {
    PolyAst p;
    p.span = peek().span;
    Rational sign = 1;
    if (at_symbol("-")) {
      take();
      sign = -1;
    }
    p.terms.push_back(parse_term(sign));
    while (at_symbol("+") || at_symbol("-")) {
      sign = take().text == "-" ? Rational(-1) : Rational(1);
      p.terms.push_back(parse_term(sign));
    }
    return p;
  }

  /// Turns the syntax tree into a homogeneous polynomial of the given degree
  /// (inferred from the first nonzero term when degree is empty).
  HomPoly build(const PolyAst& p, int nvars, std::optional<int> degree, const std::string& where) const {
    if (!degree) {
      for (const auto& t : p.terms)
        if (t.coeff != 0) {
          degree = t.degree();
          break;
        }
      if (!degree) degree = 0;
    }
    HomPoly out(nvars, *degree);
    for (const auto& t : p.terms) {
      if (t.coeff == 0) continue;
      std::vector<int> e(static_cast<std::size_t>(nvars), 0);
      for (const auto& [v, k] : t.powers) {
        if (v < 1 || v > nvars)
          fail_at(t.span, std::string("variable ") + var_ + std::to_string(v) + " out of range (vars=" +
                              std::to_string(nvars) + ")" + where);
        e[static_cast<std::size_t>(v - 1)] = k;
      }
      if (t.degree() != *degree)
        fail_at(t.span, "inhomogeneous" + where + ": monomial '" + t.monomial_text(var_) + "' has degree " +
                            std::to_string(t.degree()) + ", expected " + std::to_string(*degree));
      out.add_term(MultiIndex(std::move(e)), t.coeff);
    }
    return out;
  }

  const std::string& file() const { return file_; }

 private:
  bool at_factor() const {
    return peek().kind == TokenKind::identifier && !peek().text.empty() && peek().text[0] == var_;
  }

  /// term := [coeff ["*"]] factor*, factors optionally separated by "*".
  TermAst parse_term(const Rational& sign) {
    TermAst t;
    t.span = peek().span;
    bool any = false;
    if (peek().kind == TokenKind::integer) {
      const long num = expect_integer();
      long den = 1;
      if (at_symbol("/")) {
        take();
        const SourceSpan at = peek().span;
        den = expect_integer();
        if (den == 0) fail_at(at, "zero denominator");
      }
      t.coeff = Rational(num, den);
      t.coeff.canonicalize();
      any = true;
      if (at_symbol("*")) {
        take();
        if (!at_factor()) fail("unexpected " + describe(peek()), {std::string(1, var_) + "<index>"});
      }
    }
    while (at_factor()) {
      parse_factor(t);
      any = true;
      if (at_symbol("*")) {
        take();
        if (!at_factor()) fail("unexpected " + describe(peek()), {std::string(1, var_) + "<index>"});
      }
    }
    if (!any) fail("unexpected " + describe(peek()), {"integer", std::string(1, var_) + "<index>"});
    t.coeff *= sign;
    return t;
  }

  /// factor := d INT ["^" INT]; adjacent factors such as "d1d2" are also accepted.
  void parse_factor(TermAst& t) {
    const Token id = take();
    std::vector<int> vars;
    std::size_t i = 0;
    const std::string& s = id.text;
    if (s.size() == 1) {
      vars.push_back(static_cast<int>(expect_integer()));
    } else {
      while (i < s.size()) {
        if (s[i] != var_) fail_at(id.span, "malformed factor '" + s + "'");
        std::size_t j = i + 1;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i + 1) fail_at(id.span, "malformed factor '" + s + "'");
        vars.push_back(std::stoi(s.substr(i + 1, j - i - 1)));
        i = j;
      }
    }
    for (std::size_t k = 0; k + 1 < vars.size(); ++k) t.powers[vars[k]] += 1;
    int exponent = 1;
    if (at_symbol("^")) {
      take();
      exponent = static_cast<int>(expect_integer());
    }
    t.powers[vars.back()] += exponent;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string file_;
  char var_;
};

inline std::string entry_label(std::size_t i, std::size_t j) {
  return " in entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

inline OperatorSymbol parse_one(Parser& p) {
  p.expect_identifier({"operator"});
  const Token name = p.expect_identifier();
  p.expect_symbol("{");
  std::map<std::string, std::pair<long, SourceSpan>> ints;
  std::optional<std::vector<std::vector<PolyAst>>> matrix;
  SourceSpan matrix_span;
  const std::set<std::string> fields = {"vars", "from", "order", "symbol"};
  while (!p.at_symbol("}")) {
    if (p.peek().kind != TokenKind::identifier || !fields.count(p.peek().text)) {
      std::set<std::string> exp{"'}'"};
      for (const auto& f : fields) exp.insert("'" + f + "'");
      p.fail("unexpected " + describe(p.peek()), exp);
    }
    const Token key = p.take();
    if (ints.count(key.text) || (key.text == "symbol" && matrix)) p.fail_at(key.span, "duplicate field '" + key.text + "'");
    p.expect_symbol("=");
    if (key.text == "symbol") {
      matrix_span = p.peek().span;
      std::vector<std::vector<PolyAst>> rows;
      p.expect_symbol("[");
      do {
        std::vector<PolyAst> row;
        p.expect_symbol("[");
        row.push_back(p.parse_poly());
        while (p.at_symbol(",")) {
          p.take();
          row.push_back(p.parse_poly());
        }
        if (!p.at_symbol("]")) p.fail("unexpected " + describe(p.peek()), {"','", "']'", "'+'", "'-'"});
        p.take();
        rows.push_back(std::move(row));
      } while (p.at_symbol(",") && (p.take(), true));
      if (!p.at_symbol("]")) p.fail("unexpected " + describe(p.peek()), {"','", "']'"});
      p.take();
      matrix = std::move(rows);
    } else {
      const SourceSpan at = p.peek().span;
      ints[key.text] = {p.expect_integer(), at};
    }
    p.expect_symbol(";");
  }
  const Token close = p.expect_symbol("}");
  for (const char* req : {"vars", "order"})
    if (!ints.count(req)) p.fail_at(close.span, "operator '" + name.text + "' is missing field '" + req + "'");
  if (!matrix) p.fail_at(close.span, "operator '" + name.text + "' is missing field 'symbol'");
  const long nvars = ints["vars"].first;
  const long order = ints["order"].first;
  if (nvars < 1) p.fail_at(ints["vars"].second, "vars must be >= 1");
  if (order < 1) p.fail_at(ints["order"].second, "order must be >= 1");
  const std::size_t rows = matrix->size();
  const std::size_t cols = matrix->front().size();
  for (std::size_t i = 0; i < rows; ++i)
    if ((*matrix)[i].size() != cols)
      p.fail_at((*matrix)[i].front().span, "row " + std::to_string(i + 1) + " has " + std::to_string((*matrix)[i].size()) +
                                               " entries, row 1 has " + std::to_string(cols));
  if (ints.count("from") && static_cast<std::size_t>(ints["from"].first) != cols)
    p.fail_at(ints["from"].second, "from=" + std::to_string(ints["from"].first) + " but the symbol has " +
                                       std::to_string(cols) + " columns");
  PolyMatrix sym(rows, cols, static_cast<int>(nvars), static_cast<int>(order));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      sym.set(i, j, p.build((*matrix)[i][j], static_cast<int>(nvars), static_cast<int>(order), entry_label(i, j)));
  return OperatorSymbol(name.text, std::move(sym));
}

}  // namespace detail

/// file := operator+
inline std::vector<OperatorSymbol> parse_operators(const OperatorSource& src) {
  detail::Parser p(src.text, src.file, 'd');
  std::vector<OperatorSymbol> out;
  do {
    out.push_back(detail::parse_one(p));
  } while (!p.at_end());
  return out;
}

/// Parses a source that must contain exactly one operator.
inline OperatorSymbol parse_operator(const OperatorSource& src) {
  auto ops = parse_operators(src);
  if (ops.size() != 1)
    throw ParseError(src.file, {}, "expected exactly one operator, found " + std::to_string(ops.size()));
  return ops.front();
}

/// Parses a standalone homogeneous polynomial such as "v1*v4 - v2*v3".
inline HomPoly parse_polynomial(std::string_view text, int nvars, char var = 'v',
                                std::optional<int> degree = std::nullopt) {
  detail::Parser p(text, "<polynomial>", var);
  const auto ast = p.parse_poly();
  if (!p.at_end()) p.fail("unexpected " + describe(p.peek()), {"'+'", "'-'", "end of input"});
  return p.build(ast, nvars, degree, "");
}

}  // namespace wavecone::dsl
