#include <fstream>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "wavecone/dsl.hpp"
#include "wavecone/operator.hpp"

using namespace wavecone;

namespace {

OperatorSymbol parse(const std::string& text) { return dsl::parse_operator({text, "<test>"}); }

dsl::ParseError parse_error(const std::string& text) {
  try {
    dsl::parse_operators({text, "t.op"});
  } catch (const dsl::ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << text);
  throw;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

HomPoly x(int n, int i) { return HomPoly::variable(n, i); }

}  // namespace

TEST_CASE("parse a first-order operator", "[dsl]") {
  const auto a = parse("operator div2 { vars=2; from=2; order=1; symbol=[[d1, d2]]; }");
  CHECK(a.name() == "div2");
  CHECK(a.dim_to() == 1);
  CHECK(a.dim_from() == 2);
  CHECK(a.order() == 1);
  CHECK(a.symbol()(0, 0) == x(2, 0));
  CHECK(a.symbol()(0, 1) == x(2, 1));
  const auto coeffs = a.coefficients();
  CHECK(coeffs.size() == 2);
  CHECK(coeffs.at(MultiIndex{1, 0})(0, 0) == 1);
}

TEST_CASE("coefficient and monomial syntax", "[dsl]") {
  const auto a = parse(R"(
    # comment line
    operator t {            # trailing comment
      order = 2; vars = 3;
      symbol = [[-3/2*d1^2 + 2 d2 d3, d1d2 - d3*d3, 0]];
    })");
  HomPoly e(3, 2);
  e.add_term(MultiIndex{2, 0, 0}, Rational(-3, 2));
  e.add_term(MultiIndex{0, 1, 1}, 2);
  CHECK(a.symbol()(0, 0) == e);
  CHECK(a.symbol()(0, 1) == x(3, 0) * x(3, 1) - x(3, 2) * x(3, 2));
  CHECK(a.symbol()(0, 2).is_zero());
}

TEST_CASE("homogeneity errors name the entry and monomial", "[dsl]") {
  const auto e = parse_error("operator bad { vars=1; order=1;\n  symbol=[[d1 + 1]]; }");
  CHECK(e.line() == 2);
  CHECK(e.column() == 17);
  const std::string what = e.what();
  CHECK(what.find("entry (1,1)") != std::string::npos);
  CHECK(what.find("'1'") != std::string::npos);
}

TEST_CASE("syntax errors carry position and expected tokens", "[dsl]") {
  auto e = parse_error("operator x { vars=2; order=1; symbol=[[d1, d2]] }");
  CHECK(e.line() == 1);
  CHECK(e.column() == 49);
  CHECK(e.expected().count("';'"));

  e = parse_error("operator x {\n  vars 2; }");
  CHECK(e.line() == 2);
  CHECK(e.column() == 8);
  CHECK(e.expected().count("'='"));

  e = parse_error("operator x { speed=2; }");
  CHECK(e.expected().count("'vars'"));
  CHECK(e.expected().count("'symbol'"));

  e = parse_error("operator x { vars=2; order=1; symbol=[[d1 +]]; }");
  CHECK(e.expected().count("integer"));

  CHECK_THROWS_AS(parse("operator x { vars=2; order=1; symbol=[[d1, @]]; }"), dsl::ParseError);
}

TEST_CASE("shape validation", "[dsl]") {
  CHECK_THROWS_WITH(parse("operator x { vars=2; from=3; order=1; symbol=[[d1, d2]]; }"),
                    Catch::Matchers::ContainsSubstring("from=3"));
  CHECK_THROWS_WITH(parse("operator x { vars=2; order=1; symbol=[[d1, d2], [d1]]; }"),
                    Catch::Matchers::ContainsSubstring("row 2"));
  CHECK_THROWS_WITH(parse("operator x { vars=2; order=1; symbol=[[d3]]; }"),
                    Catch::Matchers::ContainsSubstring("out of range"));
  CHECK_THROWS_WITH(parse("operator x { vars=2; symbol=[[d1]]; }"), Catch::Matchers::ContainsSubstring("'order'"));
  CHECK_THROWS_WITH(parse("operator x { vars=2; vars=2; order=1; symbol=[[d1]]; }"),
                    Catch::Matchers::ContainsSubstring("duplicate"));
}

TEST_CASE("appendix data file", "[dsl]") {
  const auto ops = dsl::parse_operators({read_file(WAVECONE_SOURCE_DIR "/data/operators/appendix.op"), "appendix.op"});
  REQUIRE(ops.size() == 3);
  const auto& a = ops[0];
  CHECK(a.dim_to() == 3);
  CHECK(a.dim_from() == 7);
  const int n = 3;
  const HomPoly z(n, 1);
  const std::vector<std::vector<HomPoly>> expect = {
      {x(n, 0), x(n, 1), x(n, 2), z, z, z, z},
      {z, z, z, x(n, 0), x(n, 1), x(n, 2), z},
      {z, x(n, 0), z, x(n, 1), z, z, x(n, 2)}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 7; ++j) CHECK(a.symbol()(i, j) == expect[i][j]);
  // First column of B1 as printed: (-p5-p7, p4-p10, p2+p9, ...).
  const auto& b1 = ops[1];
  CHECK(b1.symbol()(0, 0) == -(x(n, 0) * x(n, 1) * x(n, 2)) - x(n, 1) * x(n, 1) * x(n, 1));
  CHECK(b1.symbol()(1, 0) == x(n, 0) * x(n, 1) * x(n, 1) - x(n, 2) * x(n, 2) * x(n, 2));
  CHECK(b1.symbol()(3, 0).to_string() == "-d1^2*d2 - d1^2*d3 - d1*d2*d3 - d1*d3^2 - 2*d2^2*d3 - d3^3");
  CHECK(ops[0] == dsl::builtin("appendix_A").A);
  CHECK(ops[2] == dsl::builtin("appendix_B2").A);
}

TEST_CASE("serialize round trip", "[dsl]") {
  std::vector<OperatorSymbol> corpus =
      dsl::parse_operators({read_file(WAVECONE_SOURCE_DIR "/data/operators/appendix.op"), "appendix.op"});
  for (const auto& d : dsl::builtin_catalogue())
    for (int n : {2, 3}) {
      const auto b = dsl::builtin(d.name, {n, 2, 2, 2});
      corpus.push_back(b.A);
      if (b.potential) corpus.push_back(b.potential->B);
    }
  for (const auto& op : corpus) {
    INFO(op.name());
    OperatorSymbol back = dsl::parse_operator({dsl::serialize(op), "<roundtrip>"});
    CHECK(back == op);
    CHECK(dsl::serialize(back) == dsl::serialize(op));
    CHECK(dsl::operator_from_json(dsl::to_json(op)) == op);
  }
}

TEST_CASE("json export mirrors coefficients", "[dsl]") {
  const auto a = parse("operator div2 { vars=2; order=1; symbol=[[d1, -1/2*d2]]; }");
  const auto j = dsl::to_json(a);
  CHECK(j["vars"] == 2);
  CHECK(j["order"] == 1);
  CHECK(j["coeffs"]["0,1"][0][1] == "-1/2");
  CHECK(j["coeffs"]["1,0"][0][0] == "1");
}

TEST_CASE("standalone polynomials", "[dsl]") {
  const HomPoly f = dsl::parse_polynomial("v1*v4 - v2*v3", 4);
  CHECK(f.degree() == 2);
  CHECK(f.to_string("v") == "v1*v4 - v2*v3");
  CHECK_THROWS_AS(dsl::parse_polynomial("v1*v2 + v3", 4), dsl::ParseError);
  CHECK_THROWS_AS(dsl::parse_polynomial("v5", 4), dsl::ParseError);
  CHECK(dsl::parse_polynomial("0", 3).is_zero());
}

TEST_CASE("builtins", "[dsl]") {
  SECTION("symmetric gradient pair") {
    const auto b = dsl::builtin("symgrad", {2});
    CHECK(b.A.dim_from() == 3);
    CHECK(b.A.dim_to() == 1);
    CHECK(b.A.symbol()(0, 0) == x(2, 1) * x(2, 1));
    CHECK(b.A.symbol()(0, 1) == x(2, 0) * x(2, 1) * Rational(-2));
    CHECK(b.A.symbol()(0, 2) == x(2, 0) * x(2, 0));
    REQUIRE(b.potential);
    CHECK(b.potential->B.symbol()(1, 0) == x(2, 1) * Rational(1, 2));
    CHECK(dsl::builtin("symgrad", {3}).A.dim_to() == 6);
  }
  SECTION("appendix potential columns") {
    const auto b1 = dsl::builtin("appendix_B1").A;
    CHECK(b1.dim_to() == 7);
    CHECK(b1.order() == 3);
    CHECK(b1.symbol()(0, 3).is_zero());
    CHECK(b1.symbol()(4, 5).is_zero());
    CHECK(dsl::builtin("appendix_A").potential->B == b1);
  }
  SECTION("divcurl") {
    const auto b = dsl::builtin("divcurl", {2});
    CHECK(b.A.dim_from() == 4);
    REQUIRE(b.potential);
    CHECK(b.potential->B.order() == 1);
    CHECK((b.A.symbol() * b.potential->B.symbol()).is_zero());
  }
  SECTION("errors") {
    CHECK_THROWS_AS(dsl::builtin("nope"), DomainError);
    CHECK_THROWS_AS(dsl::builtin("div", {1}), DomainError);
    CHECK_THROWS_AS(dsl::builtin("grad", {2, 0, 1}), DomainError);
  }
  SECTION("attached potentials annihilate") {
    for (const auto& d : dsl::builtin_catalogue())
      for (int n : {2, 3}) {
        const auto b = dsl::builtin(d.name, {n, 2, 2, 2});
        if (b.potential) CHECK((b.A.symbol() * b.potential->B.symbol()).is_zero());
      }
  }
}
