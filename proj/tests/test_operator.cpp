#include <catch_amalgamated.hpp>

#include "wavecone/dsl.hpp"
#include "wavecone/operator.hpp"

using namespace wavecone;

namespace {

RationalVector rv(std::initializer_list<long> xs) { return to_rational_vector(std::vector<long>(xs)); }

OperatorSymbol op(const std::string& name, dsl::BuiltinParams p = {}) { return dsl::builtin(name, p).A; }

OperatorSymbol parse(const std::string& text) { return dsl::parse_operator({text, "<test>"}); }

const OperatorSymbol& gradient2() {
  static const OperatorSymbol g = dsl::builtin("curl", {2}).potential->B;
  return g;
}

}  // namespace

TEST_CASE("pointwise rank", "[operator]") {
  CHECK(symbol_rank_at(gradient2(), rv({1, 1})) == 1);
  CHECK(symbol_rank_at(op("appendix_A"), rv({1, 0, 0})) == 3);
  const auto sc = op("separate_convexity", {2});
  CHECK(symbol_rank_at(sc, rv({1, 0})) == 1);
  CHECK(symbol_rank_at(sc, rv({1, 1})) == 2);
  CHECK_THROWS_AS(symbol_rank_at(sc, rv({0, 0})), DomainError);
  CHECK_THROWS_AS(symbol_rank_at(sc, rv({1, 0, 0})), DimensionError);
}

TEST_CASE("constant rank certification", "[operator]") {
  SECTION("divergence on R^3") {
    const auto rep = constant_rank_check(op("div", {3}), 50, 1);
    CHECK(rep.generic_rank == 1);
    CHECK(rep.verdict == RankVerdict::constant_rank_verified_probabilistic);
  }
  SECTION("appendix operator") {
    const auto rep = constant_rank_check(op("appendix_A"), 200, 0);
    CHECK(rep.generic_rank == 3);
    CHECK(rep.tail_vanishes);
    CHECK(rep.rank_drop_points.empty());
    CHECK(rep.min_sampled_cr > 0);
    CHECK(rep.verdict == RankVerdict::constant_rank_verified_probabilistic);
  }
  SECTION("separate convexity") {
    const auto rep = constant_rank_check(op("separate_convexity", {2}), 50, 0);
    CHECK(rep.generic_rank == 2);
    CHECK(rep.verdict == RankVerdict::rank_not_constant);
    CHECK(std::find(rep.rank_drop_points.begin(), rep.rank_drop_points.end(), rv({1, 0})) != rep.rank_drop_points.end());
  }
  SECTION("sample budget below dim_to is rejected") {
    CHECK_THROWS_AS(constant_rank_check(op("appendix_A"), 2, 0), PreconditionError);
  }
}

TEST_CASE("tail vanishing bounds the rank everywhere", "[operator][property]") {
  for (const auto& a : {op("appendix_A"), op("div", {3}), op("curl", {3}), op("symgrad", {2}), op("divcurl", {2})}) {
    const auto rep = constant_rank_check(a, 100, 7);
    REQUIRE(rep.tail_vanishes);
    Rng rng(99);
    for (int k = 0; k < 1000; ++k)
      CHECK(symbol_rank_at(a, random_rational_frequency(rng, static_cast<std::size_t>(a.n()))) <= rep.generic_rank);
  }
}

TEST_CASE("builtin constant-rank flags hold", "[operator][dsl]") {
  for (const auto& desc : dsl::builtin_catalogue()) {
    for (int n : {2, 3}) {
      const auto b = dsl::builtin(desc.name, {n, 2, 1, 2});
      const auto rep = constant_rank_check(b.A, 60, 3);
      INFO(desc.name << " n=" << n);
      if (b.constant_rank) CHECK(rep.verdict == RankVerdict::constant_rank_verified_probabilistic);
      else CHECK(rep.verdict == RankVerdict::rank_not_constant);
    }
  }
}

TEST_CASE("wave cone span", "[operator]") {
  const auto d = wave_cone_span(op("div", {2}), 20, 0);
  CHECK(d.spans_V);
  CHECK(d.span_basis.size() == 2);
  const auto g = wave_cone_span(gradient2(), 20, 0);
  CHECK(g.span_basis.empty());
  CHECK_FALSE(g.spans_V);
  for (int n : {2, 3}) {
    const auto a = op("divcurl", {n});
    const auto w = wave_cone_span(a, 20, 0);
    CHECK(w.spans_V);
    for (std::size_t i = 0; i < w.span_basis.size(); ++i) CHECK(is_zero_vector(a.at(w.witnesses[i]) * w.span_basis[i]));
  }
}

TEST_CASE("cocancellation", "[operator]") {
  const auto div3 = cocanceling_check(op("div", {3}));
  CHECK(div3.cocanceling);
  const auto partial = parse("operator b { vars=2; order=1; symbol=[[d1, 0]]; }");
  const auto rep = cocanceling_check(partial);
  CHECK_FALSE(rep.cocanceling);
  REQUIRE(rep.invariant_basis.size() == 1);
  CHECK(rep.invariant_basis[0] == rv({0, 1}));
  CHECK(cocanceling_check(op("appendix_B1")).cocanceling);
  CHECK(cocanceling_check(op("appendix_B2")).cocanceling);
}

TEST_CASE("cocancellation agrees with sampled kernels", "[operator][property]") {
  std::vector<OperatorSymbol> ops = {op("div", {3}), op("appendix_B1"), op("curl", {2}), op("separate_convexity", {3}),
                                     parse("operator b { vars=3; order=2; symbol=[[d1^2, 0, d1*d2], [d2*d3, 0, 0]]; }")};
  for (const auto& b : ops) {
    const auto rep = cocanceling_check(b);
    std::vector<RationalVector> rows;
    for (const auto& xi : sample_frequencies(static_cast<std::size_t>(b.n()), 50, 5)) {
      const auto m = b.at(xi);
      for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
      for (const auto& v : rep.invariant_basis) CHECK(is_zero_vector(m * v));
    }
    CHECK(rational_nullspace(RationalMatrix::from_rows(rows)).basis.size() == rep.invariant_basis.size());
  }
}

TEST_CASE("restriction to a complement of I_B is cocanceling", "[operator]") {
  const auto b = parse("operator b { vars=3; order=2; symbol=[[d1^2, 0, d1*d2, 0], [d2*d3, 0, 0, d3^2]]; }");
  const auto rep = cocanceling_check(b);
  REQUIRE(rep.invariant_basis.size() == 1);
  const auto j = orthogonal_complement(rep.invariant_basis, b.dim_from());
  CHECK(cocanceling_check(restrict_domain(b, j)).cocanceling);
}
