#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "wavecone/dsl.hpp"
#include "wavecone/nulllag.hpp"
#include "wavecone/spectral.hpp"

using namespace wavecone;

namespace {

dsl::Builtin bi(const std::string& name, dsl::BuiltinParams p = {}) { return dsl::builtin(name, p); }

TorusGrid grid_for(int n) { return TorusGrid::cube(n, n == 2 ? 64 : 16); }

HomPoly det2x2() { return dsl::parse_polynomial("v1*v4 - v2*v3", 4); }

}  // namespace

TEST_CASE("grid layout and transforms", "[spectral]") {
  CHECK_THROWS_AS(TorusGrid::cube(2, 12), DomainError);
  CHECK_THROWS_AS(TorusGrid::cube(2, 4), DomainError);
  const TorusGrid g(2, {8, 16});
  CHECK(g.total() == 128);
  CHECK(g.frequency(g.index_of({-3, 5})) == std::vector<int>{-3, 5});
  CHECK(g.is_nyquist(g.index_of({4, 0})));

  // d/dx1 of sin(2 pi x1) is 2 pi cos(2 pi x1)
  PeriodicField f(g, 1);
  for (std::size_t i = 0; i < g.total(); ++i) f.values[0][i] = std::sin(2 * std::numbers::pi * g.point(i)[0]);
  PolyMatrix d1(1, 1, 2, 1);
  d1.set(0, 0, HomPoly::variable(2, 0));
  const auto df = apply_operator(NumericSymbol(d1), f);
  double err = 0;
  for (std::size_t i = 0; i < g.total(); ++i)
    err = std::max(err, std::abs(df.values[0][i] - 2 * std::numbers::pi * std::cos(2 * std::numbers::pi * g.point(i)[0])));
  CHECK(err < 1e-12);
}

TEST_CASE("A-free synthesis", "[spectral]") {
  SECTION("divergence free in 2d") {
    const auto a = bi("div").A;
    const auto v = synthesize_A_free(a, grid_for(2), 3, {0.5, -1.0});
    CHECK(spectral_residual(a, v) <= 1e-10);
    double m0 = 0;
    for (double x : v.values[0]) m0 += x;
    CHECK(m0 / static_cast<double>(v.grid.total()) == Catch::Approx(0.5).margin(1e-12));
  }
  SECTION("curl free fields are gradients") {
    const auto a = bi("curl").A;
    CHECK(spectral_residual(a, synthesize_A_free(a, grid_for(2), 5)) <= 1e-10);
    // a random field is not curl free
    CHECK(spectral_residual(a, random_periodic_field(grid_for(2), 2, 5)) > 1e-3);
  }
  SECTION("appendix operator on 16^3") {
    const auto a = bi("appendix_A").A;
    CHECK(spectral_residual(a, synthesize_A_free(a, grid_for(3), 11)) <= 1e-10);
  }
  SECTION("deterministic in the seed") {
    const auto a = bi("div").A;
    CHECK(synthesize_A_free(a, grid_for(2), 9).values == synthesize_A_free(a, grid_for(2), 9).values);
  }
  SECTION("grid mismatch") { CHECK_THROWS_AS(synthesize_A_free(bi("div").A, grid_for(3), 1), DimensionError); }
}

TEST_CASE("Hodge decomposition across builtins", "[spectral]") {
  struct Case {
    std::string name;
    dsl::BuiltinParams p;
  };
  const std::vector<Case> cases = {
      {"div", {2}},     {"div", {3}},     {"curl", {2}},    {"curl", {3}},          {"symgrad", {2}},
      {"symgrad", {3}}, {"divcurl", {2}}, {"divcurl", {3}}, {"hessian", {2}},       {"grad", {2, 2, 1}},
      {"appendix_A", {}}};
  for (const auto& c : cases) {
    const auto b = bi(c.name, c.p);
    const int n = b.A.n();
    const auto v = random_periodic_field(grid_for(n), b.A.dim_from(), 17);
    const auto h = hodge_decompose(b.A, *b.potential, v);
    INFO(b.A.name());
    CHECK(h.relative_residual <= 1e-8);
    CHECK(h.orthogonality <= 1e-8);
  }
}

TEST_CASE("Hodge decomposition identifies the parts", "[spectral]") {
  const auto b = bi("divcurl", {2});
  const auto v = synthesize_A_free(b.A, grid_for(2), 4);
  const auto h = hodge_decompose(b.A, *b.potential, v);
  CHECK(h.Astar_part.l2_norm() <= 1e-8 * v.l2_norm());

  // v = A* w has no B u part
  const NumericSymbol at(b.A.symbol().transpose());
  const auto w = random_periodic_field(grid_for(2), b.A.dim_to(), 8);
  const auto aw = apply_operator(at, w);
  const auto h2 = hodge_decompose(b.A, *b.potential, aw);
  CHECK(h2.Bu_part.l2_norm() <= 1e-8 * aw.l2_norm());
}

TEST_CASE("Hodge decomposition rejects a non-exact pair", "[spectral]") {
  // curl paired with the perp-gradient: BB* + A*A drops rank.
  const auto v = random_periodic_field(grid_for(2), 2, 1);
  try {
    hodge_decompose(bi("curl").A, PotentialSymbol{bi("div").potential->B, Provenance::user_supplied}, v);
    FAIL("expected an ellipticity failure");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("xi = (") != std::string::npos);
  }
}

TEST_CASE("quasiaffinity quadrature", "[spectral]") {
  const std::vector<double> z = {0.3, -1.2, 0.7, 2.0};
  SECTION("det on gradients") {
    const auto b = bi("grad", {2, 2, 1});
    for (std::uint64_t s = 0; s < 3; ++s) CHECK(periodic_quasiaffinity_check(det2x2(), b.A, z, grid_for(2), s) <= 1e-10);
  }
  SECTION("E . B for div-curl") {
    const auto b = bi("divcurl", {2});
    const auto f = dsl::parse_polynomial("v1*v3 + v2*v4", 4);
    CHECK(periodic_quasiaffinity_check(f, b.A, z, grid_for(2), 2) <= 1e-10);
  }
  SECTION("|v|^2 is not quasiaffine") {
    const auto b = bi("div");
    const auto f = dsl::parse_polynomial("v1^2 + v2^2", 2);
    CHECK(periodic_quasiaffinity_check(f, b.A, {0, 0}, grid_for(2), 2) >= 1e-2);
  }
  SECTION("emitted null Lagrangians, n = 3") {
    const auto b = bi("divcurl", {3});
    const auto basis = solve_null_lagrangians(*b.potential, 2);
    REQUIRE(!basis.elements.empty());
    const std::vector<double> z6 = {0.1, 0.2, -0.3, 1, 0, -1};
    for (const auto& el : basis.elements)
      for (std::uint64_t s = 0; s < 2; ++s) CHECK(periodic_quasiaffinity_check(el.F, b.A, z6, grid_for(3), s) <= 1e-6);
  }
}

TEST_CASE("zero mean of null Lagrangians on compact support", "[spectral]") {
  const auto g = bi("grad", {2, 2, 1});
  CHECK(zero_mean_check(det2x2(), *g.potential, grid_for(2), 1) <= 1e-6);
  const auto dc = bi("divcurl", {2});
  for (const auto& el : solve_null_lagrangians(*dc.potential, 2).elements)
    CHECK(zero_mean_check(el.F, *dc.potential, grid_for(2), 2) <= 1e-6);
  const auto sq = dsl::parse_polynomial("v1^2 + v2^2 + v3^2 + v4^2", 4);
  CHECK(zero_mean_check(sq, *g.potential, grid_for(2), 1) == Catch::Approx(1.0));
}

TEST_CASE("quantitative estimate statistic", "[spectral]") {
  const auto g = bi("grad", {2, 2, 1});
  const auto grid = grid_for(2);
  const auto phi = random_bump_field(grid, 1, 99, 1);
  const auto u1 = random_bump_field(grid, 2, 1);
  const auto u2 = random_bump_field(grid, 2, 2);
  CHECK(quantitative_estimate_check(det2x2(), *g.potential, u1, u1, phi, 2, 2) == 0.0);
  CHECK_THROWS_AS(quantitative_estimate_check(det2x2(), *g.potential, u1, u2, phi, 2, 3), DomainError);
  const double r = quantitative_estimate_check(det2x2(), *g.potential, u1, u2, phi, 2, 2);
  CHECK(std::isfinite(r));
  CHECK(r > 0);

  // u2 -> u1: the ratio stays bounded as both sides vanish
  std::vector<double> ratios;
  for (double t : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
    PeriodicField up = u1;
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t i = 0; i < grid.total(); ++i) up.values[c][i] += t * u2.values[c][i];
    ratios.push_back(quantitative_estimate_check(det2x2(), *g.potential, u1, up, phi, 2, 2));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  CHECK(*hi / *lo < 10);
}

TEST_CASE("Hardy proxy", "[spectral]") {
  // Bump of width 1/8 so that the largest scales see it as nearly a point mass.
  const auto grid = TorusGrid::cube(2, 128);
  PeriodicField bump(grid, 1);
  for (std::size_t i = 0; i < grid.total(); ++i) {
    auto x = grid.point(i);
    for (auto& c : x) c = 0.5 + 4 * (c - 0.5);
    bump.values[0][i] = box_bump(x);
  }
  PolyMatrix d1(1, 1, 2, 1);
  d1.set(0, 0, HomPoly::variable(2, 0));
  const auto dbump = apply_operator(NumericSymbol(d1), bump);

  std::vector<double> b, z;
  for (double top : {0.25, 0.5, 1.0}) {
    const auto sc = dyadic_scales(grid, top);
    b.push_back(hardy_norm_proxy(bump, sc));
    z.push_back(hardy_norm_proxy(dbump, sc));
  }
  // nonzero mean: steady additive growth per doubling (logarithmic in the largest scale)
  CHECK(b[2] > 1.15 * b[1]);
  CHECK((b[2] - b[1]) / (b[1] - b[0]) == Catch::Approx(1.0).epsilon(0.2));
  // zero mean: stable
  CHECK(z[2] < 1.1 * z[1]);
  CHECK_THROWS_AS(hardy_norm_proxy(bump, {0.001}), DomainError);
}

TEST_CASE("concentration profile", "[spectral]") {
  const auto rep = concentration_demo(128, 0.125, 2);
  REQUIRE(rep.steps.size() == 3);
  CHECK(rep.l1_spread < 2);
  for (std::size_t i = 1; i < rep.steps.size(); ++i) CHECK(rep.steps[i].ratio > rep.steps[i - 1].ratio);
}

TEST_CASE("binary dump with sidecar", "[spectral]") {
  const auto grid = TorusGrid::cube(2, 8);
  PeriodicField f(grid, 2);
  f.values[1][3] = 1.5;
  const auto path = (std::filesystem::temp_directory_path() / "wavecone_dump_test.bin").string();
  dump_field(f, path, "test");
  CHECK(std::filesystem::file_size(path) == 2 * 64 * 8);
  std::ifstream in(path, std::ios::binary);
  in.seekg((64 + 3) * 8);
  double x = 0;
  in.read(reinterpret_cast<char*>(&x), 8);
  CHECK(x == 1.5);
  std::ifstream side(path + ".json");
  const auto meta = nlohmann::json::parse(side);
  CHECK(meta["components"] == 2);
  CHECK(meta["schema"] == 1);
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".json");
}

TEST_CASE("experiment record json", "[spectral]") {
  const ExperimentRecord r{"hodge", "div2", {64, 64}, 3, 1e-12, 1e-8, true};
  const auto j = to_json(r);
  CHECK(j.dump() ==
        R"({"experiment":"hodge","operator":"div2","grid":[64,64],"seed":3,"metric":1e-12,"tolerance":1e-08,"pass":true})");
}
