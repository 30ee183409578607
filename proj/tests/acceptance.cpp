// Acceptance report: one PASS/FAIL line per criterion.
//
//   acceptance [--expect-red N]...
//
// Exit status is 0 when the failing criteria are exactly the ones named with
// --expect-red, so a criterion that is known to be out of reach stays visible
// as FAIL in the report without hiding regressions elsewhere.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wavecone/dsl.hpp"
#include "wavecone/nulllag.hpp"
#include "wavecone/operator.hpp"
#include "wavecone/potential.hpp"
#include "wavecone/spectral.hpp"

using namespace wavecone;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

dsl::Builtin bi(const std::string& name, dsl::BuiltinParams p = {}) { return dsl::builtin(name, p); }

HomPoly poly(const std::string& text, int nvars) { return dsl::parse_polynomial(text, nvars); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

bool proportional(const HomPoly& f, const HomPoly& g) {
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  const auto& [alpha, c] = *g.terms().begin();
  const Rational lambda = f.coefficient(alpha) / c;
  return lambda != 0 && f == g * lambda;
}

bool in_span(const NullLagrangianBasis& basis, const HomPoly& g) {
  const auto monos = multi_indices(static_cast<std::size_t>(g.nvars()), g.degree());
  std::vector<RationalVector> cols;
  for (const auto& el : basis.elements) {
    RationalVector c;
    for (const auto& m : monos) c.push_back(el.F.coefficient(m));
    cols.push_back(c);
  }
  RationalVector target;
  for (const auto& m : monos) target.push_back(g.coefficient(m));
  if (cols.empty()) return is_zero_vector(target);
  return solve(RationalMatrix::from_columns(cols, monos.size()), target).has_value();
}

Outcome c1_symgrad() {
  std::ostringstream d;
  bool ok = true;
  for (int n : {2, 3}) {
    const auto b = solve_null_lagrangians(*bi("symgrad", {n}).potential, 2);
    d << "n=" << n << ": f_space_dim " << b.f_space_dim << "; ";
    ok = ok && b.f_space_dim == 0;
  }
  return {ok, d.str()};
}

Outcome c2_solenoidal_2x2() {
  const auto b = solve_null_lagrangians(*bi("div", {2, 1, 1, 2}).potential, 2);
  const bool ok = b.f_space_dim == 1 && proportional(b.elements[0].F, poly("v1*v4 - v2*v3", 4));
  return {ok, "f_space_dim " + std::to_string(b.f_space_dim) +
                  (b.elements.empty() ? "" : ", F = " + b.elements[0].F.to_string("v"))};
}

Outcome c3_solenoidal_3d() {
  const auto p = *bi("div", {3}).potential;
  const auto t = potential_to_jet_map(p);
  RationalMatrix pasym(9, 9);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      pasym(3 * a + b, 3 * a + b) += Rational(1, 2);
      pasym(3 * a + b, 3 * b + a) -= Rational(1, 2);
    }
  const auto basis = solve_null_lagrangians(p, 2);
  return {t.T_hat == pasym && basis.f_space_dim == 0,
          std::string("T_hat = P_asym: ") + (t.T_hat == pasym ? "yes" : "no") + ", f_space_dim " +
              std::to_string(basis.f_space_dim)};
}

Outcome c4_divcurl() {
  const auto dc = bi("divcurl", {2});
  const auto b = solve_null_lagrangians(*dc.potential, 2);
  const HomPoly eb = poly("v1*v3 + v2*v4", 4);
  const bool member = in_span(b, eb);
  const auto m = murat_check(eb, dc.A, 200, 0);
  return {member && m.passed, "E.B in F-space: " + std::string(member ? "yes" : "no") + ", Murat failures " +
                                  std::to_string(m.failures.size()) + " of " + std::to_string(m.evaluations)};
}

Outcome c5_hessian() {
  const auto b = solve_null_lagrangians(*bi("hessian", {2}).potential, 2);
  if (b.f_space_dim != 1) return {false, "f_space_dim " + std::to_string(b.f_space_dim)};
  const HomPoly& f = b.elements[0].F;
  const bool is_det = proportional(f, poly("v1*v3 - v2^2", 3));
  // Polarization F(U + V) - F(U) - F(V), v = (v11, v12, v22).
  std::vector<HomPoly> uu, vv, sum;
  for (int i = 0; i < 3; ++i) {
    uu.push_back(HomPoly::variable(6, i));
    vv.push_back(HomPoly::variable(6, 3 + i));
    sum.push_back(uu.back() + vv.back());
  }
  auto compose = [&](const std::vector<HomPoly>& args) {
    HomPoly out(6, 2);
    for (const auto& [a, c] : f.terms()) {
      HomPoly term = HomPoly::constant(6, c);
      for (std::size_t i = 0; i < 3; ++i)
        for (int e = 0; e < a[i]; ++e) term = term * args[i];
      out += term;
    }
    return out;
  };
  const HomPoly polar = compose(sum) - compose(uu) - compose(vv);
  const bool ma = proportional(polar, poly("v1*v6 + v3*v4 - 2*v2*v5", 6));
  return {is_det && ma, "F = " + f.to_string("v") + ", polarization " + polar.to_string("v")};
}

Outcome c6_appendix() {
  const auto a = bi("appendix_A").A;
  const auto b1 = bi("appendix_B1").A, b2 = bi("appendix_B2").A;
  std::ostringstream d;
  const auto rank = constant_rank_check(a, 200, 0);
  const bool r_ok = rank.generic_rank == 3 && rank.tail_vanishes && rank.rank_drop_points.empty();
  d << "rank " << rank.generic_rank << (rank.tail_vanishes ? " (tail vanishes)" : " (tail nonzero)") << ", drops "
    << rank.rank_drop_points.size();
  bool low_ok = true;
  for (int kappa : {1, 2}) {
    const auto s = potentials_of_order(a, kappa, 0, std::nullopt, false);
    low_ok = low_ok && !s.potential_exists && s.max_generic_rank <= 3;
    d << "; order " << kappa << ": exists " << (s.potential_exists ? "yes" : "no") << ", max rank "
      << s.max_generic_rank;
  }
  const bool ab = (a.symbol() * b1.symbol()).is_zero() && (a.symbol() * b2.symbol()).is_zero();
  const bool coc = cocanceling_check(b1).cocanceling && cocanceling_check(b2).cocanceling;
  const bool iso = symbol_isomorphism(b1, b2).has_value() || symbol_isomorphism(b2, b1).has_value();
  d << "; AB1=AB2=0 " << (ab ? "yes" : "no") << "; cocanceling " << (coc ? "yes" : "no") << "; isomorphism "
    << (iso ? "found" : "none");
  return {r_ok && low_ok && ab && coc && !iso, d.str()};
}

Outcome c7_raita() {
  std::ostringstream d;
  bool ok = true;
  const std::vector<std::pair<std::string, int>> ops = {{"div", 2},  {"div", 3},     {"curl", 2},
                                                        {"curl", 3}, {"symgrad", 2}, {"appendix_A", 3}};
  for (const auto& [name, n] : ops) {
    const auto a = bi(name, {n}).A;
    const auto rank = constant_rank_check(a, 50, 0);
    const auto dec = decell_pseudoinverse(a, rank.generic_rank, 0);
    const auto b = raita_potential(a, rank.generic_rank, 0);
    const auto ex = verify_exactness(a, b.B, 100, 1);
    const bool this_ok = ex.exact() && ex.samples >= 100 && dec.self_check_points == 20;
    ok = ok && this_ok;
    d << a.name() << (this_ok ? " ok" : " FAILED") << "; ";
  }
  return {ok, d.str()};
}

PolyMatrix random_poly_matrix(Rng& rng, std::size_t w, int n, int degree) {
  PolyMatrix m(w, w, n, degree);
  const auto monos = multi_indices(static_cast<std::size_t>(n), degree);
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j)
      for (const auto& a : monos)
        if (random_int(rng, 0, 2) == 0) m.at(i, j).add_term(a, random_int(rng, -3, 3));
  return m;
}

Outcome c8_properties() {
  int penrose_fail = 0, fl_fail = 0, ns_fail = 0;
  Rng rng(2024);
  for (int t = 0; t < 200; ++t) {
    const auto rows = static_cast<std::size_t>(random_int(rng, 1, 6));
    const auto cols = static_cast<std::size_t>(random_int(rng, 1, 8));
    const auto inner = static_cast<std::size_t>(random_int(rng, 1, 4));
    const RationalMatrix m = t % 3 == 0 ? random_rational_matrix(rng, rows, inner) * random_rational_matrix(rng, inner, cols)
                                        : random_rational_matrix(rng, rows, cols);
    if (!wavecone::detail::penrose_axioms(m, moore_penrose(m))) ++penrose_fail;
  }
  Rng rng2(77);
  for (int t = 0; t < 50; ++t) {
    const auto w = static_cast<std::size_t>(random_int(rng2, 1, 4));
    const int n = static_cast<int>(random_int(rng2, 1, 3));
    const int deg = static_cast<int>(random_int(rng2, 1, 2));
    const PolyMatrix p = random_poly_matrix(rng2, w, n, deg);
    if (faddeev_leverrier(p) != oracle::charpoly_by_cofactors(p)) ++fl_fail;
  }
  Rng rng3(5);
  for (int t = 0; t < 200; ++t) {
    const auto rows = static_cast<std::size_t>(random_int(rng3, 1, 6));
    const auto cols = static_cast<std::size_t>(random_int(rng3, 1, 8));
    RationalMatrix m = random_rational_matrix(rng3, rows, cols);
    if (rows > 2 && t % 2 == 0)
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j) * Rational(3, 7) - m(1, j);
    const auto ns = rational_nullspace(m);
    bool ok = ns.rank + ns.basis.size() == cols;
    for (const auto& b : ns.basis) ok = ok && is_zero_vector(m * b);
    if (!ns.basis.empty()) ok = ok && rank(RationalMatrix::from_rows(ns.basis)) == ns.basis.size();
    if (!ok) ++ns_fail;
  }
  return {penrose_fail + fl_fail + ns_fail == 0, "Penrose failures " + std::to_string(penrose_fail) +
                                                     "/200, Faddeev-LeVerrier vs cofactors " + std::to_string(fl_fail) +
                                                     "/50, nullspace " + std::to_string(ns_fail) + "/200"};
}

Outcome c9_spectral() {
  struct Case {
    std::string name;
    dsl::BuiltinParams p;
  };
  const std::vector<Case> cases = {{"div", {2}},     {"div", {3}},          {"curl", {2}},    {"curl", {3}},
                                   {"symgrad", {2}}, {"symgrad", {3}},      {"divcurl", {2}}, {"divcurl", {3}},
                                   {"hessian", {2}}, {"grad", {2, 2, 1}},   {"div", {2, 1, 1, 2}}, {"appendix_A", {}}};
  double hodge_res = 0, hodge_orth = 0, synth = 0, qa = 0, zm = 0, control = 1;
  std::size_t lagrangians = 0;
  for (const auto& c : cases) {
    const auto b = bi(c.name, c.p);
    const int n = b.A.n();
    const TorusGrid grid = TorusGrid::cube(n, n == 2 ? 64 : 16);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      synth = std::max(synth, spectral_residual(b.A, synthesize_A_free(b.A, grid, seed)));
      const auto h = hodge_decompose(b.A, *b.potential, random_periodic_field(grid, b.A.dim_from(), seed));
      hodge_res = std::max(hodge_res, h.relative_residual);
      hodge_orth = std::max(hodge_orth, h.orthogonality);
    }
    HomPoly sq(static_cast<int>(b.A.dim_from()), 2);
    for (int i = 0; i < sq.nvars(); ++i) sq += HomPoly::variable(sq.nvars(), i) * HomPoly::variable(sq.nvars(), i);
    control = std::min(control, periodic_quasiaffinity_check(sq, b.A, std::vector<double>(b.A.dim_from(), 0.0), grid, 1));

    const std::size_t bound = std::min<std::size_t>(static_cast<std::size_t>(n), b.potential->dim_V());
    for (std::size_t s = 2; s <= bound; ++s) {
      NullLagrangianBasis basis;
      try {
        basis = solve_null_lagrangians(*b.potential, s, std::nullopt, 1000);
      } catch (const SizeLimitError&) {
        continue;
      }
      Rng zr(s);
      std::vector<double> z(b.A.dim_from());
      for (auto& x : z) x = random_rational(zr).get_d();
      for (const auto& el : basis.elements) {
        ++lagrangians;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
          qa = std::max(qa, periodic_quasiaffinity_check(el.F, b.A, z, grid, seed));
          zm = std::max(zm, zero_mean_check(el.F, *b.potential, grid, seed));
        }
      }
    }
  }
  const bool ok = hodge_res <= 1e-8 && hodge_orth <= 1e-8 && synth <= 1e-10 && qa <= 1e-6 && control >= 1e-2 &&
                  zm <= 1e-6 && lagrangians > 0;
  return {ok, "Hodge residual " + fmt(hodge_res) + ", orthogonality " + fmt(hodge_orth) + ", synthesis " + fmt(synth) +
                  ", quasiaffinity " + fmt(qa) + " over " + std::to_string(lagrangians) +
                  " null Lagrangians x 10 seeds, |v|^2 control " + fmt(control) + ", zero mean " + fmt(zm)};
}

Outcome c10_estimate() {
  const auto g = bi("grad", {2, 2, 1});
  const TorusGrid grid = TorusGrid::cube(2, 64);
  const HomPoly det = poly("v1*v4 - v2*v3", 4);
  std::vector<double> ratios;
  bool finite = true;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto u1 = random_bump_field(grid, 2, 3 * t + 1);
    const auto u2 = random_bump_field(grid, 2, 3 * t + 2);
    const auto phi = random_bump_field(grid, 1, 3 * t + 3, 1);
    const double r = quantitative_estimate_check(det, *g.potential, u1, u2, phi, 2, 2);
    finite = finite && std::isfinite(r) && r > 0;
    ratios.push_back(r);
  }
  const auto u = random_bump_field(grid, 2, 999);
  const double same = quantitative_estimate_check(det, *g.potential, u, u, random_bump_field(grid, 1, 998, 1), 2, 2);
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[24] + sorted[25]);
  const double spread = sorted.back() / median;
  return {finite && spread <= 50 && same == 0.0,
          "max " + fmt(sorted.back()) + ", median " + fmt(median) + ", max/median " + fmt(spread) + ", u1 = u2 gives " +
              fmt(same)};
}

Outcome c11_concentration() {
  const auto rep = concentration_demo(256, 0.125, 3);
  std::ostringstream d;
  for (const auto& s : rep.steps) d << "eps " << fmt(s.epsilon) << ": proxy/L1 " << fmt(s.ratio) << "; ";
  d << "growth " << fmt(rep.growth) << " (needs >= 5), L1 spread " << fmt(rep.l1_spread) << " (needs <= 2)";
  return {rep.growth >= 5 && rep.l1_spread <= 2, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expect_red;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expect-red" && i + 1 < argc) {
      expect_red.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--expect-red N]...\n");
      return 1;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "symmetric gradient, n = 2, 3, degree 2: no null Lagrangians", 5, c1_symgrad},
      {2, "solenoidal 2x2 fields, degree 2: F = c det", 5, c2_solenoidal_2x2},
      {3, "solenoidal n = 3 with T = P_asym, degree 2: none", 30, c3_solenoidal_3d},
      {4, "div-curl n = 2: E.B in the basis, Murat condition", 10, c4_divcurl},
      {5, "Hessian n = 2: det D^2 u and its Monge-Ampere polarization", 5, c5_hessian},
      {6, "appendix reproduction", 120, c6_appendix},
      {7, "pseudoinverse potentials: exactness and Penrose self-check", 120, c7_raita},
      {8, "exact algebra property suites", 60, c8_properties},
      {9, "spectral suite on 64^2 and 16^3", 180, c9_spectral},
      {10, "quantitative estimate statistic, 50 trials", 120, c10_estimate},
      {11, "Hardy concentration demo: growth >= 5x over 3 refinements", 60, c11_concentration},
  };

  std::set<int> red;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) red.insert(c.id);
    std::printf("%s %2d  %s  (%.2f s, limit %.0f s%s)\n      %s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                c.limit_seconds, in_time ? "" : ", OVER LIMIT", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu of %zu criteria pass\n", criteria.size() - red.size(), criteria.size());
  if (red != expect_red) {
    std::printf("failing set differs from the expected red set\n");
    return 1;
  }
  return 0;
}
