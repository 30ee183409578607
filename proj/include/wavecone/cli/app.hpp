#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavecone/dsl.hpp"
#include "wavecone/io/json.hpp"
#include "wavecone/nulllag.hpp"
#include "wavecone/operator.hpp"
#include "wavecone/potential.hpp"
#include "wavecone/spectral.hpp"

namespace wavecone::cli {

enum ExitCode { ok = 0, usage_error = 1, negative_verdict = 2, internal_error = 3 };

/// verify skips null Lagrangian systems above this many minors to stay interactive.
inline constexpr long long verify_minor_cap = 1000;

struct CommandConfig {
  std::string builtin_name;
  dsl::BuiltinParams params;
  std::string file;
  std::string op_name;          // picks one operator out of a multi-operator file
  bool source_is_potential = false;
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  int grid = 0;                 // 0: 64 for n <= 2, 16 for n = 3, 8 above
  bool json = false;
  int order = 2;
  std::size_t degree = 0;
  bool all_degrees = false;
  std::string poly;
  std::vector<std::string> pair;
  std::string dump_dir;
  std::optional<long long> minor_cap;  // nulllag default: default_minor_cap; verify default: verify_minor_cap
};

/// An operator source resolved to A and, when known, a potential B.
struct ResolvedOperator {
  std::optional<OperatorSymbol> A;
  std::optional<PotentialSymbol> B;
  bool documented_constant_rank = true;

  const OperatorSymbol& primary() const { return A ? *A : B->B; }
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline OperatorSymbol load_operator(const std::string& path, const std::string& name) {
  const auto ops = dsl::parse_operators({read_file(path), path});
  if (name.empty()) {
    if (ops.size() != 1)
      throw DomainError("'" + path + "' holds " + std::to_string(ops.size()) + " operators; pick one with --name");
    return ops.front();
  }
  for (const auto& op : ops)
    if (op.name() == name) return op;
  throw DomainError("no operator named '" + name + "' in '" + path + "'");
}

inline ResolvedOperator resolve(const CommandConfig& cfg) {
  ResolvedOperator r;
  if (!cfg.file.empty() && !cfg.builtin_name.empty()) throw CLI::ValidationError("--builtin and --file are exclusive");
  if (!cfg.file.empty()) {
    auto op = load_operator(cfg.file, cfg.op_name);
    if (cfg.source_is_potential) r.B = PotentialSymbol{op, Provenance::user_supplied};
    else r.A = std::move(op);
    return r;
  }
  if (cfg.builtin_name.empty()) throw CLI::ValidationError("an operator is required: --builtin NAME or --file PATH");
  auto b = dsl::builtin(cfg.builtin_name, cfg.params);
  r.documented_constant_rank = b.constant_rank;
  if (cfg.source_is_potential) {
    r.B = PotentialSymbol{b.A, Provenance::user_supplied};
  } else {
    r.A = std::move(b.A);
    r.B = std::move(b.potential);
  }
  return r;
}

/// Resolves a positional operator reference: a path to an .op file or a builtin name.
inline OperatorSymbol resolve_reference(const std::string& ref, const CommandConfig& cfg) {
  if (std::filesystem::exists(ref)) return load_operator(ref, "");
  return dsl::builtin(ref, cfg.params).A;
}

inline TorusGrid grid_for(const CommandConfig& cfg, int n) {
  const int size = cfg.grid > 0 ? cfg.grid : (n <= 2 ? 64 : n == 3 ? 16 : 8);
  return TorusGrid::cube(n, size);
}

inline void emit(std::ostream& out, io::Json j) {
  io::Json wrapped;
  wrapped["schema"] = io::schema_version;
  for (auto& [k, v] : j.items())
    if (k != "schema") wrapped[k] = v;
  out << wrapped.dump(2) << "\n";
}

inline std::string vec_string(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace detail

inline int cmd_check_rank(const CommandConfig& cfg, std::ostream& out) {
  const auto r = detail::resolve(cfg);
  const auto& a = r.primary();
  const auto rep = constant_rank_check(a, std::max(cfg.samples, a.dim_to()), cfg.seed);
  if (cfg.json) {
    auto j = io::to_json(rep);
    j["operator"] = a.name();
    detail::emit(out, j);
  } else {
    out << "operator: " << a.name() << " (" << a.symbol().shape() << ", order " << a.order() << ", n = " << a.n()
        << ")\n";
    out << "generic rank: " << rep.generic_rank << "\n";
    out << "characteristic tail vanishes: " << detail::yes_no(rep.tail_vanishes) << "\n";
    out << "samples: " << rep.sample_count << ", rank drops: " << rep.rank_drop_points.size() << "\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(rep.rank_drop_points.size(), 5); ++i)
      out << "  drop at xi = " << detail::vec_string(rep.rank_drop_points[i]) << "\n";
    out << "verdict: " << to_string(rep.verdict) << "\n";
  }
  return rep.verdict == RankVerdict::constant_rank_verified_probabilistic ? ok : negative_verdict;
}

inline int cmd_wavecone(const CommandConfig& cfg, std::ostream& out) {
  const auto r = detail::resolve(cfg);
  const auto& a = r.primary();
  const auto rep = wave_cone_span(a, cfg.samples, cfg.seed);
  if (cfg.json) {
    auto j = io::to_json(rep);
    j["operator"] = a.name();
    detail::emit(out, j);
  } else {
    out << "operator: " << a.name() << "\n";
    out << "span of the wave cone: dimension " << rep.span_basis.size() << " of " << a.dim_from() << "\n";
    for (std::size_t i = 0; i < rep.span_basis.size(); ++i)
      out << "  " << detail::vec_string(rep.span_basis[i]) << " in ker A" << detail::vec_string(rep.witnesses[i]) << "\n";
    out << "spans V: " << detail::yes_no(rep.spans_V) << "\n";
  }
  return rep.spans_V ? ok : negative_verdict;
}

inline int cmd_cocancel(const CommandConfig& cfg, std::ostream& out) {
  const auto r = detail::resolve(cfg);
  const auto& b = r.primary();
  const auto rep = cocanceling_check(b);
  if (cfg.json) {
    auto j = io::to_json(rep);
    j["operator"] = b.name();
    detail::emit(out, j);
  } else {
    out << "operator: " << b.name() << "\n";
    out << "common kernel of all coefficient matrices: dimension " << rep.invariant_basis.size() << "\n";
    for (const auto& v : rep.invariant_basis) out << "  " << detail::vec_string(v) << "\n";
    out << "cocanceling: " << detail::yes_no(rep.cocanceling) << "\n";
  }
  return rep.cocanceling ? ok : negative_verdict;
}

inline int cmd_potential(const CommandConfig& cfg, std::ostream& out) {
  const auto r = detail::resolve(cfg);
  if (!r.A) throw CLI::ValidationError("potential needs an annihilator, not --as-potential");
  const auto& a = *r.A;
  const auto rank_rep = constant_rank_check(a, std::max(cfg.samples, a.dim_to()), cfg.seed);
  if (rank_rep.verdict != RankVerdict::constant_rank_verified_probabilistic) {
    if (cfg.json) {
      io::Json j;
      j["operator"] = a.name();
      j["constant_rank"] = io::to_json(rank_rep);
      j["potential"] = nullptr;
      detail::emit(out, j);
    } else {
      out << "operator: " << a.name() << "\nnot certified constant rank (" << to_string(rank_rep.verdict)
          << "); no potential constructed\n";
    }
    return negative_verdict;
  }
  const auto b = raita_potential(a, rank_rep.generic_rank, cfg.seed);
  const auto ex = verify_exactness(a, b.B, std::max<std::size_t>(cfg.samples, 100), cfg.seed);
  if (cfg.json) {
    io::Json j;
    j["operator"] = a.name();
    j["generic_rank"] = rank_rep.generic_rank;
    j["potential"] = io::to_json(b);
    j["exactness"] = io::to_json(ex);
    detail::emit(out, j);
  } else {
    out << "# potential of " << a.name() << " (generic rank " << rank_rep.generic_rank << ", order " << b.order()
        << ")\n";
    out << "# A B = 0: " << detail::yes_no(ex.product_is_zero) << ", rank complementarity at " << ex.samples
        << " points: " << detail::yes_no(ex.rank_complementarity) << "\n";
    out << dsl::serialize(b.B);
  }
  return ex.exact() ? ok : internal_error;
}

inline int cmd_find_potential(const CommandConfig& cfg, std::ostream& out) {
  const auto r = detail::resolve(cfg);
  if (!r.A) throw CLI::ValidationError("find-potential needs an annihilator");
  if (cfg.order < 1) throw CLI::ValidationError("--order must be at least 1");
  const auto& a = *r.A;
  io::Json sweep = io::Json::array();
  std::optional<int> found;
  if (!cfg.json) out << "operator: " << a.name() << "\n";
  for (int kappa = 1; kappa <= cfg.order; ++kappa) {
    const auto s = potentials_of_order(a, kappa, cfg.seed, std::nullopt, false);
    sweep.push_back(io::to_json(s));
    if (!cfg.json)
      out << "order " << kappa << ": solution space dimension " << s.solution_space_dim << ", best uniform rank "
          << s.max_generic_rank << " (needed " << a.dim_from() - s.annihilator_rank << "), potential: "
          << detail::yes_no(s.potential_exists) << "\n";
    if (s.potential_exists && !found) found = kappa;
  }
  if (cfg.json) {
    io::Json j;
    j["operator"] = a.name();
    j["orders"] = sweep;
    j["lowest_order"] = found ? io::Json(*found) : io::Json(nullptr);
    detail::emit(out, j);
  } else {
    out << (found ? "lowest potential order: " + std::to_string(*found) : "no potential up to order " + std::to_string(cfg.order))
        << "\n";
  }
  return found ? ok : negative_verdict;
}

namespace detail {

inline PotentialSymbol potential_for(const ResolvedOperator& r, const CommandConfig& cfg) {
  if (r.B) return *r.B;
  return raita_potential(*r.A, std::nullopt, cfg.seed);
}

}  // namespace detail

inline int cmd_nulllag(const CommandConfig& cfg, std::ostream& out) {
  const auto r = detail::resolve(cfg);
  const auto p = detail::potential_for(r, cfg);
  const std::size_t bound = std::min(static_cast<std::size_t>(p.B.n()), p.dim_V());
  std::vector<std::size_t> degrees;
  if (cfg.all_degrees) {
    for (std::size_t s = 1; s <= bound; ++s) degrees.push_back(s);
  } else {
    if (cfg.degree == 0) throw CLI::ValidationError("give --degree S or --all-degrees");
    degrees.push_back(cfg.degree);
  }
  io::Json results = io::Json::array();
  if (!cfg.json)
    out << "potential: " << p.B.name() << " (" << p.B.symbol().shape() << ", order " << p.order() << ")\n";
  for (std::size_t s : degrees) {
    const auto basis = solve_null_lagrangians(p, s, std::nullopt, cfg.minor_cap.value_or(default_minor_cap));
    if (cfg.json) {
      results.push_back(io::to_json(basis));
      continue;
    }
    out << "degree " << s << ": c_space_dim " << basis.c_space_dim << ", f_space_dim " << basis.f_space_dim << "\n";
    for (std::size_t i = 0; i < basis.elements.size(); ++i)
      out << "  F" << i + 1 << " = " << basis.elements[i].F.to_string("v") << "\n";
    for (const auto& w : basis.warnings) out << "  warning: " << w << "\n";
  }
  if (cfg.json) {
    io::Json j;
    j["operator"] = r.A ? r.A->name() : p.B.name();
    j["potential"] = p.B.name();
    if (results.size() == 1) {
      for (auto& [k, v] : results[0].items())
        if (k != "schema") j[k] = v;
    } else {
      for (auto& e : results) e.erase("schema");
      j["degrees"] = results;
    }
    detail::emit(out, j);
  }
  return ok;
}

inline int cmd_murat(const CommandConfig& cfg, std::ostream& out) {
  const auto r = detail::resolve(cfg);
  if (!r.A) throw CLI::ValidationError("murat needs an annihilator");
  if (cfg.poly.empty()) throw CLI::ValidationError("--poly is required");
  const auto f = dsl::parse_polynomial(cfg.poly, static_cast<int>(r.A->dim_from()));
  const auto rep = murat_check(f, *r.A, cfg.samples, cfg.seed);
  if (cfg.json) {
    auto j = io::to_json(rep);
    j["operator"] = r.A->name();
    j["F"] = f.to_string("v");
    detail::emit(out, j);
  } else {
    out << "operator: " << r.A->name() << "\nF = " << f.to_string("v") << "\n";
    out << "polarization tests: " << rep.evaluations << " (" << rep.discarded << " discarded), failures: "
        << rep.failures.size() << "\n";
    if (!rep.failures.empty())
      out << "  first failure: r = " << rep.failures.front().r << ", value " << rep.failures.front().value.get_str()
          << "\n";
    out << "Murat condition: " << (rep.passed ? "holds" : "fails") << "\n";
  }
  return rep.passed ? ok : negative_verdict;
}

inline int cmd_iso(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.pair.size() != 2) throw CLI::ValidationError("iso takes exactly two operators");
  const auto b1 = detail::resolve_reference(cfg.pair[0], cfg);
  const auto b2 = detail::resolve_reference(cfg.pair[1], cfg);
  const auto fwd = symbol_isomorphism_search(b1, b2, cfg.seed);
  const auto bwd = symbol_isomorphism_search(b2, b1, cfg.seed);
  const bool iso = fwd.Q.has_value();
  if (cfg.json) {
    io::Json j;
    j["first"] = b1.name();
    j["second"] = b2.name();
    j["forward"] = io::to_json(fwd);
    j["backward"] = io::to_json(bwd);
    j["isomorphic"] = iso;
    detail::emit(out, j);
  } else {
    out << b1.name() << " -> " << b2.name() << ": " << (fwd.Q ? "Q found" : "none") << "\n";
    out << b2.name() << " -> " << b1.name() << ": " << (bwd.Q ? "Q found" : "none") << "\n";
    if (fwd.Q) {
      out << "Q =\n";
      for (std::size_t i = 0; i < fwd.Q->rows(); ++i) out << "  " << detail::vec_string(fwd.Q->row(i)) << "\n";
    }
  }
  return iso ? ok : negative_verdict;
}

inline int cmd_verify(const CommandConfig& cfg, std::ostream& out) {
  const auto r = detail::resolve(cfg);
  if (!r.A) throw CLI::ValidationError("verify needs an annihilator");
  const auto& a = *r.A;
  const TorusGrid grid = detail::grid_for(cfg, a.n());
  std::vector<ExperimentRecord> recs;
  std::vector<std::string> notes;
  auto record = [&](const std::string& name, double metric, double tol, bool upper) {
    recs.push_back({name, a.name(), grid.sizes(), cfg.seed, metric, tol, upper ? metric <= tol : metric >= tol});
  };

  const auto v = synthesize_A_free(a, grid, cfg.seed);
  record("a_free_synthesis", spectral_residual(a, v), 1e-10, true);
  if (!cfg.dump_dir.empty()) {
    std::filesystem::create_directories(cfg.dump_dir);
    dump_field(v, cfg.dump_dir + "/a_free.bin", "A-free field of " + a.name());
  }

  if (r.B) {
    const auto w = random_periodic_field(grid, a.dim_from(), cfg.seed);
    const auto h = hodge_decompose(a, *r.B, w);
    record("hodge_residual", h.relative_residual, 1e-8, true);
    record("hodge_orthogonality", h.orthogonality, 1e-8, true);
    if (!cfg.dump_dir.empty()) {
      dump_field(h.Bu_part, cfg.dump_dir + "/hodge_potential_part.bin", "B u part");
      dump_field(h.Astar_part, cfg.dump_dir + "/hodge_adjoint_part.bin", "A* w part");
    }
    const std::size_t s = cfg.degree ? cfg.degree : 2;
    try {
      const auto basis = solve_null_lagrangians(*r.B, s, std::nullopt, cfg.minor_cap.value_or(verify_minor_cap));
      double qa = 0, zm = 0;
      const std::vector<double> z(a.dim_from(), 0.5);
      for (const auto& el : basis.elements)
        for (std::uint64_t t = 0; t < 10; ++t) {
          qa = std::max(qa, periodic_quasiaffinity_check(el.F, a, z, grid, cfg.seed + t));
          zm = std::max(zm, zero_mean_check(el.F, *r.B, grid, cfg.seed + t));
        }
      if (!basis.elements.empty()) {
        record("quasiaffinity_degree_" + std::to_string(s), qa, 1e-6, true);
        record("zero_mean_degree_" + std::to_string(s), zm, 1e-6, true);
      } else {
        notes.push_back("no null Lagrangians of degree " + std::to_string(s));
      }
    } catch (const SizeLimitError& e) {
      notes.push_back(std::string("null Lagrangians skipped: ") + e.what());
    } catch (const DomainError& e) {
      notes.push_back(std::string("null Lagrangians skipped: ") + e.what());
    }
  } else {
    notes.push_back("no potential attached; Hodge and null Lagrangian checks skipped");
  }
  HomPoly sq(static_cast<int>(a.dim_from()), 2);
  for (int i = 0; i < sq.nvars(); ++i) sq += HomPoly::variable(sq.nvars(), i) * HomPoly::variable(sq.nvars(), i);
  record("quasiaffinity_negative_control", periodic_quasiaffinity_check(sq, a, std::vector<double>(a.dim_from(), 0.0), grid, cfg.seed),
         1e-2, false);

  bool all = true;
  for (const auto& rec : recs) all = all && rec.pass;
  if (cfg.json) {
    io::Json j;
    j["operator"] = a.name();
    io::Json arr = io::Json::array();
    for (const auto& rec : recs) arr.push_back(to_json(rec));
    j["records"] = arr;
    j["notes"] = notes;
    j["pass"] = all;
    detail::emit(out, j);
  } else {
    out << "operator: " << a.name() << ", grid " << grid.describe() << ", seed " << cfg.seed << "\n";
    for (const auto& rec : recs) {
      std::ostringstream line;
      line.precision(3);
      line << std::scientific << "  " << (rec.pass ? "ok  " : "FAIL") << " " << rec.experiment << ": " << rec.metric
           << (rec.experiment.find("negative") != std::string::npos ? " >= " : " <= ") << rec.tolerance;
      out << line.str() << "\n";
    }
    for (const auto& n : notes) out << "  note: " << n << "\n";
  }
  return all ? ok : internal_error;
}

inline int cmd_appendix(const CommandConfig& cfg, std::ostream& out) {
  const auto a = dsl::builtin("appendix_A").A;
  const auto b1 = dsl::builtin("appendix_B1").A;
  const auto b2 = dsl::builtin("appendix_B2").A;

  const auto rank_rep = constant_rank_check(a, cfg.samples, cfg.seed);
  const bool v_rank = rank_rep.generic_rank == 3 && rank_rep.tail_vanishes && rank_rep.rank_drop_points.empty();

  io::Json orders = io::Json::array();
  bool v_low = true;
  for (int kappa : {1, 2}) {
    const auto s = potentials_of_order(a, kappa, cfg.seed, std::nullopt, false);
    orders.push_back(io::to_json(s));
    v_low = v_low && !s.potential_exists && s.max_generic_rank <= 3;
  }

  const auto e1 = verify_exactness(a, b1, 100, cfg.seed);
  const auto e2 = verify_exactness(a, b2, 100, cfg.seed);
  const bool v_exact = e1.product_is_zero && e2.product_is_zero;
  const auto c1 = cocanceling_check(b1), c2 = cocanceling_check(b2);
  const bool v_cocancel = c1.cocanceling && c2.cocanceling;
  const bool iso12 = symbol_isomorphism(b1, b2, cfg.seed).has_value();
  const bool iso21 = symbol_isomorphism(b2, b1, cfg.seed).has_value();
  const bool v_iso = !iso12 && !iso21;
  const bool all = v_rank && v_low && v_exact && v_cocancel && v_iso;

  if (cfg.json) {
    io::Json j;
    j["rank"] = io::to_json(rank_rep);
    j["rank"].erase("schema");
    j["low_order_potentials"] = orders;
    j["exactness"] = {{"B1", io::to_json(e1)}, {"B2", io::to_json(e2)}};
    j["cocanceling"] = {{"B1", c1.cocanceling}, {"B2", c2.cocanceling}};
    j["isomorphism"] = {{"B1_to_B2", iso12}, {"B2_to_B1", iso21}};
    j["reproduced"] = all;
    detail::emit(out, j);
  } else {
    auto line = [&](bool okv, const std::string& text) { out << (okv ? "[ok]   " : "[FAIL] ") << text << "\n"; };
    line(v_rank, "rank A(xi) = " + std::to_string(rank_rep.generic_rank) + " for all sampled xi != 0 (tail vanishes: " +
                     detail::yes_no(rank_rep.tail_vanishes) + ", drops: " +
                     std::to_string(rank_rep.rank_drop_points.size()) + ")");
    line(v_low, "no potential of order 1 or 2");
    line(v_exact, "A B1 = 0 and A B2 = 0 exactly");
    line(v_cocancel, "B1 and B2 are cocanceling");
    line(v_iso, "no Q in GL(7) with B1 Q = B2 or B2 Q = B1");
  }
  return all ? ok : internal_error;
}

inline int cmd_list_builtins(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.json) {
    io::Json arr = io::Json::array();
    for (const auto& d : dsl::builtin_catalogue())
      arr.push_back({{"name", d.name}, {"parameters", d.parameters}, {"description", d.description}, {"potential", d.potential}});
    io::Json j;
    j["builtins"] = arr;
    detail::emit(out, j);
    return ok;
  }
  for (const auto& d : dsl::builtin_catalogue()) {
    out << d.name;
    if (!d.parameters.empty()) out << " [" << d.parameters << "]";
    out << "\n    " << d.description << "\n    potential: " << d.potential << "\n";
  }
  return ok;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Constant-rank operator analysis: potentials, null Lagrangians and spectral checks", "wavecone-tool"};
  app.require_subcommand(1);
  CommandConfig cfg;

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--builtin", cfg.builtin_name, "builtin operator name (see list-builtins)");
    sub->add_option("--file", cfg.file, "operator file in the .op format");
    sub->add_option("--name", cfg.op_name, "operator to pick from a file holding several");
    sub->add_option("--n", cfg.params.n, "space dimension for builtins")->check(CLI::PositiveNumber);
    sub->add_option("--m", cfg.params.m, "target dimension for grad")->check(CLI::PositiveNumber);
    sub->add_option("--k", cfg.params.k, "derivative order for grad")->check(CLI::PositiveNumber);
    sub->add_option("--rows", cfg.params.rows, "row count for div")->check(CLI::PositiveNumber);
    sub->add_flag("--as-potential", cfg.source_is_potential, "treat the operator as a potential B");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", cfg.json, "machine-readable output");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--samples", cfg.samples, "frequency samples")->check(CLI::PositiveNumber);
  };

  struct Command {
    CLI::App* app;
    int (*fn)(const CommandConfig&, std::ostream&);
  };
  std::vector<Command> cmds;
  auto sub = [&](const std::string& name, const std::string& help, int (*fn)(const CommandConfig&, std::ostream&),
                 bool source = true) {
    auto* s = app.add_subcommand(name, help);
    if (source) add_source(s);
    add_common(s);
    cmds.push_back({s, fn});
    return s;
  };

  sub("check-rank", "constant rank verdict", cmd_check_rank);
  sub("wavecone", "span of the wave cone", cmd_wavecone);
  sub("cocancel", "cocanceling test for a potential", cmd_cocancel);
  sub("potential", "potential by the pseudoinverse construction", cmd_potential);
  sub("find-potential", "sweep for potentials of order 1..K", cmd_find_potential)
      ->add_option("--order", cfg.order, "largest order K")
      ->required();
  auto* nl = sub("nulllag", "null Lagrangians of a given degree", cmd_nulllag);
  auto* deg = nl->add_option("--degree", cfg.degree, "polynomial degree s");
  auto* all = nl->add_flag("--all-degrees", cfg.all_degrees, "every degree up to min(n, dim V)");
  deg->excludes(all);
  nl->add_option("--minor-cap", cfg.minor_cap, "refuse systems with more minors than this");
  sub("murat", "polarization (Murat) test for a polynomial", cmd_murat)
      ->add_option("--poly", cfg.poly, "polynomial in v1..vd, e.g. 'v1*v4 - v2*v3'")
      ->required();
  auto* iso = sub("iso", "search Q with B1 Q = B2", cmd_iso, false);
  iso->add_option("operators", cfg.pair, "two builtin names or .op files")->expected(2)->required();
  iso->add_option("--n", cfg.params.n, "space dimension for builtins");
  auto* ver = sub("verify", "spectral verification suite", cmd_verify);
  ver->add_option("--grid", cfg.grid, "points per axis (power of two >= 8)");
  ver->add_option("--degree", cfg.degree, "null Lagrangian degree for the quadrature checks (default 2)");
  ver->add_option("--dump", cfg.dump_dir, "directory for binary field dumps");
  ver->add_option("--minor-cap", cfg.minor_cap, "skip null Lagrangian systems with more minors than this");
  sub("appendix", "reproduce the appendix example", cmd_appendix, false);
  sub("list-builtins", "list builtin operators", cmd_list_builtins, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    for (const auto& c : cmds)
      if (c.app->parsed()) return c.fn(cfg, out);
  } catch (const CLI::ValidationError& e) {
    err << "wavecone-tool: " << e.what() << "\n";
    return usage_error;
  } catch (const InternalError& e) {
    err << "wavecone-tool: internal self-check failed: " << e.what() << "\n";
    return internal_error;
  } catch (const dsl::ParseError& e) {
    err << e.what() << "\n";
    return usage_error;
  } catch (const std::exception& e) {
    err << "wavecone-tool: " << e.what() << "\n";
    return usage_error;
  }
  return usage_error;
}

}  // namespace wavecone::cli
