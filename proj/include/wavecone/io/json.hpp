#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wavecone/dsl/serialize.hpp"
#include "wavecone/nulllag/solver.hpp"
#include "wavecone/operator/analysis.hpp"
#include "wavecone/potential/construction.hpp"

namespace wavecone::io {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

inline Json rational_list(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

/// Same direction, cleared of denominators (frequencies only matter up to scale).
inline Json integer_direction(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
  Json a = Json::array();
  for (const auto& x : v) {
    const Integer k = x.get_num() * (l / x.get_den());
    if (k.fits_slong_p()) a.push_back(k.get_si());
    else a.push_back(k.get_str());
  }
  return a;
}

inline Json matrix_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(rational_list(m.row(i)));
  return rows;
}

inline Json to_json(const RankReport& r) {
  Json j;
  j["schema"] = schema_version;
  j["generic_rank"] = r.generic_rank;
  j["tail_vanishes"] = r.tail_vanishes;
  j["verdict"] = to_string(r.verdict);
  Json pts = Json::array();
  for (const auto& p : r.rank_drop_points) pts.push_back(integer_direction(p));
  j["drop_points"] = pts;
  j["seed"] = r.seed;
  j["samples"] = r.sample_count;
  j["min_sampled_cr"] = r.min_sampled_cr.get_str();
  return j;
}

inline Json to_json(const WaveConeReport& r) {
  Json j;
  j["schema"] = schema_version;
  j["spans_V"] = r.spans_V;
  j["span_dim"] = r.span_basis.size();
  Json basis = Json::array();
  for (std::size_t i = 0; i < r.span_basis.size(); ++i)
    basis.push_back({{"vector", rational_list(r.span_basis[i])}, {"xi", integer_direction(r.witnesses[i])}});
  j["basis"] = basis;
  j["samples_used"] = r.samples_used;
  return j;
}

inline Json to_json(const CocancelReport& r) {
  Json j;
  j["schema"] = schema_version;
  j["cocanceling"] = r.cocanceling;
  Json basis = Json::array();
  for (const auto& v : r.invariant_basis) basis.push_back(rational_list(v));
  j["invariant_basis"] = basis;
  return j;
}

inline Json to_json(const ExactnessReport& r) {
  Json j;
  j["product_is_zero"] = r.product_is_zero;
  j["rank_complementarity"] = r.rank_complementarity;
  j["samples"] = r.samples;
  Json pts = Json::array();
  for (const auto& p : r.failing_points) pts.push_back(integer_direction(p));
  j["failing_points"] = pts;
  j["exact"] = r.exact();
  return j;
}

inline Json to_json(const PotentialSymbol& p) {
  Json j = dsl::to_json(p.B);
  j["provenance"] = to_string(p.provenance);
  return j;
}

inline Json to_json(const PotentialSearch& s) {
  Json j;
  j["order"] = s.order;
  j["dim_U"] = s.dim_U;
  j["solution_space_dim"] = s.solution_space_dim;
  j["max_generic_rank"] = s.max_generic_rank;
  j["max_random_point_rank"] = s.max_random_point_rank;
  j["annihilator_rank"] = s.annihilator_rank;
  j["potential_exists"] = s.potential_exists;
  return j;
}

inline Json to_json(const IsomorphismSearch& s) {
  Json j;
  j["isomorphic"] = s.Q.has_value();
  j["linear_system_consistent"] = s.consistent;
  j["homogeneous_dim"] = s.homogeneous_dim;
  if (s.Q) j["Q"] = matrix_json(*s.Q);
  return j;
}

inline Json to_json(const NullLagrangianBasis& b) {
  Json j;
  j["schema"] = schema_version;
  j["degree"] = b.degree;
  j["c_space_dim"] = b.c_space_dim;
  j["f_space_dim"] = b.f_space_dim;
  Json els = Json::array();
  for (const auto& e : b.elements) els.push_back({{"c", rational_list(e.c)}, {"F", e.F.to_string("v")}});
  j["elements"] = els;
  if (!b.warnings.empty()) j["warnings"] = b.warnings;
  return j;
}

inline Json to_json(const MuratReport& r) {
  Json j;
  j["schema"] = schema_version;
  j["passed"] = r.passed;
  j["evaluations"] = r.evaluations;
  j["discarded"] = r.discarded;
  Json fails = Json::array();
  for (const auto& f : r.failures) {
    Json x;
    x["r"] = f.r;
    Json fr = Json::array(), dr = Json::array();
    for (const auto& v : f.frequencies) fr.push_back(rational_list(v));
    for (const auto& v : f.directions) dr.push_back(rational_list(v));
    x["frequencies"] = fr;
    x["directions"] = dr;
    x["point"] = rational_list(f.point);
    x["value"] = f.value.get_str();
    fails.push_back(x);
  }
  j["failures"] = fails;
  return j;
}

}  // namespace wavecone::io
