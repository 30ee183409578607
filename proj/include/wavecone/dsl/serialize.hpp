#pragma once

#include <string>

#include <json.hpp>

#include "wavecone/dsl/parser.hpp"
#include "wavecone/operator/operator_symbol.hpp"

namespace wavecone::dsl {

/// Text form accepted by parse_operator.
inline std::string serialize(const OperatorSymbol& op) {
  std::string out = "operator " + op.name() + " {\n";
  out += "  vars = " + std::to_string(op.n()) + "; from = " + std::to_string(op.dim_from()) +
         "; order = " + std::to_string(op.order()) + ";\n";
  out += "  symbol = [\n";
  for (std::size_t i = 0; i < op.dim_to(); ++i) {
    out += "    [";
    for (std::size_t j = 0; j < op.dim_from(); ++j) {
      if (j) out += ", ";
      out += op.symbol()(i, j).to_string("d");
    }
    out += i + 1 < op.dim_to() ? "],\n" : "]\n";
  }
  out += "  ];\n}\n";
  return out;
}

/// {"name", "vars", "order", "to", "from", "coeffs": {"2,0,1": [[rational strings]]}}
inline nlohmann::ordered_json to_json(const OperatorSymbol& op) {
  nlohmann::ordered_json j;
  j["name"] = op.name();
  j["vars"] = op.n();
  j["order"] = op.order();
  j["to"] = op.dim_to();
  j["from"] = op.dim_from();
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::object();
  for (const auto& [alpha, m] : op.coefficients()) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c).get_str());
      rows.push_back(row);
    }
    coeffs[alpha.key()] = rows;
  }
  j["coeffs"] = coeffs;
  return j;
}

inline OperatorSymbol operator_from_json(const nlohmann::json& j) {
  const int nvars = j.at("vars").get<int>();
  const int order = j.at("order").get<int>();
  std::size_t to = j.contains("to") ? j["to"].get<std::size_t>() : 0;
  std::size_t from = j.contains("from") ? j["from"].get<std::size_t>() : 0;
  CoefficientMap coeffs;
  for (const auto& [key, rows] : j.at("coeffs").items()) {
    std::vector<int> e;
    std::size_t start = 0;
    while (start <= key.size()) {
      const std::size_t comma = key.find(',', start);
      const std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (part.empty()) throw DimensionError("malformed multi-index key '" + key + "'");
      e.push_back(std::stoi(part));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    std::vector<RationalVector> mrows;
    for (const auto& row : rows) {
      RationalVector r;
      for (const auto& v : row) r.push_back(parse_rational(v.get<std::string>()));
      mrows.push_back(r);
    }
    const RationalMatrix m = RationalMatrix::from_rows(mrows);
    if (to == 0) to = m.rows();
    if (from == 0) from = m.cols();
    coeffs.emplace(MultiIndex(e), m);
  }
  if (to == 0 || from == 0) throw DimensionError("operator JSON without coefficients must declare 'to' and 'from'");
  return OperatorSymbol::from_coefficients(j.value("name", std::string("imported")), nvars, order, to, from, coeffs);
}

}  // namespace wavecone::dsl
