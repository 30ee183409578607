#pragma once

#include <string>

#include "wavecone/operator/operator_symbol.hpp"

namespace wavecone {

enum class Provenance { raita_construction, user_supplied, order_search };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::raita_construction: return "raita_construction";
    case Provenance::user_supplied: return "user_supplied";
    case Provenance::order_search: return "order_search";
  }
  return "user_supplied";
}

/// A potential B : U -> V for some annihilator A on V.
struct PotentialSymbol {
  OperatorSymbol B;
  Provenance provenance = Provenance::user_supplied;

  std::size_t dim_U() const { return B.dim_from(); }
  std::size_t dim_V() const { return B.dim_to(); }
  int order() const { return B.order(); }
};

}  // namespace wavecone
