#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include <json.hpp>

#include "wavecone/errors.hpp"
#include "wavecone/spectral/grid.hpp"

namespace wavecone {

struct ExperimentRecord {
  std::string experiment;
  std::string op;
  std::vector<int> grid;
  std::uint64_t seed = 0;
  double metric = 0;
  double tolerance = 0;
  bool pass = false;
};

inline nlohmann::ordered_json to_json(const ExperimentRecord& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.experiment;
  j["operator"] = r.op;
  j["grid"] = r.grid;
  j["seed"] = r.seed;
  j["metric"] = r.metric;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

/// Writes `path` (row-major little-endian float64, component-major) and `path`.json.
inline void dump_field(const PeriodicField& f, const std::string& path, const std::string& label = "") {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("dump_field: cannot open " + path);
  for (const auto& c : f.values)
    for (double x : c) {
      unsigned char bytes[8];
      std::uint64_t bits;
      std::memcpy(&bits, &x, sizeof bits);
      for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(bits >> (8 * b));
      out.write(reinterpret_cast<const char*>(bytes), sizeof bytes);
    }
  nlohmann::ordered_json meta;
  meta["schema"] = 1;
  meta["label"] = label;
  meta["grid"] = f.grid.sizes();
  meta["components"] = f.dim;
  meta["dtype"] = "float64";
  meta["byte_order"] = "little";
  meta["layout"] = "component-major, then row-major over the grid (last axis fastest)";
  meta["domain"] = "[0,1)^n";
  std::ofstream side(path + ".json");
  side << meta.dump(2) << "\n";
}

}  // namespace wavecone
