#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "bzt/critical.hpp"
#include "bzt/equilibria.hpp"
#include "bzt/params.hpp"
#include "bzt/simulate.hpp"
#include "bzt/transition.hpp"

namespace bzt {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

// Every double is written with %.17g; non-finite values become null.
std::string dump_json(const json& j, int indent = 2);

// Throws IoError naming the path.
void write_text_file(const std::string& path, const std::string& content);

json to_json(const NondimParams& p);
json to_json(const ChemKinetics& k);
json to_json(const SteadyState& s);
json to_json(const RegionBox& b);
json to_json(const Domain& d);
json to_json(const Vec3& v);
json to_json(const CriticalNumbers& c);
json to_json(const HopfChain& c);
json to_json(const SteadyChain& c);
json to_json(const TransitionReport& r);
json to_json(const CycleDiagnostics& d);

// One row per output time (ODE) or per output time and node (PDE), in
// original variables: t,u1,u2,u3 or t,x[,y],u1,u2,u3.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

// Same rows as the CSV, little-endian float64, after a 16-byte header:
// magic "BZTRAJ\0\0", uint32 version = 1, uint32 column count.
void write_trajectory_binary(const std::string& path, const Trajectory& tr);

}  // namespace bzt
