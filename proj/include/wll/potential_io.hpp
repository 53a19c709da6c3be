#pragma once
// JSON encoding of rational functions and normalized potentials.

#include <json.hpp>

#include "wll/potentials.hpp"

namespace wll {

using json = nlohmann::json;

// {"num": [[re, im], ...], "den": [...]}, coefficients low to high degree;
// each part is an integer or a "p/q" string. "den" defaults to 1.
RF rational_from_json(const json& j);
json rational_to_json(const RF& f);

// Either {"m", "pairs": [{"kind", "functions"}]} or {"builder": name, <generator>: ...}.
NormalizedPotential potential_from_json(const json& j);
json potential_to_json(const NormalizedPotential& p);

NormalizedPotential load_potential(const std::string& path);

}  // namespace wll
