#pragma once

#include <string>

#include "abrp/geometry.hpp"

namespace abrp {

// JSON representation of an instance:
//   {"n": ..., "area": ..., "seed": ..., "capacity": ... | null,
//    "a": ..., "b": ..., "beta": ..., "depot": [x, y],
//    "nodes": [[x, y], ...]}
// Coordinates are written with 17 significant digits so a round trip through
// the file reproduces the doubles exactly.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace abrp
