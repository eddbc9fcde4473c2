#pragma once

#include <memory>
#include <string>

#include "hjnet/sequence.hpp"
#include "hjnet/spaces.hpp"

namespace hjnet {

// CLI-facing space descriptor, also exercised directly by tests:
//   {"kind": "vicsek"|"koch"|"sierpinski_network"|"sierpinski_vertices"
//           |"lattice"|"yjunction"|"yjunction_tube"|"circle"|"arc"|"interval",
//    "n": int, ...kind-specific keys...}
// Every kind resolves to a MetricNetwork (the tube resolves to its derived
// metric graph).
std::shared_ptr<const MetricNetwork> build_space(const std::string& descriptor_json);

// Converging families for H2 / stability experiments:
//   {"family": "sierpinski"|"vicsek"|"koch"|"lattice"|"arc",
//    "levels": [..], "limit_level": int,           (prefractals; proxy depth)
//    "window": [x0,y0,x1,y1],                      (lattice; limit = Manhattan plane)
//    "segments": int}                              (arc; limit = full circle)
SpaceSequence build_sequence(const std::string& family_json);

}  // namespace hjnet
