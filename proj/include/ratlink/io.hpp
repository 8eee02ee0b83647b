#pragma once

#include <string>

#include "ratlink/circuit.hpp"
#include "ratlink/lift.hpp"

namespace ratlink {

// JSON schema, integers only:
//   {"p":..,"q":..,"components":..,"loops":[[[x,y,z],..],..],
//    "stick_counts":{"x":..,"y":..,"z":..},"stage":"baseline|corner|final"}
// Loops list maximal-stick vertices in cyclic order without repeating the
// first vertex.
std::string emit_json(const LiftedLink& ll);
LiftedLink parse_json(const std::string& text);

// Wavefront OBJ: one `v` line per vertex, one `l` element per loop that closes
// back to its first index.
std::string emit_obj(const LiftedLink& ll);

// SVG of a planar circuit: 10 px per lattice unit, path1/path2 colored,
// labeled endpoints drawn as annotated dots.
std::string emit_svg(const RegularCircuit& rc);

}  // namespace ratlink
