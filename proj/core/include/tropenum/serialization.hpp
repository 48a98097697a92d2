#pragma once

#include <string>
#include <string_view>

#include "tropenum/tropical_graphs.hpp"

namespace tropenum {

// JSON documents with keys "vertices", "edges", "legs" and, for curves, "positions".
// Rationals are written as "p/q" strings. indent < 0 gives compact output.
std::string to_json(const CombinatorialType& type, int indent = -1);
std::string to_json(const ParamTropicalCurve& curve, int indent = -1);

// Throw ParseError on malformed documents.
CombinatorialType type_from_json(std::string_view text);
ParamTropicalCurve curve_from_json(std::string_view text);

}  // namespace tropenum
