#pragma once

#include <string>
#include <vector>

#include "tropenum/tropical_graphs.hpp"

namespace tropenum {

struct SvgOptions {
  double width = 400;  // pixels; height follows the aspect ratio of the viewport
  std::string caption;  // e.g. the multiplicity
};

// Edges as segments, ends clipped at the viewport, vertices as dots, marked points as
// rings. The viewport is the bounding box of the vertices plus a 10% margin.
std::string render_svg(const ParamTropicalCurve& curve, const SvgOptions& options = {});

}  // namespace tropenum
