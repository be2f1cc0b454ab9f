#pragma once

#include <string>
#include <vector>

#include "tfl/cones.hpp"
#include "tfl/gridmin.hpp"
#include "tfl/polyconfig.hpp"

namespace tfl {

// Standalone SVG documents, 512 px across, y up. Fluids are drawn in fixed
// colours (0 blue, 1 orange, 2 green), frozen cells darker; markers are black
// circles.
std::string svg_grid(const LabelGrid& g, const std::vector<Vec2>& markers = {});
std::string svg_polyconfig(const PolyConfig& c, const std::vector<Vec2>& markers = {});
std::string svg_cone(const ConeConfig& c, const PolyConfig* competitor = nullptr);

}  // namespace tfl
