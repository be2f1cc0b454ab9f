#pragma once

#include <string>
#include <variant>
#include <vector>

#include "tfl/cones.hpp"
#include "tfl/gridmin.hpp"
#include "tfl/polyconfig.hpp"

namespace tfl {

// Frozen ring thickness (cells) that keeps every free cell's Crofton stencil
// inside the disk.
double ring_cells_for(int crofton_directions);

// Neumann junction rays: the fluid 0 sector is centred on the +y axis, then
// fluids 1 and 2 follow counter-clockwise, each sector as wide as its Gamma.
std::vector<double> neumann_ray_angles(const SurfaceTensions& s);
inline const std::vector<int> kNeumannSectorLabels{2, 0, 1};

// Disk grids of n x n cells on B_1 with a frozen ring sized for the stencil.
//   junction: boundary arcs from neumann_ray_angles, interior painted as the
//             same sectors about `start`
//   split:    fluid 0 above y = 0, fluid 1 below
//   speck:    split plus one fluid 2 cell near (0.25, 0.25)
//   blob:     fluid 0 with a centred square of fluid 2 of side `blob_side`
//   double:   fluid 0 above, fluid 1 below, a fluid 2 lens on y = 0 whose tips
//             at (+-0.4, 0) are two triple junctions
//   cone:     the cone painted about the origin
LabelGrid junction_grid(int n, const SurfaceTensions& s, int directions, Vec2 start = {0.15, -0.105});
LabelGrid split_grid(int n, int directions);
LabelGrid speck_grid(int n, int directions);
LabelGrid blob_grid(int n, int directions, double blob_side = 0.2);
LabelGrid double_junction_grid(int n, int directions);
LabelGrid cone_grid(int n, const ConeConfig& c, int directions);

// Built-in geometry by name. Grid scenarios use `resolution` cells per side.
//   grid:     junction, split, speck, blob, double-junction, cone-neumann-grid
//   polyline: chord-<d> (e.g. chord-0.6), junction-balanced (120 degree rays),
//             junction-unbalanced (openings 90, 135, 135), junction-neumann
//   cone:     cone-neumann, cone-six (labels 0,1,2,0,1,2), cone-fill (0,1,0,1,2,1)
using Geometry = std::variant<LabelGrid, PolyConfig, ConeConfig>;
Geometry builtin_scenario(const std::string& name, const SurfaceTensions& s, int resolution, int directions);
std::vector<std::string> builtin_scenario_names();

}  // namespace tfl
