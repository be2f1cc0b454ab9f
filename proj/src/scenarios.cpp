#include "tfl/scenarios.hpp"

#include <cmath>
#include <cstdlib>

#include "tfl/error.hpp"

namespace tfl {
namespace {

LabelGrid ringed_disk(int n, int directions) {
  LabelGrid g = make_disk_grid(n, 1.0);
  freeze_outer_ring(g, 1.0, ring_cells_for(directions));
  return g;
}

template <class F>
void paint(LabelGrid& g, F label_of) {
  for (int c = 0; c < static_cast<int>(g.labels.size()); ++c) {
    if (g.domain[c]) g.labels[c] = static_cast<std::uint8_t>(label_of(g.center(c)));
  }
}

}  // namespace

double ring_cells_for(int crofton_directions) {
  double longest = 0.0;
  for (const auto& d : crofton_stencil(crofton_directions, 1.0)) longest = std::max(longest, std::hypot(d.dx, d.dy));
  return std::ceil(longest) + 1.0;
}

std::vector<double> neumann_ray_angles(const SurfaceTensions& s) {
  const NeumannAngles gam = neumann_angles(s);
  const double a0 = kPi / 2 - gam.of_fluid(0) / 2;
  return {a0, a0 + gam.of_fluid(0), a0 + gam.of_fluid(0) + gam.of_fluid(1)};
}

LabelGrid junction_grid(int n, const SurfaceTensions& s, int directions, Vec2 start) {
  LabelGrid g = ringed_disk(n, directions);
  const auto rays = neumann_ray_angles(s);
  paint_sectors(g, {0.0, 0.0}, rays, kNeumannSectorLabels, true, false);
  paint_sectors(g, start, rays, kNeumannSectorLabels, false, true);
  return g;
}

LabelGrid split_grid(int n, int directions) {
  LabelGrid g = ringed_disk(n, directions);
  paint(g, [](Vec2 x) { return x.y > 0.0 ? 0 : 1; });
  return g;
}

LabelGrid speck_grid(int n, int directions) {
  LabelGrid g = split_grid(n, directions);
  const auto [ix, iy] = g.cell_at({0.25, 0.25});
  g.labels[g.index(ix, iy)] = 2;
  return g;
}

LabelGrid blob_grid(int n, int directions, double blob_side) {
  LabelGrid g = ringed_disk(n, directions);
  const double half = 0.5 * blob_side;
  paint(g, [half](Vec2 x) { return std::abs(x.x) < half && std::abs(x.y) < half ? 2 : 0; });
  return g;
}

LabelGrid double_junction_grid(int n, int directions) {
  LabelGrid g = ringed_disk(n, directions);
  paint(g, [](Vec2 x) {
    if (std::abs(x.y) < 0.2 * (1.0 - std::abs(x.x) / 0.4)) return 2;
    return x.y > 0.0 ? 0 : 1;
  });
  return g;
}

LabelGrid cone_grid(int n, const ConeConfig& c, int directions) {
  LabelGrid g = ringed_disk(n, directions);
  std::vector<double> rays;
  std::vector<int> labels;
  // Both conventions end sector k at ray k.
  for (size_t k = 0; k < c.size(); ++k) {
    rays.push_back(c.ray_angle(k));
    labels.push_back(c[k].label);
  }
  paint_sectors(g, {0.0, 0.0}, rays, labels);
  return g;
}

Geometry builtin_scenario(const std::string& name, const SurfaceTensions& s, int resolution, int directions) {
  if (name == "junction") return junction_grid(resolution, s, directions);
  if (name == "split") return split_grid(resolution, directions);
  if (name == "speck") return speck_grid(resolution, directions);
  if (name == "blob") return blob_grid(resolution, directions);
  if (name == "double-junction") return double_junction_grid(resolution, directions);
  const NeumannAngles gam = neumann_angles(s);
  const ConeConfig neumann = ConeConfig::from_openings({0, 1, 2}, {gam.of_fluid(0), gam.of_fluid(1), gam.of_fluid(2)});
  if (name == "cone-neumann-grid") return cone_grid(resolution, neumann, directions);
  if (name == "cone-neumann") return neumann;
  if (name == "cone-six") return ConeConfig::from_openings({0, 1, 2, 0, 1, 2}, std::vector<double>(6, kPi / 3));
  if (name == "cone-fill") return ConeConfig::from_openings({0, 1, 0, 1, 2, 1}, std::vector<double>(6, kPi / 3));
  if (name == "junction-balanced") return junction_config(1.0, {}, {rad(90), rad(210), rad(330)}, {2, 0, 1});
  if (name == "junction-unbalanced") return junction_config(1.0, {}, {rad(90), rad(180), rad(315)}, {2, 0, 1});
  if (name == "junction-neumann") return junction_config(1.0, {}, neumann_ray_angles(s), kNeumannSectorLabels);
  if (name.rfind("chord-", 0) == 0) {
    const std::string tail = name.substr(6);
    char* end = nullptr;
    const double d = std::strtod(tail.c_str(), &end);
    if (tail.empty() || *end != '\0' || !(d >= 0.0 && d < 1.0)) {
      throw Error(ErrorKind::InvalidInput, "chord distance must lie in [0, 1): " + name);
    }
    return single_chord(1.0, d);
  }
  throw Error(ErrorKind::InvalidInput, "unknown scenario '" + name + "'");
}

std::vector<std::string> builtin_scenario_names() {
  return {"junction",          "split",           "speck",        "blob",     "double-junction",
          "cone-neumann-grid", "chord-<d>",       "junction-balanced", "junction-unbalanced",
          "junction-neumann",  "cone-neumann",    "cone-six",     "cone-fill"};
}

}  // namespace tfl
