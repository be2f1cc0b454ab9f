#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tfl/polyconfig.hpp"
#include "tfl/tensions.hpp"

namespace tfl {

struct Sector {
  int label = 0;
  double start = 0.0, end = 0.0;  // radians, counter-clockwise
  double opening() const { return end - start; }
};

// Partition of the plane into labeled sectors about the origin. Sectors are
// contiguous and counter-clockwise; the first starts in [0, 2pi) and the last
// ends at first.start + 2pi.
class ConeConfig {
 public:
  explicit ConeConfig(std::vector<Sector> sectors);
  static ConeConfig from_openings(const std::vector<int>& labels, const std::vector<double>& openings,
                                  double start = 0.0);

  const std::vector<Sector>& sectors() const { return sectors_; }
  size_t size() const { return sectors_.size(); }
  const Sector& operator[](size_t k) const { return sectors_[k]; }
  // Sector k ends at ray k; ray k separates sector k from sector k+1.
  double ray_angle(size_t k) const { return sectors_[k].end; }

  // The cone restricted to the disk of radius R (rays from the origin).
  PolyConfig to_polyconfig(double R) const;

 private:
  std::vector<Sector> sectors_;
};

// r * sum over boundary rays of sigma between the adjacent labels.
double cone_energy(const ConeConfig& c, const SurfaceTensions& s, double r);

// cone_energy(c, s, t) / t + C t^2.
double scaled_energy_p(const ConeConfig& c, const SurfaceTensions& s, double t, double C);

enum class Mechanism { None, TwoFluidFillIn, GoodTriangleReplacement };
const char* to_string(Mechanism m);

struct ImprovementReport {
  bool improvable = false;
  Mechanism mechanism = Mechanism::None;
  double energy_delta = 0.0;  // competitor minus original on the disk below
  double disk_radius = 1.0;
  int sector = -1;            // index of the modified sector
  std::optional<PolyConfig> competitor;
  std::string description;
};

struct ClassifyOptions {
  double disk_radius = 1.0;
  double patch_fraction = 0.1;  // patch size relative to the disk
  double angle_tol = 1e-9;
};

// Looks at every run of three consecutive sectors (k, k+1, k+2); the first run
// whose outer labels agree and whose middle opening is below pi is filled in
// near the origin: the middle wedge is cut by the chord at radius
// patch_fraction * R and the inner triangle goes to the flanking fluid.
ImprovementReport detect_fill_in(const ConeConfig& c, const SurfaceTensions& s, const ClassifyOptions& opts = {});

// Fill-in first; otherwise a good-triangle patch in the sector with the largest
// deficit Gamma(label) - opening, when that deficit exceeds angle_tol.
ImprovementReport classify_cone(const ConeConfig& c, const SurfaceTensions& s, const ClassifyOptions& opts = {});

// Volume repair by thin rectangles laid along boundary rays between radii R/4
// and 3R/4. Each transfer of volume m from fluid `from` to fluid `to` uses a
// rectangle of width m / (R/2) on the donor side of a ray separating them.
struct VolumeRectangle {
  int ray = 0;
  int from = 0, to = 0;
  double width = 0.0, length = 0.0, inner_radius = 0.0;
};
struct VolumeFix {
  std::vector<VolumeRectangle> rectangles;
  double cost_bound = 0.0;  // sum of 2 * width * sigma(from, to)
};
VolumeFix rectangle_volume_fix(const ConeConfig& c, const std::array<double, 3>& delta_v, double R,
                               const SurfaceTensions& s);

}  // namespace tfl
