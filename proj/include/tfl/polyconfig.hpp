#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tfl/energy.hpp"
#include "tfl/geometry.hpp"
#include "tfl/tensions.hpp"

namespace tfl {

// A polyline interface between fluids i < j. Traversing the points in order,
// fluid i lies on the left and fluid j on the right, so the right-hand normal
// (dy, -dx) points from region i into region j.
struct Interface {
  int i = 0;
  int j = 1;
  std::vector<Vec2> points;
};

struct Segment {
  Vec2 a, b;
  int i, j;
};

struct Ball {
  Vec2 center;
  double radius;
};

struct BoundaryArc {
  double start, end;  // radians, end > start, counter-clockwise
  int label;
};

// Three-fluid configuration in the disk of radius R about the origin. Regions
// are implied by the interfaces: every interface ends on the domain circle, at
// a junction shared with other interfaces, or closes on itself. When no
// interface reaches the circle the whole boundary belongs to `outer_label`.
class PolyConfig {
 public:
  PolyConfig(double domain_radius, std::vector<Interface> interfaces, int outer_label = 0);

  double domain_radius() const { return radius_; }
  int outer_label() const { return outer_label_; }
  const std::vector<Interface>& interfaces() const { return interfaces_; }

  std::vector<Segment> segments() const;
  const std::vector<BoundaryArc>& boundary_arcs() const { return arcs_; }

  // |E_j| and the first moments int_{E_j} z dA, by Green's theorem.
  std::array<double, 3> region_areas() const;
  std::array<double, 3> region_z_moments() const;

  static PolyConfig from_json(const std::string& text);
  std::string to_json() const;

 private:
  void compute_boundary_arcs();

  double radius_;
  int outer_label_;
  std::vector<Interface> interfaces_;
  std::vector<BoundaryArc> arcs_;
};

// Helpers for building configurations.
PolyConfig single_chord(double domain_radius, double distance, int below = 1, int above = 0);
// Rays from `junction` at the given absolute angles; ray k separates the
// sector ending at it (label labels[k]) from the one starting at it
// (labels[k+1 mod n]). Rays run to the domain circle.
PolyConfig junction_config(double domain_radius, Vec2 junction, const std::vector<double>& ray_angles,
                           const std::vector<int>& sector_labels);

// Sum of sigma_ij * length(interface inside the ball).
double energy_FS(const PolyConfig& c, const SurfaceTensions& s, const Ball& ball);
// Same over the origin-centred annulus rho < |x| < r.
double energy_FS_annulus(const PolyConfig& c, const SurfaceTensions& s, double rho, double r);

// Surface over the whole domain, wetting on the domain circle, exact gravity.
EnergyBreakdown energy_FSWP(const PolyConfig& c, const EnergyParams& p);

// gamma(r) = sum_j alpha_j int_{B_r cap dE_j} (nu.x)^2 / |x|^3 ds, by adaptive
// quadrature per segment (absolute tolerance 1e-10).
double gamma_deviation(const PolyConfig& c, const SurfaceTensions& s, double r);

// sum_j alpha_j / 8 int_{B_r \ B_rho} |x|^{-1} <x/|x|, nu>^4 ds.
double fourth_power_integral(const PolyConfig& c, const SurfaceTensions& s, double rho, double r);

// C^1 piecewise-cubic cutoff: 1 below 1/2, 0 above 1, non-increasing.
struct CutoffProfile {
  static double value(double q);
  static double derivative(double q);
};

// Smoothed counterparts of F_S(B_r) and gamma used in the sharp monotonicity
// argument. `psi_aux` is the weighted normal moment; the Psi deviation of
// unconstrained minimization lives in gridmin as psi_estimate.
double phi_aux(const PolyConfig& c, const SurfaceTensions& s, double r);
double psi_aux(const PolyConfig& c, const SurfaceTensions& s, double r);

struct MonotonicityTrace {
  std::vector<double> radii;
  std::vector<double> scaled_energy;  // F_S(B_r) / r
  std::vector<double> gamma;
  std::vector<double> fourth_power;   // accumulated from radii.front()
  std::vector<double> correction;     // C r^2

  std::string to_csv() const;
};

MonotonicityTrace monotonicity_trace(const PolyConfig& c, const SurfaceTensions& s,
                                     const std::vector<double>& radii, double C = 0.0);

struct WeakMonotonicityTerms {
  double lhs, rhs;
};
WeakMonotonicityTerms weak_monotonicity_terms(const PolyConfig& c, const SurfaceTensions& s,
                                              double rho, double r, double C);

// Vector field T(x) = phi(|x - c|/radius) (x - c) when `direction` is empty, or
// T(x) = radius * phi(|x - c|/radius) e for a unit direction e.
struct TestField {
  Vec2 center;
  double radius = 1.0;
  std::optional<Vec2> direction;

  Vec2 value(Vec2 x) const;
  // grad[i][k] = d T_i / d x_k
  std::array<std::array<double, 2>, 2> gradient(Vec2 x) const;
};

// sum_j alpha_j int_{dE_j} div_{E_j} T ds.
double first_variation_residual(const PolyConfig& c, const TestField& t, const SurfaceTensions& s);

struct StationarityReport {
  double max_residual = 0.0;
  double threshold = 0.0;
  bool stationary = false;
};

// Radial and two translation fields at 8 centres (origin plus 7 on the ring
// |x| = 0.4 R) and 3 radii (0.15, 0.3, 0.5) R. Threshold 1e-6 * max(sigma) * R.
StationarityReport stationarity_battery(const PolyConfig& c, const SurfaceTensions& s);

// |d/dr (F_S(B_r)/r) - d gamma/dr| by central differences with step 1e-4 r.
// Throws NotStationary when the battery fails.
std::vector<double> sharp_monotonicity_check(const PolyConfig& c, const SurfaceTensions& s,
                                             const std::vector<double>& radii);

// Cone over the trace on the circle |x| = t inside B_t; unchanged outside.
// Throws TangentialCrossing when an interface touches the circle tangentially.
PolyConfig conical_projection(const PolyConfig& c, double t);

// t * sum of sigma over the crossings of the circle |x| = t.
double conical_interior_energy(const PolyConfig& c, const SurfaceTensions& s, double t);

}  // namespace tfl
