#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tfl/energy.hpp"
#include "tfl/geometry.hpp"
#include "tfl/polyconfig.hpp"
#include "tfl/tensions.hpp"

namespace tfl {

// Cells of size h on a width x height lattice centred on the origin; cell
// (ix, iy) has centre ((ix + 0.5) h - width h / 2, (iy + 0.5) h - height h / 2)
// and y is the vertical (gravity) coordinate. Labels of cells outside the
// domain are kept at 0 and ignored.
struct LabelGrid {
  int width = 0, height = 0;
  double h = 1.0;
  std::vector<std::uint8_t> labels, domain, frozen;

  LabelGrid() = default;
  LabelGrid(int width, int height, double h);

  int index(int ix, int iy) const { return iy * width + ix; }
  bool contains(int ix, int iy) const { return ix >= 0 && iy >= 0 && ix < width && iy < height; }
  bool in_domain(int ix, int iy) const { return contains(ix, iy) && domain[index(ix, iy)]; }
  Vec2 center(int ix, int iy) const {
    return {(ix + 0.5) * h - 0.5 * width * h, (iy + 0.5) * h - 0.5 * height * h};
  }
  Vec2 center(int cell) const { return center(cell % width, cell / width); }
  // Cell containing x, clamped to the lattice.
  std::array<int, 2> cell_at(Vec2 x) const;
  int label_at(Vec2 x) const;

  std::array<int, 3> counts(bool unfrozen_only = false) const;
  int unfrozen_count() const;

  // Throws InvalidInput unless labels are in {0,1,2} on the domain, frozen
  // cells are in the domain and the domain is 4-connected and non-empty.
  void validate() const;
};

// Square grid of n x n cells covering [-R, R]^2; the domain is the set of cell
// centres in the closed disk of radius R.
LabelGrid make_disk_grid(int n, double R = 1.0);
// Square of the given side centred on the origin, every cell in the domain.
LabelGrid make_square_grid(int n, double side = 1.0);

// Freeze in-domain cells whose centre lies farther than R - thickness * h from
// the origin.
void freeze_outer_ring(LabelGrid& g, double R, double thickness_cells);

// Paint sectors about `junction`: sector k spans from ray_angles[k-1] to
// ray_angles[k] and carries labels[k] (ray angles increasing, one full turn).
void paint_sectors(LabelGrid& g, Vec2 junction, const std::vector<double>& ray_angles,
                   const std::vector<int>& labels, bool frozen_only = false, bool unfrozen_only = false);

// One direction of the Cauchy-Crofton stencil: neighbour offset and the
// weight (1/2) dtheta * h / |v| of each crossing.
struct CroftonDirection {
  int dx, dy;
  double weight;
};
// The N shortest primitive lattice directions (N a multiple of 4 in [4, 64]);
// throws InvalidInput otherwise.
std::vector<CroftonDirection> crofton_stencil(int directions, double h);

double crofton_perimeter(const LabelGrid& g, int i, int j, int directions = 8);

enum class Mode { D, V, DV };
const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct Schedule {
  double t0 = -1.0;  // negative: max(sigma) * h
  double cooling = 0.95;
  int sweeps = 400;
  int quiet_greedy_sweeps = 3;
  int max_greedy_sweeps = 5000;
};

struct MinimizeOptions {
  Mode mode = Mode::D;
  std::array<double, 3> target_volumes{0.0, 0.0, 0.0};  // cell counts of unfrozen cells
  double volume_penalty_C = -1.0;                      // negative: 4 max(sigma) / h
  Schedule schedule;
  int crofton_directions = 8;
  std::uint64_t seed = 0;
  // Coarse-to-fine passes before the full-resolution anneal (D mode only).
  int levels = 0;
  // In D mode the zero-temperature phase alternates greedy sweeps with
  // alpha-expansion moves (one minimum cut per label).
  bool expansion_moves = true;
  // Keep the first N accepted annealing moves for auditing.
  std::size_t max_logged_moves = 0;
};

// surface = sum sigma_ij crofton_perimeter(i, j); wetting = sum beta_j h *
// (cell edges of E_j on the domain boundary); gravity = sum rho_j g z h^2;
// volume_penalty = C h^2 sum_j max(0, |n_j - v_j| - 1/2) over unfrozen cell
// counts n_j in V and DV modes.
EnergyBreakdown grid_energy(const LabelGrid& g, const EnergyParams& p, const MinimizeOptions& opts);

struct MoveRecord {
  int cell;
  int from, to;
  double delta, temperature, draw;  // accepted iff delta <= 0 or draw < exp(-delta / T)
};

struct MinimizeResult {
  LabelGrid grid;
  std::vector<double> trace;       // total energy before sweep 0 and after every sweep
  std::size_t greedy_start = 0;    // trace index where the zero-temperature phase begins
  std::vector<MoveRecord> moves;
  EnergyBreakdown initial, final;
};

// Simulated annealing over single-cell relabels, then a greedy phase that
// accepts only strict decreases until quiet_greedy_sweeps sweeps accept
// nothing. Frozen cells never change.
MinimizeResult minimize(const LabelGrid& g, const EnergyParams& p, const MinimizeOptions& opts);

struct PsiEstimate {
  double estimate = 0.0;  // current F_S near the ball minus the best restart
  double spread = 0.0;    // max - min over restarts
  double current = 0.0;
  std::vector<double> restarts;
};

// Freezes everything outside the ball and re-minimizes the surface energy
// inside from `restarts` seeds (run in parallel).
PsiEstimate psi_estimate(const LabelGrid& g, const EnergyParams& p, const Ball& ball, const MinimizeOptions& opts,
                         int restarts = 5);

struct EliminationViolation {
  Vec2 center;
  double radius;
  int fluid;
  double volume, half_volume;
};
// Balls centred on cell centres (stride of half the ball radius) that fit in
// the domain; records fluids with |E_i cap B_rho| <= eta rho^2 that still reach
// B_{rho/2}.
std::vector<EliminationViolation> elimination_scan(const LabelGrid& g, double eta, const std::vector<double>& radii);

// Same-resolution grid sampling B(center, lambda * extent) by nearest cell,
// rescaled onto the ball of radius extent = min(width, height) h / 2 about the
// origin. Gravity must be scaled by lambda for energies of the result.
LabelGrid blowup_rescale(const LabelGrid& g, Vec2 center, double lambda);

// Cell corners whose four surrounding in-domain cells show all three labels,
// merged within 3h.
std::vector<Vec2> detect_triple_points(const LabelGrid& g);

struct JunctionReport {
  Vec2 location;
  std::array<double, 3> angles_deg{};  // opening occupied by fluids 0, 1, 2
  double residual_vs_neumann = 0.0;    // max |angle - Gamma| in degrees
  int samples = 0;
};
JunctionReport junction_angle_extract(const LabelGrid& g, Vec2 point, double window, const SurfaceTensions& s);

// Worker cap from TFL_THREADS, else the hardware concurrency.
unsigned worker_threads();

}  // namespace tfl
