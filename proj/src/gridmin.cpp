#include "tfl/gridmin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "maxflow.hpp"
#include "tfl/error.hpp"

namespace tfl {

// ---------------------------------------------------------------------------
// LabelGrid

LabelGrid::LabelGrid(int w, int hgt, double cell)
    : width(w), height(hgt), h(cell) {
  if (w <= 0 || hgt <= 0 || !(cell > 0.0)) throw Error(ErrorKind::InvalidInput, "grid needs positive size");
  const size_t n = static_cast<size_t>(w) * static_cast<size_t>(hgt);
  labels.assign(n, 0);
  domain.assign(n, 1);
  frozen.assign(n, 0);
}

std::array<int, 2> LabelGrid::cell_at(Vec2 x) const {
  const int ix = static_cast<int>(std::floor((x.x + 0.5 * width * h) / h));
  const int iy = static_cast<int>(std::floor((x.y + 0.5 * height * h) / h));
  return {std::clamp(ix, 0, width - 1), std::clamp(iy, 0, height - 1)};
}

int LabelGrid::label_at(Vec2 x) const {
  const auto c = cell_at(x);
  return labels[index(c[0], c[1])];
}

std::array<int, 3> LabelGrid::counts(bool unfrozen_only) const {
  std::array<int, 3> n{0, 0, 0};
  for (size_t k = 0; k < labels.size(); ++k) {
    if (domain[k] && !(unfrozen_only && frozen[k])) ++n[labels[k]];
  }
  return n;
}

int LabelGrid::unfrozen_count() const {
  int n = 0;
  for (size_t k = 0; k < labels.size(); ++k) n += domain[k] && !frozen[k];
  return n;
}

void LabelGrid::validate() const {
  const size_t n = static_cast<size_t>(width) * static_cast<size_t>(height);
  if (labels.size() != n || domain.size() != n || frozen.size() != n) {
    throw Error(ErrorKind::InvalidInput, "grid arrays do not match its size");
  }
  int first = -1;
  size_t in_domain_cells = 0;
  for (size_t k = 0; k < n; ++k) {
    if (frozen[k] && !domain[k]) throw Error(ErrorKind::InvalidInput, "frozen cell outside the domain");
    if (!domain[k]) continue;
    if (labels[k] > 2) throw Error(ErrorKind::InvalidInput, "cell label outside {0,1,2}");
    if (first < 0) first = static_cast<int>(k);
    ++in_domain_cells;
  }
  if (first < 0) throw Error(ErrorKind::InvalidInput, "empty domain");
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<int> stack{first};
  seen[first] = 1;
  size_t reached = 0;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    ++reached;
    const int ix = c % width, iy = c / width;
    const int nb[4][2] = {{ix + 1, iy}, {ix - 1, iy}, {ix, iy + 1}, {ix, iy - 1}};
    for (const auto& q : nb) {
      if (!in_domain(q[0], q[1])) continue;
      const int k = index(q[0], q[1]);
      if (!seen[k]) {
        seen[k] = 1;
        stack.push_back(k);
      }
    }
  }
  if (reached != in_domain_cells) throw Error(ErrorKind::InvalidInput, "domain is not connected");
}

LabelGrid make_disk_grid(int n, double R) {
  LabelGrid g(n, n, 2.0 * R / n);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) g.domain[g.index(ix, iy)] = norm(g.center(ix, iy)) <= R;
  }
  return g;
}

LabelGrid make_square_grid(int n, double side) { return LabelGrid(n, n, side / n); }

void freeze_outer_ring(LabelGrid& g, double R, double thickness_cells) {
  const double inner = R - thickness_cells * g.h;
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      const int k = g.index(ix, iy);
      if (g.domain[k] && norm(g.center(ix, iy)) > inner) g.frozen[k] = 1;
    }
  }
}

void paint_sectors(LabelGrid& g, Vec2 junction, const std::vector<double>& ray_angles,
                   const std::vector<int>& labels, bool frozen_only, bool unfrozen_only) {
  const size_t n = ray_angles.size();
  if (n < 2 || labels.size() != n) throw Error(ErrorKind::InvalidInput, "sector painting needs matching rays and labels");
  for (size_t k = 1; k < n; ++k) {
    if (!(ray_angles[k] > ray_angles[k - 1])) throw Error(ErrorKind::InvalidInput, "ray angles must increase");
  }
  if (!(ray_angles.back() - ray_angles.front() < kTwoPi)) {
    throw Error(ErrorKind::InvalidInput, "ray angles must span less than a full turn");
  }
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      const int c = g.index(ix, iy);
      if (!g.domain[c] || (frozen_only && !g.frozen[c]) || (unfrozen_only && g.frozen[c])) continue;
      const Vec2 v = g.center(ix, iy) - junction;
      const double rel = wrap_two_pi(std::atan2(v.y, v.x) - ray_angles.front());
      size_t sector = 0;
      for (size_t k = 1; k < n; ++k) {
        if (rel <= ray_angles[k] - ray_angles.front()) {
          sector = k;
          break;
        }
      }
      g.labels[c] = static_cast<std::uint8_t>(labels[sector]);
    }
  }
}

// ---------------------------------------------------------------------------
// Cauchy-Crofton perimeter

std::vector<CroftonDirection> crofton_stencil(int directions, double h) {
  if (directions < 4 || directions > 64 || directions % 4 != 0) {
    throw Error(ErrorKind::InvalidInput, "Crofton direction count must be a multiple of 4 in [4, 64]");
  }
  // Primitive lattice vectors of the upper half-plane, shortest first. Ties
  // are grouped by orbit under the square's symmetries (4 members each), so
  // every prefix of a multiple of 4 is symmetric; |v|^2 = 65 holds two orbits.
  std::vector<std::array<int, 2>> v;
  for (int b = 0; b <= 8; ++b) {
    for (int a = -8; a <= 8; ++a) {
      if ((b == 0 && a <= 0) || std::gcd(std::abs(a), b) != 1) continue;
      v.push_back({a, b});
    }
  }
  auto key = [](const std::array<int, 2>& p) {
    const int x = std::abs(p[0]), y = std::abs(p[1]);
    return std::array<int, 2>{x * x + y * y, std::max(x, y)};
  };
  std::stable_sort(v.begin(), v.end(), [&](const auto& p, const auto& q) { return key(p) < key(q); });
  v.resize(static_cast<size_t>(directions));
  auto angle = [](const std::array<int, 2>& q) { return std::atan2(q[1], q[0]); };
  std::sort(v.begin(), v.end(), [&](const auto& p, const auto& q) { return angle(p) < angle(q); });
  const size_t n = v.size();
  std::vector<CroftonDirection> out;
  for (size_t k = 0; k < n; ++k) {
    const double before = k == 0 ? angle(v[n - 1]) - kPi : angle(v[k - 1]);
    const double after = k + 1 == n ? angle(v[0]) + kPi : angle(v[k + 1]);
    const double dtheta = 0.5 * (after - before);
    out.push_back({v[k][0], v[k][1], 0.5 * dtheta * h / std::hypot(v[k][0], v[k][1])});
  }
  return out;
}

namespace {

using SigmaTable = std::array<std::array<double, 3>, 3>;

SigmaTable sigma_table(const SurfaceTensions& s) {
  SigmaTable t{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) t[a][b] = s.sigma(a, b);
  }
  return t;
}

// Sum over in-domain pairs (c, c + v) of weight * f(label c, label c+v).
template <typename F>
double pair_sum(const LabelGrid& g, const std::vector<CroftonDirection>& st, F&& f) {
  double total = 0.0;
  for (const CroftonDirection& d : st) {
    double part = 0.0;
    for (int iy = 0; iy < g.height; ++iy) {
      for (int ix = 0; ix < g.width; ++ix) {
        const int c = g.index(ix, iy);
        if (!g.domain[c] || !g.in_domain(ix + d.dx, iy + d.dy)) continue;
        part += f(g.labels[c], g.labels[g.index(ix + d.dx, iy + d.dy)]);
      }
    }
    total += d.weight * part;
  }
  return total;
}

int boundary_edges(const LabelGrid& g, int ix, int iy) {
  return !g.in_domain(ix + 1, iy) + !g.in_domain(ix - 1, iy) + !g.in_domain(ix, iy + 1) + !g.in_domain(ix, iy - 1);
}

double penalty_term(double n, double v) { return std::max(0.0, std::abs(n - v) - 0.5); }

double penalty_constant(const LabelGrid& g, const EnergyParams& p, const MinimizeOptions& opts) {
  return opts.volume_penalty_C >= 0.0 ? opts.volume_penalty_C : 4.0 * p.sigmas.max() / g.h;
}

int stencil_reach(const std::vector<CroftonDirection>& st) {
  int r = 0;
  for (const auto& d : st) r = std::max({r, std::abs(d.dx), std::abs(d.dy)});
  return r;
}

}  // namespace

double crofton_perimeter(const LabelGrid& g, int i, int j, int directions) {
  if (i == j) return 0.0;
  const auto st = crofton_stencil(directions, g.h);
  return pair_sum(g, st, [i, j](int a, int b) { return ((a == i && b == j) || (a == j && b == i)) ? 1.0 : 0.0; });
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::D: return "D";
    case Mode::V: return "V";
    case Mode::DV: return "DV";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) {
  if (s == "D") return Mode::D;
  if (s == "V") return Mode::V;
  if (s == "DV") return Mode::DV;
  throw Error(ErrorKind::InvalidInput, "mode must be D, V or DV, got '" + s + "'");
}

EnergyBreakdown grid_energy(const LabelGrid& g, const EnergyParams& p, const MinimizeOptions& opts) {
  const auto st = crofton_stencil(opts.crofton_directions, g.h);
  const SigmaTable sig = sigma_table(p.sigmas);
  EnergyBreakdown e;
  e.surface = pair_sum(g, st, [&sig](int a, int b) { return sig[a][b]; });
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      const int c = g.index(ix, iy);
      if (!g.domain[c]) continue;
      const int l = g.labels[c];
      e.wetting += p.beta[l] * g.h * boundary_edges(g, ix, iy);
      e.gravity += p.rho[l] * p.g * g.center(ix, iy).y * g.h * g.h;
    }
  }
  if (opts.mode != Mode::D) {
    const auto n = g.counts(true);
    const double C = penalty_constant(g, p, opts);
    for (int l = 0; l < 3; ++l) e.volume_penalty += C * g.h * g.h * penalty_term(n[l], opts.target_volumes[l]);
  }
  e.total = e.surface + e.wetting + e.gravity + e.volume_penalty;
  return e;
}

// ---------------------------------------------------------------------------
// Minimization

namespace {

// Every stencil neighbour of a free cell must be in the domain, so the
// boundary terms never change in D mode.
void check_frozen_ring(const LabelGrid& g, const std::vector<CroftonDirection>& st) {
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      const int c = g.index(ix, iy);
      if (!g.domain[c] || g.frozen[c]) continue;
      for (const auto& d : st) {
        if (!g.in_domain(ix + d.dx, iy + d.dy) || !g.in_domain(ix - d.dx, iy - d.dy)) {
          std::ostringstream os;
          os << "free cell (" << ix << ", " << iy << ") sees past the domain boundary; freeze a thicker ring";
          throw Error(ErrorKind::FrozenRingTooThin, os.str());
        }
      }
    }
  }
}

void check_volumes(const LabelGrid& g, const MinimizeOptions& opts) {
  double total = 0.0;
  for (double v : opts.target_volumes) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorKind::InfeasibleVolumes, "target volumes must be non-negative");
    total += v;
  }
  const int free_cells = g.unfrozen_count();
  if (std::abs(total - free_cells) > 1.0) {
    std::ostringstream os;
    os << "target volumes sum to " << total << " cells but " << free_cells << " cells are free";
    throw Error(ErrorKind::InfeasibleVolumes, os.str());
  }
}

class Annealer {
 public:
  Annealer(const LabelGrid& g, const EnergyParams& p, const MinimizeOptions& opts)
      : g_(g), p_(p), opts_(opts), st_(crofton_stencil(opts.crofton_directions, g.h)),
        sig_(sigma_table(p.sigmas)), rng_(opts.seed) {
    C_ = penalty_constant(g, p, opts);
    use_penalty_ = opts.mode != Mode::D;
    counts_ = g.counts(true);
    for (int c = 0; c < static_cast<int>(g.labels.size()); ++c) {
      if (g.domain[c] && !g.frozen[c]) free_.push_back(c);
    }
    for (const auto& d : st_) {
      for (int sgn : {1, -1}) offsets_.push_back({sgn * d.dx, sgn * d.dy, d.weight});
    }
    reach_ = stencil_reach(st_);
  }

  MinimizeResult run() {
    MinimizeResult res;
    res.initial = grid_energy(g_, p_, opts_);
    double energy = res.initial.total;
    res.trace.push_back(energy);
    const double t0 = opts_.schedule.t0 >= 0.0 ? opts_.schedule.t0 : p_.sigmas.max() * g_.h;
    double temperature = t0;
    for (int s = 0; s < opts_.schedule.sweeps; ++s) {
      energy += sweep(temperature, &res.moves);
      res.trace.push_back(energy);
      temperature *= opts_.schedule.cooling;
    }
    res.greedy_start = res.trace.size() - 1;
    const bool expand = opts_.expansion_moves && opts_.mode == Mode::D;
    int greedy_sweeps = 0;
    while (true) {
      int quiet = 0;
      while (greedy_sweeps < opts_.schedule.max_greedy_sweeps && quiet < opts_.schedule.quiet_greedy_sweeps) {
        accepted_ = 0;
        energy += sweep(0.0, nullptr);
        res.trace.push_back(energy);
        quiet = accepted_ == 0 ? quiet + 1 : 0;
        ++greedy_sweeps;
      }
      if (!expand || greedy_sweeps >= opts_.schedule.max_greedy_sweeps) break;
      bool improved = false;
      for (int alpha = 0; alpha < 3; ++alpha) {
        for (const double d : {expansion(alpha), shrink(alpha)}) {
          if (d < 0.0) {
            energy += d;
            res.trace.push_back(energy);
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
    res.final = grid_energy(g_, p_, opts_);
    res.grid = std::move(g_);
    return res;
  }

 private:
  struct Offset {
    int dx, dy;
    double weight;
  };

  double delta(int c, int from, int to) const {
    const int ix = c % g_.width, iy = c / g_.width;
    double d = 0.0;
    for (const Offset& o : offsets_) {
      if (!g_.in_domain(ix + o.dx, iy + o.dy)) continue;
      const int nb = g_.labels[g_.index(ix + o.dx, iy + o.dy)];
      d += o.weight * (sig_[to][nb] - sig_[from][nb]);
    }
    const int edges = boundary_edges(g_, ix, iy);
    if (edges) d += (p_.beta[to] - p_.beta[from]) * g_.h * edges;
    d += (p_.rho[to] - p_.rho[from]) * p_.g * g_.center(ix, iy).y * g_.h * g_.h;
    if (use_penalty_) {
      const auto& v = opts_.target_volumes;
      d += C_ * g_.h * g_.h *
           (penalty_term(counts_[from] - 1, v[from]) - penalty_term(counts_[from], v[from]) +
            penalty_term(counts_[to] + 1, v[to]) - penalty_term(counts_[to], v[to]));
    }
    return d;
  }

  // Labels among the stencil neighbours other than the cell's own, as a bit mask.
  // Cells within Chebyshev distance `radius` of a cell whose 4-neighbour has
  // another label or lies outside the domain.
  std::vector<std::uint8_t> interface_band(int radius) const {
    const int W = g_.width, H = g_.height;
    std::vector<int> seed(W * H, 0);
    for (int iy = 0; iy < H; ++iy) {
      for (int ix = 0; ix < W; ++ix) {
        const int c = g_.index(ix, iy);
        if (!g_.domain[c]) continue;
        const int l = g_.labels[c];
        for (const auto& [dx, dy] : {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}}) {
          if (!g_.in_domain(ix + dx, iy + dy) || g_.labels[g_.index(ix + dx, iy + dy)] != l) {
            seed[c] = 1;
            break;
          }
        }
      }
    }
    // Separable box dilation with running counts.
    std::vector<int> rows(W * H, 0);
    for (int iy = 0; iy < H; ++iy) {
      int run = 0;
      for (int ix = -radius; ix < W; ++ix) {
        if (ix + radius < W) run += seed[g_.index(ix + radius, iy)];
        if (ix - radius - 1 >= 0) run -= seed[g_.index(ix - radius - 1, iy)];
        if (ix >= 0) rows[g_.index(ix, iy)] = run;
      }
    }
    std::vector<std::uint8_t> out(W * H, 0);
    for (int ix = 0; ix < W; ++ix) {
      int run = 0;
      for (int iy = -radius; iy < H; ++iy) {
        if (iy + radius < H) run += rows[g_.index(ix, iy + radius)];
        if (iy - radius - 1 >= 0) run -= rows[g_.index(ix, iy - radius - 1)];
        if (iy >= 0) out[g_.index(ix, iy)] = run > 0;
      }
    }
    return out;
  }

  unsigned neighbour_labels(int c) const {
    const int ix = c % g_.width, iy = c / g_.width;
    unsigned mask = 0;
    for (const Offset& o : offsets_) {
      if (g_.in_domain(ix + o.dx, iy + o.dy)) mask |= 1u << g_.labels[g_.index(ix + o.dx, iy + o.dy)];
    }
    return mask & ~(1u << g_.labels[c]);
  }

  double sweep(double temperature, std::vector<MoveRecord>* log) {
    std::shuffle(free_.begin(), free_.end(), rng_);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double strict = -1e-13 * p_.sigmas.max() * g_.h;
    double change = 0.0;
    // Cells farther than the stencil reach from every label change have no
    // candidate label; cells that become active mid-sweep wait for the next one.
    const auto active = interface_band(reach_);
    for (int c : free_) {
      if (!active[c]) continue;
      const unsigned mask = neighbour_labels(c);
      if (!mask) continue;
      int options[2], n = 0;
      for (int l = 0; l < 3; ++l) {
        if (mask & (1u << l)) options[n++] = l;
      }
      const int to = n == 1 ? options[0] : options[std::uniform_int_distribution<int>(0, n - 1)(rng_)];
      const int from = g_.labels[c];
      const double d = delta(c, from, to);
      double draw = -1.0;
      bool accept;
      if (temperature <= 0.0) {
        accept = d < strict;
      } else if (d <= 0.0) {
        accept = true;
      } else {
        draw = unif(rng_);
        accept = draw < std::exp(-d / temperature);
      }
      if (!accept) continue;
      g_.labels[c] = static_cast<std::uint8_t>(to);
      --counts_[from];
      ++counts_[to];
      change += d;
      ++accepted_;
      if (log && log->size() < opts_.max_logged_moves) log->push_back({c, from, to, d, temperature, draw});
    }
    return change;
  }

  // Optimal simultaneous switch of any set of free cells to `alpha` (one
  // graph cut; the pair costs are metric so the cut is exact).
  double expansion(int alpha) {
    std::vector<std::uint8_t> proposal(g_.labels.size(), static_cast<std::uint8_t>(alpha));
    return fusion(proposal, [&](int c) { return g_.labels[c] != alpha; });
  }

  // Every cell of `gamma` may hand itself to the nearest other label. Moving a
  // junction straight along one interface needs two fluids to advance at once,
  // which no single expansion can do without tilting a pinned interface.
  double shrink(int gamma) {
    const int W = g_.width, n = static_cast<int>(g_.labels.size());
    std::vector<std::uint8_t> proposal(g_.labels);
    std::vector<int> queue;
    std::vector<std::uint8_t> seen(n, 0);
    for (int c = 0; c < n; ++c) {
      if (g_.domain[c] && g_.labels[c] != gamma) queue.push_back(c), seen[c] = 1;
    }
    if (queue.empty()) return 0.0;
    for (size_t head = 0; head < queue.size(); ++head) {
      const int c = queue[head];
      const int ix = c % W, iy = c / W;
      for (const auto& [dx, dy] : {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}}) {
        if (!g_.in_domain(ix + dx, iy + dy)) continue;
        const int q = g_.index(ix + dx, iy + dy);
        if (seen[q]) continue;
        seen[q] = 1;
        proposal[q] = proposal[c];
        queue.push_back(q);
      }
    }
    return fusion(proposal, [&](int c) { return g_.labels[c] == gamma; });
  }

  // Binary fusion of the current labels with `proposal` over free cells near
  // the interfaces that pass `eligible`: each cell keeps its label or takes the
  // proposed one, whichever the minimum cut prefers. Exact when every pair
  // cost satisfies E00 + E11 <= E01 + E10, which the triangle inequality on
  // sigma gives for expansions and shrinks. Returns the energy change, applied
  // only when negative.
  template <typename Eligible>
  double fusion(const std::vector<std::uint8_t>& proposal, Eligible&& eligible) {
    const int n = static_cast<int>(g_.labels.size());
    std::vector<int> var(n, -1);
    int nvars = 0;
    // Only cells near the current interfaces take part; interfaces move by at
    // most the band width per cut and further cuts follow while they help.
    const auto band = interface_band(reach_ + 2);
    for (int c : free_) {
      if (band[c] && proposal[c] != g_.labels[c] && eligible(c)) var[c] = nvars++;
    }
    if (nvars == 0) return 0.0;
    std::vector<double> u0(nvars, 0.0), u1(nvars, 0.0);
    detail::MaxFlow flow(nvars, p_.sigmas.max() * g_.h);
    for (int c = 0; c < n; ++c) {
      if (var[c] < 0) continue;
      const int ix = c % g_.width, iy = c / g_.width;
      const int l = g_.labels[c], a = proposal[c];
      const int edges = boundary_edges(g_, ix, iy);
      const double z = g_.center(ix, iy).y * g_.h * g_.h;
      u0[var[c]] += p_.beta[l] * g_.h * edges + p_.rho[l] * p_.g * z;
      u1[var[c]] += p_.beta[a] * g_.h * edges + p_.rho[a] * p_.g * z;
    }
    for (int c = 0; c < n; ++c) {
      if (!g_.domain[c]) continue;
      const int ix = c % g_.width, iy = c / g_.width;
      for (const auto& d : st_) {
        if (!g_.in_domain(ix + d.dx, iy + d.dy)) continue;
        const int q = g_.index(ix + d.dx, iy + d.dy);
        const int vp = var[c], vq = var[q];
        if (vp < 0 && vq < 0) continue;
        const int lp = g_.labels[c], lq = g_.labels[q];
        const double w = d.weight;
        if (vq < 0) {
          u0[vp] += w * sig_[lp][lq];
          u1[vp] += w * sig_[proposal[c]][lq];
        } else if (vp < 0) {
          u0[vq] += w * sig_[lp][lq];
          u1[vq] += w * sig_[lp][proposal[q]];
        } else {
          const int ap = proposal[c], aq = proposal[q];
          const double e00 = w * sig_[lp][lq], e01 = w * sig_[lp][aq];
          const double e10 = w * sig_[ap][lq], e11 = w * sig_[ap][aq];
          // E = e00 + (e10 - e00) x_p + (e11 - e10) x_q + (e01 + e10 - e00 - e11) (1 - x_p) x_q
          u0[vp] += e00;
          u1[vp] += e10;
          u1[vq] += e11 - e10;
          flow.add_edge(vp, vq, std::max(0.0, e01 + e10 - e00 - e11), 0.0);
        }
      }
    }
    for (int v = 0; v < nvars; ++v) flow.add_terminal(v, u1[v], u0[v]);
    flow.solve();

    const double before = grid_energy(g_, p_, opts_).total;
    std::vector<std::pair<int, int>> changed;
    for (int c = 0; c < n; ++c) {
      if (var[c] >= 0 && !flow.source_side(var[c])) {
        changed.push_back({c, g_.labels[c]});
        g_.labels[c] = proposal[c];
      }
    }
    if (changed.empty()) return 0.0;
    const double after = grid_energy(g_, p_, opts_).total;
    if (!(after < before - 1e-13 * p_.sigmas.max() * g_.h)) {
      for (const auto& [c, l] : changed) g_.labels[c] = static_cast<std::uint8_t>(l);
      return 0.0;
    }
    for (const auto& [c, l] : changed) {
      --counts_[l];
      ++counts_[g_.labels[c]];
    }
    return after - before;
  }

  LabelGrid g_;
  const EnergyParams& p_;
  const MinimizeOptions& opts_;
  std::vector<CroftonDirection> st_;
  SigmaTable sig_;
  std::mt19937_64 rng_;
  double C_ = 0.0;
  bool use_penalty_ = false;
  std::array<int, 3> counts_{};
  std::vector<int> free_;
  std::vector<Offset> offsets_;
  std::size_t accepted_ = 0;
  int reach_ = 1;
};

// 2x2 block coarsening. Frozen data wins the block vote; cells that would see
// past the domain edge at the coarse level are frozen too.
LabelGrid coarsen(const LabelGrid& g, int reach) {
  LabelGrid c(g.width / 2, g.height / 2, 2.0 * g.h);
  for (int iy = 0; iy < c.height; ++iy) {
    for (int ix = 0; ix < c.width; ++ix) {
      std::array<int, 3> votes{0, 0, 0}, frozen_votes{0, 0, 0};
      bool all_in = true, any_frozen = false;
      for (int q = 0; q < 4; ++q) {
        const int fx = 2 * ix + (q & 1), fy = 2 * iy + (q >> 1);
        const int k = g.index(fx, fy);
        if (!g.domain[k]) {
          all_in = false;
          continue;
        }
        ++votes[g.labels[k]];
        if (g.frozen[k]) {
          any_frozen = true;
          ++frozen_votes[g.labels[k]];
        }
      }
      const int k = c.index(ix, iy);
      c.domain[k] = all_in;
      if (!all_in) continue;
      const auto& v = any_frozen ? frozen_votes : votes;
      c.labels[k] = static_cast<std::uint8_t>(std::max_element(v.begin(), v.end()) - v.begin());
      c.frozen[k] = any_frozen;
    }
  }
  for (int iy = 0; iy < c.height; ++iy) {
    for (int ix = 0; ix < c.width; ++ix) {
      const int k = c.index(ix, iy);
      if (!c.domain[k] || c.frozen[k]) continue;
      for (int dy = -reach; dy <= reach && !c.frozen[k]; ++dy) {
        for (int dx = -reach; dx <= reach; ++dx) {
          if (!c.in_domain(ix + dx, iy + dy)) {
            c.frozen[k] = 1;
            break;
          }
        }
      }
    }
  }
  return c;
}

}  // namespace

MinimizeResult minimize(const LabelGrid& g, const EnergyParams& p, const MinimizeOptions& opts) {
  g.validate();
  p.validate();
  const auto st = crofton_stencil(opts.crofton_directions, g.h);
  if (opts.mode != Mode::V) check_frozen_ring(g, st);
  if (opts.mode != Mode::D) check_volumes(g, opts);

  if (opts.levels > 0 && opts.mode == Mode::D && g.width % 2 == 0 && g.height % 2 == 0) {
    LabelGrid coarse = coarsen(g, stencil_reach(st));
    MinimizeOptions sub = opts;
    sub.levels = opts.levels - 1;
    sub.seed = opts.seed * 0x9E3779B97F4A7C15ull + 1;
    sub.max_logged_moves = 0;
    if (sub.schedule.t0 >= 0.0) sub.schedule.t0 *= 2.0;
    const LabelGrid solved = minimize(coarse, p, sub).grid;
    LabelGrid start = g;
    for (int iy = 0; iy < g.height; ++iy) {
      for (int ix = 0; ix < g.width; ++ix) {
        const int k = g.index(ix, iy);
        const int kc = solved.index(ix / 2, iy / 2);
        if (g.domain[k] && !g.frozen[k] && solved.domain[kc] && !solved.frozen[kc]) start.labels[k] = solved.labels[kc];
      }
    }
    MinimizeOptions fine = opts;
    fine.levels = 0;
    MinimizeResult res = Annealer(start, p, fine).run();
    res.initial = grid_energy(g, p, fine);
    res.trace.front() = res.initial.total;
    return res;
  }
  MinimizeOptions single = opts;
  single.levels = 0;
  return Annealer(g, p, single).run();
}

// ---------------------------------------------------------------------------
// Deviation, elimination, blow-ups, junctions

unsigned worker_threads() {
  if (const char* env = std::getenv("TFL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Surface energy of pairs touching at least one free cell.
double free_surface(const LabelGrid& g, const SigmaTable& sig, const std::vector<CroftonDirection>& st) {
  double total = 0.0;
  for (const CroftonDirection& d : st) {
    double part = 0.0;
    for (int iy = 0; iy < g.height; ++iy) {
      for (int ix = 0; ix < g.width; ++ix) {
        const int c = g.index(ix, iy);
        if (!g.domain[c] || !g.in_domain(ix + d.dx, iy + d.dy)) continue;
        const int nb = g.index(ix + d.dx, iy + d.dy);
        if (g.frozen[c] && g.frozen[nb]) continue;
        part += sig[g.labels[c]][g.labels[nb]];
      }
    }
    total += d.weight * part;
  }
  return total;
}

}  // namespace

PsiEstimate psi_estimate(const LabelGrid& g, const EnergyParams& p, const Ball& ball, const MinimizeOptions& opts,
                         int restarts) {
  g.validate();
  if (restarts < 1) throw Error(ErrorKind::InvalidInput, "need at least one restart");
  const auto st = crofton_stencil(opts.crofton_directions, g.h);
  const int reach = stencil_reach(st);
  LabelGrid local = g;
  bool any = false;
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      const int k = g.index(ix, iy);
      if (distance(g.center(ix, iy), ball.center) > ball.radius) {
        if (g.domain[k]) local.frozen[k] = 1;
        continue;
      }
      any = true;
      bool ok = g.domain[k] && !g.frozen[k];
      for (int dy = -reach; dy <= reach && ok; ++dy) {
        for (int dx = -reach; dx <= reach && ok; ++dx) ok = g.in_domain(ix + dx, iy + dy);
      }
      if (!ok) throw Error(ErrorKind::BallOutsideDomain, "ball must lie strictly inside the free region");
    }
  }
  if (!any) throw Error(ErrorKind::BallOutsideDomain, "ball contains no cell centre");

  EnergyParams surface_only{p.sigmas, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 0.0};
  MinimizeOptions sub = opts;
  sub.mode = Mode::D;
  sub.levels = 0;
  sub.max_logged_moves = 0;
  const SigmaTable sig = sigma_table(p.sigmas);

  PsiEstimate out;
  out.current = free_surface(local, sig, st);
  out.restarts.assign(restarts, 0.0);
  const unsigned workers = std::min<unsigned>(worker_threads(), restarts);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int r = static_cast<int>(w); r < restarts; r += static_cast<int>(workers)) {
        MinimizeOptions mine = sub;
        mine.seed = opts.seed + 1000003ull * static_cast<std::uint64_t>(r + 1);
        out.restarts[r] = free_surface(Annealer(local, surface_only, mine).run().grid, sig, st);
      }
    });
  }
  for (auto& t : pool) t.join();
  const auto [lo, hi] = std::minmax_element(out.restarts.begin(), out.restarts.end());
  out.estimate = out.current - *lo;
  out.spread = *hi - *lo;
  return out;
}

std::vector<EliminationViolation> elimination_scan(const LabelGrid& g, double eta, const std::vector<double>& radii) {
  std::vector<EliminationViolation> out;
  for (double rho : radii) {
    if (!(rho > 0.0)) throw Error(ErrorKind::InvalidInput, "scan radii must be positive");
    const int span = static_cast<int>(std::ceil(rho / g.h));
    const int stride = std::max(1, static_cast<int>(rho / (2.0 * g.h)));
    for (int cy = 0; cy < g.height; cy += stride) {
      for (int cx = 0; cx < g.width; cx += stride) {
        const Vec2 ctr = g.center(cx, cy);
        std::array<int, 3> full{0, 0, 0}, half{0, 0, 0};
        bool inside = true;
        for (int dy = -span; dy <= span && inside; ++dy) {
          for (int dx = -span; dx <= span; ++dx) {
            const int ix = cx + dx, iy = cy + dy;
            const double r = std::hypot(dx, dy) * g.h;
            if (r > rho) continue;
            if (!g.in_domain(ix, iy)) {
              inside = false;
              break;
            }
            const int l = g.labels[g.index(ix, iy)];
            ++full[l];
            if (r <= 0.5 * rho) ++half[l];
          }
        }
        if (!inside) continue;
        for (int l = 0; l < 3; ++l) {
          const double vol = full[l] * g.h * g.h;
          if (vol <= eta * rho * rho && half[l] > 0) {
            out.push_back({ctr, rho, l, vol, half[l] * g.h * g.h});
          }
        }
      }
    }
  }
  return out;
}

LabelGrid blowup_rescale(const LabelGrid& g, Vec2 center, double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw Error(ErrorKind::InvalidInput, "lambda must lie in (0, 1]");
  const double extent = 0.5 * std::min(g.width, g.height) * g.h;
  const double r = lambda * extent;
  const double half_w = 0.5 * g.width * g.h, half_h = 0.5 * g.height * g.h;
  if (std::abs(center.x) + r > half_w + 1e-12 || std::abs(center.y) + r > half_h + 1e-12) {
    throw Error(ErrorKind::BallOutsideDomain, "blow-up ball leaves the grid");
  }
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      if (!g.domain[g.index(ix, iy)] && distance(g.center(ix, iy), center) < r - 0.5 * g.h) {
        throw Error(ErrorKind::BallOutsideDomain, "blow-up ball leaves the domain");
      }
    }
  }
  LabelGrid out(g.width, g.height, g.h);
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      const int k = out.index(ix, iy);
      const Vec2 x = out.center(ix, iy);
      const auto src = g.cell_at(center + lambda * x);
      const int ks = g.index(src[0], src[1]);
      out.domain[k] = norm(x) <= extent && g.domain[ks];
      out.labels[k] = out.domain[k] ? g.labels[ks] : 0;
    }
  }
  return out;
}

std::vector<Vec2> detect_triple_points(const LabelGrid& g) {
  struct Cluster {
    Vec2 sum;
    int n;
    Vec2 mean() const { return sum / n; }
  };
  std::vector<Cluster> clusters;
  for (int iy = 1; iy < g.height; ++iy) {
    for (int ix = 1; ix < g.width; ++ix) {
      unsigned mask = 0;
      bool ok = true;
      for (int q = 0; q < 4 && ok; ++q) {
        const int cx = ix - 1 + (q & 1), cy = iy - 1 + (q >> 1);
        ok = g.in_domain(cx, cy);
        if (ok) mask |= 1u << g.labels[g.index(cx, cy)];
      }
      if (!ok || mask != 7u) continue;
      const Vec2 corner{ix * g.h - 0.5 * g.width * g.h, iy * g.h - 0.5 * g.height * g.h};
      bool merged = false;
      for (Cluster& c : clusters) {
        if (distance(c.mean(), corner) <= 3.0 * g.h) {
          c.sum = c.sum + corner;
          ++c.n;
          merged = true;
          break;
        }
      }
      if (!merged) clusters.push_back({corner, 1});
    }
  }
  std::vector<Vec2> out;
  for (const Cluster& c : clusters) out.push_back(c.mean());
  return out;
}

JunctionReport junction_angle_extract(const LabelGrid& g, Vec2 point, double window, const SurfaceTensions& s) {
  if (!(window > 0.0)) throw Error(ErrorKind::InvalidInput, "window radius must be positive");
  std::vector<Vec2> found;
  for (Vec2 q : detect_triple_points(g)) {
    if (distance(q, point) <= window) found.push_back(q);
  }
  if (found.empty()) throw Error(ErrorKind::NoJunctionInWindow, "no triple point inside the window");
  if (found.size() > 1) {
    throw Error(ErrorKind::MultipleJunctions, std::to_string(found.size()) + " triple points inside the window");
  }
  JunctionReport rep;
  rep.location = found.front();
  const int n = std::max(720, static_cast<int>(std::ceil(16.0 * kTwoPi * window / g.h)));
  std::array<int, 3> hits{0, 0, 0};
  for (int k = 0; k < n; ++k) {
    const Vec2 x = rep.location + polar(window, kTwoPi * (k + 0.5) / n);
    const auto c = g.cell_at(x);
    if (!g.in_domain(c[0], c[1]) || distance(g.center(c[0], c[1]), x) > g.h) {
      throw Error(ErrorKind::InvalidInput, "sampling circle leaves the domain");
    }
    ++hits[g.labels[g.index(c[0], c[1])]];
  }
  const NeumannAngles gam = neumann_angles(s);
  rep.samples = n;
  for (int l = 0; l < 3; ++l) {
    rep.angles_deg[l] = 360.0 * hits[l] / n;
    rep.residual_vs_neumann = std::max(rep.residual_vs_neumann, std::abs(rep.angles_deg[l] - deg(gam.of_fluid(l))));
  }
  return rep;
}

}  // namespace tfl
