// Acceptance suite: one PASS/FAIL line per check, non-zero exit on any FAIL.
// Run with check numbers as arguments to select a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tfl/cones.hpp"
#include "tfl/error.hpp"
#include "tfl/fermat.hpp"
#include "tfl/gridmin.hpp"
#include "tfl/polyconfig.hpp"
#include "tfl/scenarios.hpp"

using namespace tfl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... xs) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

SurfaceTensions random_tensions(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  const double a0 = u(rng), a1 = u(rng), a2 = u(rng);
  return SurfaceTensions(a0 + a1, a0 + a2, a1 + a2);
}

// Minimized grids kept for the elimination scan.
std::vector<LabelGrid> g_minimized;

// ---------------------------------------------------------------------------

Outcome angle_law(const SurfaceTensions& s, double tol_deg) {
  constexpr int kDirections = 64;
  Outcome o;
  double worst = 0.0, slowest = 0.0;
  EnergyParams p;
  p.sigmas = s;
  for (int seed = 1; seed <= 5; ++seed) {
    const LabelGrid g = junction_grid(256, s, kDirections);
    MinimizeOptions opts;
    opts.crofton_directions = kDirections;
    opts.seed = static_cast<std::uint64_t>(seed);
    const auto t0 = Clock::now();
    const MinimizeResult r = minimize(g, p, opts);
    const double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    g_minimized.push_back(r.grid);
    const auto triples = detect_triple_points(r.grid);
    if (triples.size() != 1) {
      o.pass = false;
      o.detail += fmt(" seed %d: %zu triple points;", seed, triples.size());
      continue;
    }
    try {
      const JunctionReport j = junction_angle_extract(r.grid, triples[0], 0.5, s);
      worst = std::max(worst, j.residual_vs_neumann);
      std::fprintf(stderr, "  seed %d: junction (%.3f, %.3f) angles %.2f %.2f %.2f, %.1f s\n", seed, j.location.x,
                   j.location.y, j.angles_deg[0], j.angles_deg[1], j.angles_deg[2], secs);
      if (j.residual_vs_neumann > tol_deg) o.pass = false;
    } catch (const Error& e) {
      o.pass = false;
      o.detail += fmt(" seed %d: %s;", seed, e.what());
    }
    if (secs >= 60.0) o.pass = false;
  }
  o.detail = fmt("max angle residual %.3f deg (tol %.1f), slowest run %.1f s;", worst, tol_deg, slowest) + o.detail;
  return o;
}

Outcome angle_law_symmetric() { return angle_law(SurfaceTensions(1, 1, 1), 3.0); }
Outcome angle_law_asymmetric() { return angle_law(SurfaceTensions(3, 4, 5), 5.0); }

// ---------------------------------------------------------------------------

// Coarse scan of the bounding box, then pattern refinement; the cost is
// convex so the refined minimum is global.
Vec2 grid_oracle(const Triangle& t, const FermatWeights& w) {
  double xmin = t[0].x, xmax = t[0].x, ymin = t[0].y, ymax = t[0].y;
  for (const Vec2& q : t) {
    xmin = std::min(xmin, q.x), xmax = std::max(xmax, q.x);
    ymin = std::min(ymin, q.y), ymax = std::max(ymax, q.y);
  }
  double step = std::max(xmax - xmin, ymax - ymin) / 200.0;
  Vec2 best = t[0];
  double best_cost = fermat_cost(best, t, w);
  for (double x = xmin; x <= xmax; x += step) {
    for (double y = ymin; y <= ymax; y += step) {
      const double c = fermat_cost({x, y}, t, w);
      if (c < best_cost) best_cost = c, best = {x, y};
    }
  }
  for (int round = 0; round < 10; ++round) {
    const Vec2 centre = best;
    for (int i = -20; i <= 20; ++i) {
      for (int j = -20; j <= 20; ++j) {
        const Vec2 q = centre + Vec2{i * step / 10, j * step / 10};
        const double c = fermat_cost(q, t, w);
        if (c < best_cost) best_cost = c, best = q;
      }
    }
    step /= 10;
  }
  return best;
}

Outcome fermat_consistency() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_grad = 0.0, worst_angle = 0.0, worst_oracle = 0.0, solve_secs = 0.0;
  const auto t0 = Clock::now();
  for (int k = 0; k < 100; ++k) {
    const SurfaceTensions s = random_tensions(rng);
    const NeumannAngles g = neumann_angles(s);
    const double opening = g.gamma12 * (0.02 + 0.96 * unit(rng));
    const double orientation = kTwoPi * unit(rng);
    const GoodTriangle tri = construct_good_triangle(s, opening, orientation);
    const FermatWeights w = FermatWeights::from_tensions(s);
    const auto ts = Clock::now();
    const FermatSolution sol = fermat_solve(tri.vertices, w);
    solve_secs += seconds_since(ts);
    const JunctionAngles a = junction_angles(sol.point, tri.vertices);
    worst_grad = std::max(worst_grad, sol.gradient_norm);
    worst_angle = std::max({worst_angle, std::abs(a.gamma01 - g.gamma01), std::abs(a.gamma12 - g.gamma12),
                            std::abs(a.gamma02 - g.gamma02)});
    worst_oracle = std::max(worst_oracle, distance(sol.point, grid_oracle(tri.vertices, w)) / diameter(tri.vertices));
  }
  const double total = seconds_since(t0);
  o.pass = worst_grad < 1e-10 && worst_angle < 1e-8 && worst_oracle < 1e-6 && total < 5.0;
  o.detail = fmt("max |grad| %.2e, max angle error %.2e rad, max oracle distance %.2e diam, %.3f s total (%.4f s solving)",
                 worst_grad, worst_angle, worst_oracle, total, solve_secs);
  return o;
}

// ---------------------------------------------------------------------------

Outcome cone_scaled_energy() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> count(2, 8), lab(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const SurfaceTensions s = random_tensions(rng);
    const int n = count(rng);
    std::vector<int> labels;
    std::vector<double> open;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      int l = lab(rng);
      while ((i > 0 && l == labels.back()) || (i == n - 1 && l == labels.front())) l = lab(rng);
      labels.push_back(l);
      open.push_back(0.2 + unit(rng));
      total += open.back();
    }
    for (double& v : open) v *= kTwoPi / total;
    const ConeConfig c = ConeConfig::from_openings(labels, open, kTwoPi * unit(rng));
    const double ref = scaled_energy_p(c, s, 1.0, 0.0);
    for (int e = 0; e <= 60; ++e) {
      const double t = std::pow(10.0, -3.0 + 0.1 * e);
      worst = std::max(worst, std::abs(scaled_energy_p(c, s, t, 0.0) - ref) / ref);
    }
  }
  o.pass = worst <= 1e-14;
  o.detail = fmt("max relative deviation %.2e over t in [1e-3, 1e3]", worst);
  return o;
}

// ---------------------------------------------------------------------------

Outcome sharp_monotonicity() {
  Outcome o;
  const SurfaceTensions s(1, 1, 1);
  double worst_identity = 0.0, worst_fd = 0.0, worst_oracle = 0.0;
  for (double d : {0.2, 0.4, 0.6, 0.8}) {
    const PolyConfig c = single_chord(1.0, d);
    std::vector<double> radii;
    for (int k = 0; k < 20; ++k) radii.push_back(d + (0.99 - d) * (k + 1) / 20.0);
    for (double r : radii) {
      const double scaled = energy_FS(c, s, {{0, 0}, r}) / r;
      const double gamma = gamma_deviation(c, s, r);
      worst_identity = std::max(worst_identity, std::abs(scaled - gamma));
      // Closed form: both sides equal 2 sqrt(r^2 - d^2) / r.
      const double exact = 2.0 * std::sqrt(r * r - d * d) / r;
      worst_oracle = std::max({worst_oracle, std::abs(scaled - exact), std::abs(gamma - exact)});
    }
    for (double res : sharp_monotonicity_check(c, s, radii)) worst_fd = std::max(worst_fd, res);
  }
  o.pass = worst_identity < 1e-8 && worst_fd < 1e-6 && worst_oracle < 1e-8;
  o.detail = fmt("max |F/r - gamma| %.2e, max derivative residual %.2e, max closed-form error %.2e", worst_identity,
                 worst_fd, worst_oracle);
  return o;
}

// ---------------------------------------------------------------------------

Outcome weak_monotonicity() {
  Outcome o;
  const SurfaceTensions equal(1, 1, 1), s345(3, 4, 5);
  const NeumannAngles g = neumann_angles(s345);
  std::vector<std::pair<PolyConfig, SurfaceTensions>> corpus;
  for (double a : {0.0, 0.3, 1.2}) corpus.push_back({junction_config(1.0, {0, 0}, {a, a + kPi}, {0, 1}), s345});
  corpus.push_back({junction_config(1.0, {0.2, 0.1}, {1.0, 1.0 + kPi}, {2, 0}), s345});
  for (double d : {0.1, 0.3, 0.5, 0.7, 0.9}) corpus.push_back({single_chord(1.0, d), equal});
  corpus.push_back({junction_config(1.0, {0, 0}, {rad(90), rad(210), rad(330)}, {0, 1, 2}), equal});
  corpus.push_back({junction_config(1.0, {0.15, -0.2}, {rad(10), rad(130), rad(250)}, {0, 1, 2}), equal});
  for (Vec2 j : {Vec2{0, 0}, Vec2{-0.1, 0.05}, Vec2{0.3, 0.2}}) {
    const double a0 = 0.4;
    corpus.push_back(
        {junction_config(1.0, j, {a0, a0 + g.of_fluid(0), a0 + g.of_fluid(0) + g.of_fluid(1)}, {2, 0, 1}), s345});
  }
  std::vector<double> grid;
  for (int k = 1; k <= 10; ++k) grid.push_back(0.1 * k);
  double worst = -1e300;
  int pairs = 0;
  for (const auto& [c, s] : corpus) {
    if (!stationarity_battery(c, s).stationary) {
      o.pass = false;
      o.detail += " a corpus entry is not stationary;";
    }
    for (size_t a = 0; a < grid.size(); ++a) {
      for (size_t b = a + 1; b < grid.size(); ++b) {
        const WeakMonotonicityTerms w = weak_monotonicity_terms(c, s, grid[a], grid[b], 0.0);
        worst = std::max(worst, w.lhs - w.rhs);
        ++pairs;
      }
    }
  }
  if (worst > 1e-12) o.pass = false;
  o.detail = fmt("%zu configurations, %d (rho, r) pairs, max lhs - rhs %.3e", corpus.size(), pairs, worst) + o.detail;
  return o;
}

// ---------------------------------------------------------------------------

PolyConfig random_polyconfig(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, kTwoPi), u(-0.6, 0.6), pick(0.0, 1.0);
  if (pick(rng) < 0.5) {
    const Vec2 junction{u(rng) * 0.5, u(rng) * 0.5};
    std::vector<double> rays{ang(rng), ang(rng), ang(rng)};
    std::sort(rays.begin(), rays.end());
    if (rays[1] - rays[0] < 0.2 || rays[2] - rays[1] < 0.2 || rays[0] + kTwoPi - rays[2] < 0.2) rays = {0.3, 2.4, 4.3};
    return junction_config(1.0, junction, rays, {0, 1, 2});
  }
  const double a = ang(rng);
  const Vec2 A = polar(1.0, a), B = polar(1.0, a + kPi + 0.8 * (pick(rng) - 0.5));
  std::vector<Vec2> pts{A};
  for (int k = 1; k < 5; ++k) pts.push_back(A + (k / 5.0) * (B - A) + Vec2{u(rng) * 0.25, u(rng) * 0.25});
  pts.push_back(B);
  return PolyConfig(1.0, {Interface{0, 2, pts}});
}

// Endpoint-sorted segment list, for comparing polyline geometry.
std::vector<std::array<double, 6>> segment_key(const PolyConfig& c) {
  std::vector<std::array<double, 6>> out;
  for (const Segment& s : c.segments()) {
    Vec2 a = s.a, b = s.b;
    if (std::make_pair(b.x, b.y) < std::make_pair(a.x, a.y)) std::swap(a, b);
    out.push_back({a.x, a.y, b.x, b.y, double(s.i), double(s.j)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome conical_projection_check() {
  Outcome o;
  const SurfaceTensions s(3, 4, 5);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> tt(0.2, 0.9), uc(-0.5, 0.5), ur(0.05, 0.5);
  double worst_idem = 0.0, worst_identity = 0.0;
  for (int k = 0; k < 20; ++k) {
    const PolyConfig c = random_polyconfig(rng);
    const double t = tt(rng);
    const PolyConfig p = conical_projection(c, t);
    const PolyConfig pp = conical_projection(p, t);
    // Idempotence as sets: region areas and interface mass in probe balls.
    const auto a1 = p.region_areas(), a2 = pp.region_areas();
    for (int l = 0; l < 3; ++l) worst_idem = std::max(worst_idem, std::abs(a1[l] - a2[l]));
    for (int q = 0; q < 20; ++q) {
      const Ball b{{uc(rng), uc(rng)}, ur(rng)};
      worst_idem = std::max(worst_idem, std::abs(energy_FS(p, s, b) - energy_FS(pp, s, b)));
    }
    worst_idem = std::max(worst_idem, std::abs(energy_FS(p, s, {{0, 0}, 1.0}) - energy_FS(pp, s, {{0, 0}, 1.0})));
    const double inside = energy_FS(p, s, {{0, 0}, t});
    worst_identity = std::max(worst_identity, std::abs(inside - conical_interior_energy(c, s, t)));
  }
  o.pass = worst_idem <= 1e-12 && worst_identity <= 1e-10;
  o.detail = fmt("20 configurations, idempotence error %.2e, interior cost vs t * crossings %.2e", worst_idem,
                 worst_identity);
  return o;
}

// ---------------------------------------------------------------------------

Outcome first_variation() {
  Outcome o;
  const SurfaceTensions s(1, 1, 1);
  const std::vector<Vec2> dirs{polar(1, 0.0), polar(1, 0.7), polar(1, 1.9), polar(1, 3.0), polar(1, 4.4),
                               polar(1, 5.5)};
  auto worst_over = [&](const PolyConfig& c, Vec2 centre, double radius, bool include_radial) {
    double w = 0.0;
    if (include_radial) w = std::abs(first_variation_residual(c, {centre, radius, std::nullopt}, s));
    for (Vec2 e : dirs) w = std::max(w, std::abs(first_variation_residual(c, {centre, radius, e}, s)));
    return w;
  };
  double lines = 0.0, balanced = 0.0, unbalanced_ratio = 1e300;
  const std::vector<double> radii{0.15, 0.3, 0.5};
  for (double a : {0.0, 0.5, 2.0}) {
    for (Vec2 centre : {Vec2{0, 0}, Vec2{0.1, -0.2}}) {
      // Line through the field centre.
      const PolyConfig line = junction_config(1.0, centre, {a, a + kPi}, {0, 1});
      for (double r : radii) lines = std::max(lines, worst_over(line, centre, r, true));
      const PolyConfig bal =
          junction_config(1.0, centre, {a + rad(90), a + rad(210), a + rad(330)}, {0, 1, 2});
      for (double r : radii) balanced = std::max(balanced, worst_over(bal, centre, r, true));
      // Openings 90, 135, 135: the translation fields see the force imbalance.
      const PolyConfig unb =
          junction_config(1.0, centre, {a + rad(90), a + rad(180), a + rad(315)}, {0, 1, 2});
      for (double r : radii) unbalanced_ratio = std::min(unbalanced_ratio, worst_over(unb, centre, r, false) / r);
    }
  }
  o.pass = lines < 1e-10 && balanced < 1e-10 && unbalanced_ratio > 0.05;
  o.detail = fmt("lines %.2e, balanced 120 deg %.2e, unbalanced min (max residual / sigma r) %.4f", lines, balanced,
                 unbalanced_ratio);
  return o;
}

// ---------------------------------------------------------------------------

// Competitor minus original, measured on a ball around the patch so that the
// second-order gains of tiny perturbations stay above round-off. NaN when the
// competitor also differs outside that ball.
double verified_delta(const ConeConfig& c, const SurfaceTensions& s, const ImprovementReport& r) {
  const double R = r.disk_radius, rho = 0.5 * R;
  const PolyConfig original = c.to_polyconfig(R);
  const double outside = energy_FS_annulus(*r.competitor, s, rho, R) - energy_FS_annulus(original, s, rho, R);
  if (std::abs(outside) > 1e-12 * R) return std::nan("");
  return energy_FS(*r.competitor, s, {{0, 0}, rho}) - energy_FS(original, s, {{0, 0}, rho});
}

Outcome classification() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int neumann = 0, neumann_ok = 0, improvable = 0, improvable_ok = 0;
  double worst_verified = -1e300;
  auto check_improvable = [&](const ConeConfig& c, const SurfaceTensions& s) {
    ++improvable;
    const ImprovementReport r = classify_cone(c, s);
    if (!r.improvable || !(r.energy_delta < 0.0) || !r.competitor) return;
    const double v = verified_delta(c, s, r);
    worst_verified = std::max(worst_verified, v);
    if (v < 0.0) ++improvable_ok;
  };
  for (int k = 0; k < 40; ++k) {
    const SurfaceTensions s = random_tensions(rng);
    const NeumannAngles g = neumann_angles(s);
    const double start = kTwoPi * unit(rng);
    // Both orientations of the three labels.
    for (const std::vector<int>& labels : {std::vector<int>{0, 1, 2}, std::vector<int>{2, 1, 0}}) {
      std::vector<double> open;
      for (int l : labels) open.push_back(g.of_fluid(l));
      ++neumann;
      const ImprovementReport r = classify_cone(ConeConfig::from_openings(labels, open, start), s);
      if (!r.improvable && r.mechanism == Mechanism::None) ++neumann_ok;
      for (int which = 0; which < 3; ++which) {
        for (double eps : {1e-6, -1e-6, 1e-4, -0.3}) {
          auto q = open;
          q[which] += eps;
          q[(which + 1) % 3] -= eps;
          check_improvable(ConeConfig::from_openings(labels, q, start), s);
        }
      }
    }
    // Six alternating sectors.
    for (const std::vector<int>& labels : {std::vector<int>{0, 1, 2, 0, 1, 2}, std::vector<int>{0, 1, 0, 1, 0, 1},
                                           std::vector<int>{2, 0, 2, 1, 2, 0}}) {
      std::vector<double> open;
      double total = 0.0;
      for (int i = 0; i < 6; ++i) open.push_back(0.3 + unit(rng)), total += open.back();
      for (double& v : open) v *= kTwoPi / total;
      check_improvable(ConeConfig::from_openings(labels, open, start), s);
    }
  }
  o.pass = neumann_ok == neumann && improvable_ok == improvable;
  o.detail = fmt("Neumann cones unimprovable %d/%d, perturbed and six-sector cones improvable %d/%d "
                 "(largest verified delta %.3e)",
                 neumann_ok, neumann, improvable_ok, improvable, worst_verified);
  return o;
}

// ---------------------------------------------------------------------------

Outcome elimination() {
  Outcome o;
  const SurfaceTensions s(3, 4, 5);
  EnergyParams p;
  p.sigmas = s;
  MinimizeOptions opts;
  opts.seed = 100;
  const MinimizeResult base = minimize(split_grid(256, 8), p, opts);
  g_minimized.push_back(base.grid);
  int removed = 0;
  for (int seed = 1; seed <= 5; ++seed) {
    LabelGrid g = base.grid;
    // One fluid 2 cell on a free cell a little off the interface.
    const auto c = g.cell_at({0.25 * (seed - 3), 0.25});
    g.labels[g.index(c[0], c[1])] = 2;
    opts.seed = static_cast<std::uint64_t>(seed);
    const MinimizeResult r = minimize(g, p, opts);
    if (r.grid.counts()[2] == 0) ++removed;
    g_minimized.push_back(r.grid);
  }
  size_t violations = 0;
  for (const LabelGrid& g : g_minimized) violations += elimination_scan(g, 0.05, {0.1, 0.2}).size();
  o.pass = removed == 5 && violations == 0;
  o.detail = fmt("speck removed in %d/5 seeds, %zu violations at eta = 0.05 over %zu minimized grids", removed,
                 violations, g_minimized.size());
  return o;
}

// ---------------------------------------------------------------------------

Outcome crofton_calibration() {
  Outcome o;
  LabelGrid square = make_square_grid(256, 1.0);
  for (int iy = 0; iy < 256; ++iy) {
    for (int ix = 128; ix < 256; ++ix) square.labels[square.index(ix, iy)] = 1;
  }
  LabelGrid disk = make_square_grid(256, 1.0);
  for (int k = 0; k < 256 * 256; ++k) {
    if (norm(disk.center(k)) <= 0.3) disk.labels[k] = 1;
  }
  const double split = crofton_perimeter(square, 0, 1, 8);
  const double circle = crofton_perimeter(disk, 0, 1, 8);
  const double e1 = std::abs(split - 1.0), e2 = std::abs(circle / (2 * kPi * 0.3) - 1.0);
  o.pass = e1 < 0.02 && e2 < 0.02;
  o.detail = fmt("split %.5f (error %.2f%%), disk %.5f vs %.5f (error %.2f%%)", split, 100 * e1, circle,
                 2 * kPi * 0.3, 100 * e2);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> checks{
      {"angle law, equal tensions", angle_law_symmetric},
      {"angle law, tensions 3 4 5", angle_law_asymmetric},
      {"fermat consistency", fermat_consistency},
      {"cone scaled energy", cone_scaled_energy},
      {"sharp monotonicity", sharp_monotonicity},
      {"weak monotonicity", weak_monotonicity},
      {"conical projection", conical_projection_check},
      {"first variation", first_variation},
      {"cone classification", classification},
      {"elimination", elimination},
      {"crofton calibration", crofton_calibration},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (size_t k = 0; k < checks.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = checks[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, checks[k].first, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
