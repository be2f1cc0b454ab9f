#include "tfl/cones.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "tfl/error.hpp"
#include "tfl/fermat.hpp"

namespace tfl {

namespace {

constexpr double kAngleSlack = 1e-12;

// Interface from p to q with `left` on its left-hand side.
Interface oriented(Vec2 p, Vec2 q, int left, int right) {
  if (left < right) return {left, right, {p, q}};
  return {right, left, {q, p}};
}

// Interface from p to q with `near` on the side containing `witness`.
Interface oriented_by(Vec2 p, Vec2 q, int near, int far, Vec2 witness) {
  return cross(q - p, witness - p) > 0.0 ? oriented(p, q, near, far) : oriented(p, q, far, near);
}

size_t next(size_t k, size_t n) { return (k + 1) % n; }
size_t prev(size_t k, size_t n) { return (k + n - 1) % n; }

// Ray k of the cone, from `from` to the domain circle.
Interface cone_ray(const ConeConfig& c, size_t k, double R, Vec2 from) {
  const size_t n = c.size();
  return oriented(from, polar(R, c.ray_angle(k)), c[next(k, n)].label, c[k].label);
}

}  // namespace

ConeConfig::ConeConfig(std::vector<Sector> sectors) : sectors_(std::move(sectors)) {
  const size_t n = sectors_.size();
  if (n < 2) throw Error(ErrorKind::InvalidInput, "a cone needs at least two sectors");
  const Sector& first = sectors_.front();
  if (!(first.start >= 0.0 && first.start < kTwoPi)) {
    throw Error(ErrorKind::InvalidInput, "first sector must start in [0, 2pi)");
  }
  for (size_t k = 0; k < n; ++k) {
    const Sector& sec = sectors_[k];
    if (sec.label < 0 || sec.label > 2) throw Error(ErrorKind::InvalidInput, "sector labels must be 0, 1 or 2");
    if (!(sec.opening() > 0.0)) throw Error(ErrorKind::InvalidInput, "sector openings must be positive");
    if (sec.label == sectors_[next(k, n)].label) {
      throw Error(ErrorKind::InvalidInput, "adjacent sectors must carry distinct labels");
    }
    if (k + 1 < n && std::abs(sectors_[k + 1].start - sec.end) > kAngleSlack) {
      throw Error(ErrorKind::InvalidInput, "sectors must be contiguous");
    }
  }
  if (std::abs(sectors_.back().end - (first.start + kTwoPi)) > 1e-10) {
    throw Error(ErrorKind::InvalidInput, "sectors must cover the full turn");
  }
}

ConeConfig ConeConfig::from_openings(const std::vector<int>& labels, const std::vector<double>& openings,
                                     double start) {
  if (labels.size() != openings.size()) throw Error(ErrorKind::InvalidInput, "labels and openings differ in length");
  double total = 0.0;
  for (double o : openings) total += o;
  if (std::abs(total - kTwoPi) > 1e-10) throw Error(ErrorKind::InvalidInput, "openings must sum to 2pi");
  std::vector<Sector> out;
  double a = wrap_two_pi(start);
  for (size_t k = 0; k < labels.size(); ++k) {
    // Absorb rounding so the last sector closes the turn exactly.
    const double b = k + 1 == labels.size() ? wrap_two_pi(start) + kTwoPi : a + openings[k];
    out.push_back({labels[k], a, b});
    a = b;
  }
  return ConeConfig(std::move(out));
}

PolyConfig ConeConfig::to_polyconfig(double R) const {
  std::vector<Interface> rays;
  for (size_t k = 0; k < size(); ++k) rays.push_back(cone_ray(*this, k, R, Vec2{}));
  return PolyConfig(R, std::move(rays), sectors_.front().label);
}

double cone_energy(const ConeConfig& c, const SurfaceTensions& s, double r) {
  double total = 0.0;
  for (size_t k = 0; k < c.size(); ++k) total += s.sigma(c[k].label, c[next(k, c.size())].label);
  return r * total;
}

double scaled_energy_p(const ConeConfig& c, const SurfaceTensions& s, double t, double C) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidInput, "t must be positive");
  return cone_energy(c, s, t) / t + C * t * t;
}

const char* to_string(Mechanism m) {
  switch (m) {
    case Mechanism::None: return "None";
    case Mechanism::TwoFluidFillIn: return "TwoFluidFillIn";
    case Mechanism::GoodTriangleReplacement: return "GoodTriangleReplacement";
  }
  return "?";
}

ImprovementReport detect_fill_in(const ConeConfig& c, const SurfaceTensions& s, const ClassifyOptions& opts) {
  const size_t n = c.size();
  const double R = opts.disk_radius;
  const double r0 = opts.patch_fraction * R;
  ImprovementReport rep;
  rep.disk_radius = R;
  for (size_t k = 0; k < n; ++k) {
    const size_t m = next(k, n);
    const int flank = c[k].label;
    const int middle = c[m].label;
    if (c[next(m, n)].label != flank || !(c[m].opening() < kPi)) continue;

    const Vec2 a = polar(r0, c.ray_angle(k));
    const Vec2 b = polar(r0, c.ray_angle(m));
    std::vector<Interface> parts;
    for (size_t q = 0; q < n; ++q) {
      if (q == k || q == m) continue;
      parts.push_back(cone_ray(c, q, R, Vec2{}));
    }
    parts.push_back(cone_ray(c, k, R, a));
    parts.push_back(cone_ray(c, m, R, b));
    parts.push_back(oriented_by(a, b, flank, middle, Vec2{}));

    rep.improvable = true;
    rep.mechanism = Mechanism::TwoFluidFillIn;
    rep.sector = static_cast<int>(m);
    rep.energy_delta = s.sigma(flank, middle) * (distance(a, b) - 2.0 * r0);
    rep.competitor = PolyConfig(R, std::move(parts), c[0].label);
    std::ostringstream os;
    os << "sector " << m << " (fluid " << middle << ") flanked by fluid " << flank
       << " on both sides; chord at radius " << r0;
    rep.description = os.str();
    return rep;
  }
  rep.description = "no two-fluid run of three sectors";
  return rep;
}

ImprovementReport classify_cone(const ConeConfig& c, const SurfaceTensions& s, const ClassifyOptions& opts) {
  ImprovementReport fill = detect_fill_in(c, s, opts);
  if (fill.improvable) return fill;

  const size_t n = c.size();
  const NeumannAngles gam = neumann_angles(s);
  size_t best = n;
  double best_deficit = opts.angle_tol;
  for (size_t q = 0; q < n; ++q) {
    const int y = c[prev(q, n)].label;
    const int z = c[next(q, n)].label;
    if (y == z) continue;
    const double deficit = gam.of_fluid(c[q].label) - c[q].opening();
    if (deficit > best_deficit) {
      best_deficit = deficit;
      best = q;
    }
  }
  ImprovementReport rep;
  rep.disk_radius = opts.disk_radius;
  if (best == n) {
    rep.description = n == 3 ? "three sectors at the Neumann angles" : "no sector below its Neumann opening";
    return rep;
  }

  // Relabel so the chosen sector is fluid 0, its clockwise neighbour fluid 2
  // and its counter-clockwise neighbour fluid 1.
  const int x = c[best].label;
  const int y = c[prev(best, n)].label;
  const int z = c[next(best, n)].label;
  const SurfaceTensions rel = s.relabeled({x, z, y});
  GoodTriangle gt = construct_good_triangle(rel, c[best].opening(), c[best].start);
  const double R = opts.disk_radius;
  const double scale = opts.patch_fraction * R / std::max(norm(gt.vertices[1]), norm(gt.vertices[2]));
  for (Vec2& v : gt.vertices) v = scale * v;
  const Vec2 p = scale * gt.tilde_p;
  const Vec2 p1 = gt.vertices[1];
  const Vec2 p2 = gt.vertices[2];

  std::vector<Interface> parts;
  const size_t ray_start = prev(best, n);
  for (size_t q = 0; q < n; ++q) {
    if (q == ray_start || q == best) continue;
    parts.push_back(cone_ray(c, q, R, Vec2{}));
  }
  parts.push_back(cone_ray(c, ray_start, R, p1));
  parts.push_back(cone_ray(c, best, R, p2));
  parts.push_back(oriented_by(Vec2{}, p, z, y, p2));
  parts.push_back(oriented_by(p, p1, y, x, Vec2{}));
  parts.push_back(oriented_by(p, p2, z, x, Vec2{}));

  const FermatWeights w = FermatWeights::from_tensions(rel);
  rep.improvable = true;
  rep.mechanism = Mechanism::GoodTriangleReplacement;
  rep.sector = static_cast<int>(best);
  rep.energy_delta = fermat_cost(p, gt.vertices, w) - fermat_cost(Vec2{}, gt.vertices, w);
  rep.competitor = PolyConfig(R, std::move(parts), c[0].label);
  std::ostringstream os;
  os << "sector " << best << " (fluid " << x << ") opens " << deg(c[best].opening()) << " deg, below its Neumann "
     << deg(gam.of_fluid(x)) << " deg; good-triangle patch of size " << opts.patch_fraction * R;
  rep.description = os.str();
  return rep;
}

VolumeFix rectangle_volume_fix(const ConeConfig& c, const std::array<double, 3>& delta_v, double R,
                               const SurfaceTensions& s) {
  if (!(R > 0.0)) throw Error(ErrorKind::InvalidInput, "disk radius must be positive");
  const double scale = std::abs(delta_v[0]) + std::abs(delta_v[1]) + std::abs(delta_v[2]);
  if (std::abs(delta_v[0] + delta_v[1] + delta_v[2]) > 1e-12 * std::max(scale, 1.0)) {
    throw Error(ErrorKind::InvalidInput, "volume corrections must sum to zero");
  }
  VolumeFix fix;
  if (scale == 0.0) return fix;

  const size_t n = c.size();
  const double length = 0.5 * R;
  const double inner = 0.25 * R;

  // First ray separating fluids a and b, if any.
  auto ray_between = [&](int a, int b) -> std::optional<size_t> {
    for (size_t k = 0; k < n; ++k) {
      const int l = c[k].label, r = c[next(k, n)].label;
      if ((l == a && r == b) || (l == b && r == a)) return k;
    }
    return std::nullopt;
  };

  // Pairwise transfers: donors (delta < 0) feed receivers (delta > 0).
  std::array<double, 3> need = delta_v;
  std::vector<std::array<double, 3>> transfers;  // from, to, amount
  for (int d = 0; d < 3; ++d) {
    for (int r = 0; r < 3 && need[d] < 0.0; ++r) {
      if (need[r] <= 0.0) continue;
      const double m = std::min(-need[d], need[r]);
      need[d] += m;
      need[r] -= m;
      transfers.push_back({double(d), double(r), m});
    }
  }

  std::map<std::pair<size_t, int>, double> used;  // (ray, donor) -> width
  auto place = [&](int from, int to, double m) {
    const auto ray = ray_between(from, to);
    if (!ray) {
      throw Error(ErrorKind::InvalidInput, "no boundary ray between fluids " + std::to_string(from) + " and " +
                                               std::to_string(to));
    }
    const double w = m / length;
    const size_t donor_sector = c[*ray].label == from ? *ray : next(*ray, n);
    const double room = 0.5 * inner * std::sin(std::min(c[donor_sector].opening(), 0.5 * kPi));
    double& total = used[{*ray, from}];
    total += w;
    if (total >= room) {
      std::ostringstream os;
      os << "rectangle width " << total << " does not fit in sector " << donor_sector << " (room " << room << ")";
      throw Error(ErrorKind::DiskTooSmall, os.str());
    }
    fix.rectangles.push_back({static_cast<int>(*ray), from, to, w, length, inner});
    fix.cost_bound += 2.0 * w * s.sigma(from, to);
  };
  for (const auto& t : transfers) {
    const int from = static_cast<int>(t[0]), to = static_cast<int>(t[1]);
    if (ray_between(from, to)) {
      place(from, to, t[2]);
    } else {
      // Route through the third fluid, whose volume is unchanged overall.
      const int via = opposite_fluid(from, to);
      place(from, via, t[2]);
      place(via, to, t[2]);
    }
  }
  return fix;
}

}  // namespace tfl
