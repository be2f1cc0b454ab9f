#include "tfl/polyconfig.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "tfl/error.hpp"
#include "tfl/quadrature.hpp"

namespace tfl {

namespace {

constexpr double kQuadTol = 1e-10;

// Parameter interval [u0, u1] of a + u (b - a), u in [0, 1], inside the disk.
// Empty when u0 >= u1.
struct Interval {
  double u0 = 0.0, u1 = 0.0;
  bool empty() const { return !(u1 > u0); }
};

Interval clip_to_disk(Vec2 a, Vec2 b, Vec2 center, double r) {
  const Vec2 d = b - a;
  const Vec2 f = a - center;
  const double A = dot(d, d);
  const double B = dot(d, f);
  const double C = dot(f, f) - r * r;
  const double disc = B * B - A * C;
  if (!(disc > 0.0) || A == 0.0) return {};
  const double sq = std::sqrt(disc);
  // Stable roots of A u^2 + 2 B u + C.
  const double q = -(B + std::copysign(sq, B));
  double u0, u1;
  if (q == 0.0) {
    u0 = u1 = 0.0;
  } else {
    u0 = q / A;
    u1 = C / q;
  }
  if (u0 > u1) std::swap(u0, u1);
  return {std::max(u0, 0.0), std::min(u1, 1.0)};
}

double clipped_length(const Segment& seg, Vec2 center, double r) {
  const Interval iv = clip_to_disk(seg.a, seg.b, center, r);
  if (iv.empty()) return 0.0;
  return (iv.u1 - iv.u0) * distance(seg.a, seg.b);
}

// Line geometry relative to the origin: signed arclength s measured from the
// foot of the perpendicular, distance of the line from the origin.
struct LineFrame {
  Vec2 a, dir;       // dir is a unit vector
  double length;     // segment length
  double u_foot;     // arclength from a to the foot point
  double dist;       // |distance of the line from the origin|

  explicit LineFrame(const Segment& seg) {
    a = seg.a;
    length = distance(seg.a, seg.b);
    dir = (seg.b - seg.a) / length;
    u_foot = -dot(a, dir);
    dist = std::abs(cross(a, dir));
  }
  // s coordinate of arclength u from a.
  double s_of(double u) const { return u - u_foot; }
};

// Integrate f(s) over [s0, s1], splitting at s = 0 where the radial
// integrands peak.
template <typename F>
double integrate_split(F&& f, double s0, double s1, double tol) {
  if (!(s1 > s0)) return 0.0;
  const std::function<double(double)> fn = f;
  if (s0 < 0.0 && s1 > 0.0) {
    return adaptive_simpson(fn, s0, 0.0, 0.5 * tol) + adaptive_simpson(fn, 0.0, s1, 0.5 * tol);
  }
  return adaptive_simpson(fn, s0, s1, tol);
}

// Integrate g(s) over the parts of the segment inside B_r (origin-centred)
// and outside B_rho.
template <typename G>
double integrate_over_annulus(const Segment& seg, double rho, double r, G&& g, double tol) {
  const Interval outer = clip_to_disk(seg.a, seg.b, Vec2{}, r);
  if (outer.empty()) return 0.0;
  const LineFrame lf(seg);
  const double len = lf.length;
  auto run = [&](double u0, double u1) {
    return integrate_split(g, lf.s_of(u0 * len), lf.s_of(u1 * len), tol);
  };
  if (rho <= 0.0) return run(outer.u0, outer.u1);
  const Interval inner = clip_to_disk(seg.a, seg.b, Vec2{}, rho);
  if (inner.empty()) return run(outer.u0, outer.u1);
  double total = 0.0;
  if (inner.u0 > outer.u0) total += run(outer.u0, std::min(inner.u0, outer.u1));
  if (inner.u1 < outer.u1) total += run(std::max(inner.u1, outer.u0), outer.u1);
  return total;
}

bool is_radial(const LineFrame& lf) { return lf.dist <= 1e-15 * std::max(1.0, lf.length); }

void check_label(int l) {
  if (l < 0 || l > 2) throw Error(ErrorKind::InvalidInput, "fluid labels must be 0, 1 or 2");
}

}  // namespace

// ---------------------------------------------------------------------------
// PolyConfig

PolyConfig::PolyConfig(double domain_radius, std::vector<Interface> interfaces, int outer_label)
    : radius_(domain_radius), outer_label_(outer_label), interfaces_(std::move(interfaces)) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw Error(ErrorKind::InvalidInput, "domain radius must be positive");
  }
  check_label(outer_label_);
  const double slack = radius_ * (1.0 + 1e-9);
  for (Interface& f : interfaces_) {
    check_label(f.i);
    check_label(f.j);
    if (f.i == f.j) throw Error(ErrorKind::InvalidInput, "interface joins a fluid to itself");
    if (f.i > f.j) {
      std::swap(f.i, f.j);
      std::reverse(f.points.begin(), f.points.end());
    }
    if (f.points.size() < 2) throw Error(ErrorKind::InvalidInput, "interface needs two points");
    for (size_t k = 0; k < f.points.size(); ++k) {
      if (!(norm(f.points[k]) <= slack)) {
        throw Error(ErrorKind::InvalidInput, "interface point outside the domain");
      }
      if (k > 0 && f.points[k] == f.points[k - 1]) {
        throw Error(ErrorKind::InvalidInput, "zero-length interface segment");
      }
    }
  }

  // Every open end must sit on the circle or meet another end.
  const double on_circle = radius_ * (1.0 - 1e-9);
  const double meet = 1e-9 * radius_;
  std::vector<Vec2> ends;
  for (const Interface& f : interfaces_) {
    if (f.points.front() == f.points.back()) continue;
    ends.push_back(f.points.front());
    ends.push_back(f.points.back());
  }
  for (size_t k = 0; k < ends.size(); ++k) {
    if (norm(ends[k]) >= on_circle) continue;
    bool shared = false;
    for (size_t m = 0; m < ends.size() && !shared; ++m) {
      shared = m != k && distance(ends[k], ends[m]) <= meet;
    }
    if (!shared) throw Error(ErrorKind::InvalidInput, "interface ends in the interior without a junction");
  }

  compute_boundary_arcs();

  const auto areas = region_areas();
  for (int l = 0; l < 3; ++l) {
    if (areas[l] < -1e-9 * radius_ * radius_) {
      throw Error(ErrorKind::InvalidInput,
                  "interface orientation inconsistent: fluid " + std::to_string(l) + " has negative area");
    }
  }
}

std::vector<Segment> PolyConfig::segments() const {
  std::vector<Segment> out;
  for (const Interface& f : interfaces_) {
    for (size_t k = 0; k + 1 < f.points.size(); ++k) {
      out.push_back({f.points[k], f.points[k + 1], f.i, f.j});
    }
  }
  return out;
}

void PolyConfig::compute_boundary_arcs() {
  struct Crossing {
    double angle;
    int ccw_label, cw_label;
  };
  std::vector<Crossing> crossings;
  const double on_circle = radius_ * (1.0 - 1e-9);
  for (const Interface& f : interfaces_) {
    if (f.points.front() == f.points.back()) continue;
    for (int end = 0; end < 2; ++end) {
      const size_t n = f.points.size();
      const Vec2 p = end == 0 ? f.points[0] : f.points[n - 1];
      if (norm(p) < on_circle) continue;
      const Vec2 outward = end == 0 ? p - f.points[1] : p - f.points[n - 2];
      // Left of the outward direction is fluid i at the last point, j at the first.
      const int left = end == 0 ? f.j : f.i;
      const int right = end == 0 ? f.i : f.j;
      const bool ccw_is_left = cross(outward, perp(p)) > 0.0;
      crossings.push_back({wrap_two_pi(std::atan2(p.y, p.x)), ccw_is_left ? left : right,
                           ccw_is_left ? right : left});
    }
  }
  arcs_.clear();
  if (crossings.empty()) {
    arcs_.push_back({0.0, kTwoPi, outer_label_});
    return;
  }
  std::sort(crossings.begin(), crossings.end(),
            [](const Crossing& a, const Crossing& b) { return a.angle < b.angle; });
  for (size_t k = 0; k < crossings.size(); ++k) {
    const Crossing& here = crossings[k];
    const Crossing& next = crossings[(k + 1) % crossings.size()];
    if (here.ccw_label != next.cw_label) {
      throw Error(ErrorKind::InvalidInput, "fluid labels along the domain boundary are inconsistent");
    }
    double end = next.angle;
    if (k + 1 == crossings.size()) end += kTwoPi;
    if (end > here.angle) arcs_.push_back({here.angle, end, here.ccw_label});
  }
}

std::array<double, 3> PolyConfig::region_areas() const {
  std::array<double, 3> area{0.0, 0.0, 0.0};
  for (const Segment& s : segments()) {
    const double a = 0.5 * cross(s.a, s.b);
    area[s.i] += a;
    area[s.j] -= a;
  }
  for (const BoundaryArc& arc : arcs_) area[arc.label] += 0.5 * radius_ * radius_ * (arc.end - arc.start);
  return area;
}

std::array<double, 3> PolyConfig::region_z_moments() const {
  // int_E z dA = oint -z^2/2 dx over the counter-clockwise boundary.
  std::array<double, 3> m{0.0, 0.0, 0.0};
  for (const Segment& s : segments()) {
    const double v = -0.5 * (s.b.x - s.a.x) * (s.a.y * s.a.y + s.a.y * s.b.y + s.b.y * s.b.y) / 3.0;
    m[s.i] += v;
    m[s.j] -= v;
  }
  const double r3 = radius_ * radius_ * radius_;
  auto prim = [](double t) { const double c = std::cos(t); return -c + c * c * c / 3.0; };
  for (const BoundaryArc& arc : arcs_) m[arc.label] += 0.5 * r3 * (prim(arc.end) - prim(arc.start));
  return m;
}

PolyConfig PolyConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("polyline JSON: ") + e.what());
  }
  try {
    std::vector<Interface> interfaces;
    for (const auto& f : j.at("interfaces")) {
      Interface in;
      in.i = f.at("pair").at(0).get<int>();
      in.j = f.at("pair").at(1).get<int>();
      for (const auto& p : f.at("points")) in.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      interfaces.push_back(std::move(in));
    }
    return PolyConfig(j.at("domain_radius").get<double>(), std::move(interfaces), j.value("outer_label", 0));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("polyline JSON: ") + e.what());
  }
}

std::string PolyConfig::to_json() const {
  nlohmann::json j;
  j["domain_radius"] = radius_;
  j["outer_label"] = outer_label_;
  j["interfaces"] = nlohmann::json::array();
  for (const Interface& f : interfaces_) {
    nlohmann::json pts = nlohmann::json::array();
    for (Vec2 p : f.points) pts.push_back({p.x, p.y});
    j["interfaces"].push_back({{"pair", {f.i, f.j}}, {"points", pts}});
  }
  return j.dump(2);
}

PolyConfig single_chord(double domain_radius, double d, int below, int above) {
  const double half = std::sqrt(domain_radius * domain_radius - d * d);
  Interface f;
  // Travelling in +x the left side is "above".
  if (above < below) {
    f = {above, below, {{-half, d}, {half, d}}};
  } else {
    f = {below, above, {{half, d}, {-half, d}}};
  }
  return PolyConfig(domain_radius, {f});
}

PolyConfig junction_config(double domain_radius, Vec2 junction, const std::vector<double>& ray_angles,
                           const std::vector<int>& sector_labels) {
  const size_t n = ray_angles.size();
  if (n != sector_labels.size() || n < 2) {
    throw Error(ErrorKind::InvalidInput, "junction needs matching ray angles and sector labels");
  }
  std::vector<Interface> out;
  for (size_t k = 0; k < n; ++k) {
    const Vec2 e = polar(1.0, ray_angles[k]);
    // Exit point of the ray on the domain circle.
    const double b = dot(junction, e);
    const double t = -b + std::sqrt(b * b - (norm2(junction) - domain_radius * domain_radius));
    const Vec2 tip = junction + t * e;
    const int cw = sector_labels[k];
    const int ccw = sector_labels[(k + 1) % n];
    // Heading outward, the counter-clockwise sector is on the left.
    if (ccw < cw) {
      out.push_back({ccw, cw, {junction, tip}});
    } else {
      out.push_back({cw, ccw, {tip, junction}});
    }
  }
  return PolyConfig(domain_radius, std::move(out), sector_labels.front());
}

// ---------------------------------------------------------------------------
// Energies

double energy_FS(const PolyConfig& c, const SurfaceTensions& s, const Ball& ball) {
  double e = 0.0;
  for (const Segment& seg : c.segments()) e += s.sigma(seg.i, seg.j) * clipped_length(seg, ball.center, ball.radius);
  return e;
}

double energy_FS_annulus(const PolyConfig& c, const SurfaceTensions& s, double rho, double r) {
  double e = 0.0;
  for (const Segment& seg : c.segments()) {
    const Interval outer = clip_to_disk(seg.a, seg.b, Vec2{}, r);
    if (outer.empty()) continue;
    double u = outer.u1 - outer.u0;
    const Interval inner = clip_to_disk(seg.a, seg.b, Vec2{}, rho);
    if (!inner.empty()) u -= std::min(inner.u1, outer.u1) - std::max(inner.u0, outer.u0);
    e += s.sigma(seg.i, seg.j) * u * distance(seg.a, seg.b);
  }
  return e;
}

EnergyBreakdown energy_FSWP(const PolyConfig& c, const EnergyParams& p) {
  EnergyBreakdown e;
  for (const Segment& seg : c.segments()) e.surface += p.sigmas.sigma(seg.i, seg.j) * distance(seg.a, seg.b);
  for (const BoundaryArc& arc : c.boundary_arcs()) {
    e.wetting += p.beta[arc.label] * c.domain_radius() * (arc.end - arc.start);
  }
  const auto moments = c.region_z_moments();
  for (int l = 0; l < 3; ++l) e.gravity += p.rho[l] * p.g * moments[l];
  e.total = e.surface + e.wetting + e.gravity;
  return e;
}

// ---------------------------------------------------------------------------
// Monotonicity quantities

double gamma_deviation(const PolyConfig& c, const SurfaceTensions& s, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::InvalidInput, "radius must be positive");
  double total = 0.0;
  for (const Segment& seg : c.segments()) {
    const LineFrame lf(seg);
    if (is_radial(lf)) continue;
    const double d2 = lf.dist * lf.dist;
    auto f = [d2](double t) { const double q = d2 + t * t; return d2 / (q * std::sqrt(q)); };
    total += s.sigma(seg.i, seg.j) * integrate_over_annulus(seg, 0.0, r, f, kQuadTol);
  }
  return total;
}

double fourth_power_integral(const PolyConfig& c, const SurfaceTensions& s, double rho, double r) {
  double total = 0.0;
  for (const Segment& seg : c.segments()) {
    const LineFrame lf(seg);
    if (is_radial(lf)) continue;
    const double d2 = lf.dist * lf.dist;
    auto f = [d2](double t) {
      const double q = d2 + t * t;
      return d2 * d2 / (q * q * std::sqrt(q));
    };
    total += s.sigma(seg.i, seg.j) / 8.0 * integrate_over_annulus(seg, rho, r, f, kQuadTol);
  }
  return total;
}

double CutoffProfile::value(double q) {
  if (q <= 0.5) return 1.0;
  if (q >= 1.0) return 0.0;
  const double t = 2.0 * (q - 0.5);
  return 1.0 - t * t * (3.0 - 2.0 * t);
}

double CutoffProfile::derivative(double q) {
  if (q <= 0.5 || q >= 1.0) return 0.0;
  const double t = 2.0 * (q - 0.5);
  return -2.0 * 6.0 * t * (1.0 - t);
}

namespace {

// Integrate h(x, lf) over the segment part inside |x - centre| < radius,
// split where |x - centre| = radius / 2 and at the foot point of the centre.
template <typename H>
double integrate_in_support(const Segment& seg, Vec2 centre, double radius, H&& h) {
  const Interval outer = clip_to_disk(seg.a, seg.b, centre, radius);
  if (outer.empty()) return 0.0;
  const double len = distance(seg.a, seg.b);
  const Vec2 dir = (seg.b - seg.a) / len;
  std::vector<double> cuts{outer.u0, outer.u1};
  const Interval half = clip_to_disk(seg.a, seg.b, centre, 0.5 * radius);
  if (!half.empty()) {
    cuts.push_back(half.u0);
    cuts.push_back(half.u1);
  }
  cuts.push_back(std::clamp(dot(centre - seg.a, dir) / len, outer.u0, outer.u1));
  std::sort(cuts.begin(), cuts.end());
  const std::function<double(double)> fn = [&](double u) { return h(seg.a + (u * len) * dir); };
  double total = 0.0;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] > cuts[k]) total += len * adaptive_simpson(fn, cuts[k], cuts[k + 1], kQuadTol / len);
  }
  return total;
}

}  // namespace

double phi_aux(const PolyConfig& c, const SurfaceTensions& s, double r) {
  double total = 0.0;
  for (const Segment& seg : c.segments()) {
    total += s.sigma(seg.i, seg.j) *
             integrate_in_support(seg, Vec2{}, r, [r](Vec2 x) { return CutoffProfile::value(norm(x) / r); });
  }
  return total;
}

double psi_aux(const PolyConfig& c, const SurfaceTensions& s, double r) {
  double total = 0.0;
  for (const Segment& seg : c.segments()) {
    const Vec2 nu = perp(unit(seg.b - seg.a));
    total += s.sigma(seg.i, seg.j) * integrate_in_support(seg, Vec2{}, r, [r, nu](Vec2 x) {
               const double n2 = norm2(x);
               if (n2 == 0.0) return 0.0;
               const double xn = dot(x, nu);
               return CutoffProfile::value(std::sqrt(n2) / r) * xn * xn / n2;
             });
  }
  return total;
}

std::string MonotonicityTrace::to_csv() const {
  std::ostringstream os;
  os << "r,scaled_energy,gamma,fourth_power,correction\n";
  os << std::setprecision(17);
  for (size_t k = 0; k < radii.size(); ++k) {
    os << radii[k] << ',' << scaled_energy[k] << ',' << gamma[k] << ',' << fourth_power[k] << ','
       << correction[k] << '\n';
  }
  return os.str();
}

MonotonicityTrace monotonicity_trace(const PolyConfig& c, const SurfaceTensions& s,
                                     const std::vector<double>& radii, double C) {
  for (size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || !(radii[k] <= c.domain_radius())) {
      throw Error(ErrorKind::InvalidInput, "trace radii must lie in (0, R]");
    }
    if (k > 0 && !(radii[k] > radii[k - 1])) {
      throw Error(ErrorKind::InvalidInput, "trace radii must be strictly increasing");
    }
  }
  MonotonicityTrace t;
  for (double r : radii) {
    t.radii.push_back(r);
    t.scaled_energy.push_back(energy_FS(c, s, {Vec2{}, r}) / r);
    t.gamma.push_back(gamma_deviation(c, s, r));
    t.fourth_power.push_back(radii.empty() ? 0.0 : fourth_power_integral(c, s, radii.front(), r));
    t.correction.push_back(C * r * r);
  }
  return t;
}

WeakMonotonicityTerms weak_monotonicity_terms(const PolyConfig& c, const SurfaceTensions& s, double rho,
                                              double r, double C) {
  if (!(rho > 0.0 && rho < r && r <= c.domain_radius())) {
    throw Error(ErrorKind::InvalidInput, "need 0 < rho < r <= R");
  }
  const double inner = energy_FS(c, s, {Vec2{}, rho}) / rho;
  const double outer = energy_FS(c, s, {Vec2{}, r}) / r;
  return {inner + C * rho * rho + fourth_power_integral(c, s, rho, r), outer + C * r * r};
}

// ---------------------------------------------------------------------------
// First variation

Vec2 TestField::value(Vec2 x) const {
  const Vec2 v = x - center;
  const double phi = CutoffProfile::value(norm(v) / radius);
  if (direction) return (radius * phi) * *direction;
  return phi * v;
}

std::array<std::array<double, 2>, 2> TestField::gradient(Vec2 x) const {
  const Vec2 v = x - center;
  const double dist = norm(v);
  const double q = dist / radius;
  Vec2 grad_phi{};
  if (dist > 0.0) grad_phi = (CutoffProfile::derivative(q) / (radius * dist)) * v;
  std::array<std::array<double, 2>, 2> g{};
  if (direction) {
    const Vec2 e = radius * *direction;
    g[0] = {e.x * grad_phi.x, e.x * grad_phi.y};
    g[1] = {e.y * grad_phi.x, e.y * grad_phi.y};
  } else {
    const double phi = CutoffProfile::value(q);
    g[0] = {phi + v.x * grad_phi.x, v.x * grad_phi.y};
    g[1] = {v.y * grad_phi.x, phi + v.y * grad_phi.y};
  }
  return g;
}

double first_variation_residual(const PolyConfig& c, const TestField& t, const SurfaceTensions& s) {
  if (!(t.radius > 0.0)) throw Error(ErrorKind::InvalidInput, "test field radius must be positive");
  if (norm(t.center) + t.radius > c.domain_radius()) {
    throw Error(ErrorKind::InvalidInput, "test field support leaves the domain");
  }
  double total = 0.0;
  for (const Segment& seg : c.segments()) {
    const Vec2 nu = perp(unit(seg.b - seg.a));
    auto div_e = [&](Vec2 x) {
      const auto g = t.gradient(x);
      const double div = g[0][0] + g[1][1];
      const Vec2 g_nu{g[0][0] * nu.x + g[0][1] * nu.y, g[1][0] * nu.x + g[1][1] * nu.y};
      return div - dot(nu, g_nu);
    };
    total += s.sigma(seg.i, seg.j) * integrate_in_support(seg, t.center, t.radius, div_e);
  }
  return total;
}

StationarityReport stationarity_battery(const PolyConfig& c, const SurfaceTensions& s) {
  const double R = c.domain_radius();
  std::vector<Vec2> centres{Vec2{}};
  for (int k = 0; k < 7; ++k) centres.push_back(polar(0.4 * R, kTwoPi * k / 7.0));
  StationarityReport rep;
  rep.threshold = 1e-6 * s.max() * R;
  for (Vec2 ctr : centres) {
    for (double f : {0.15, 0.3, 0.5}) {
      for (int kind = 0; kind < 3; ++kind) {
        TestField t{ctr, f * R, std::nullopt};
        if (kind == 1) t.direction = Vec2{1.0, 0.0};
        if (kind == 2) t.direction = Vec2{0.0, 1.0};
        rep.max_residual = std::max(rep.max_residual, std::abs(first_variation_residual(c, t, s)));
      }
    }
  }
  rep.stationary = rep.max_residual < rep.threshold;
  return rep;
}

std::vector<double> sharp_monotonicity_check(const PolyConfig& c, const SurfaceTensions& s,
                                             const std::vector<double>& radii) {
  const StationarityReport rep = stationarity_battery(c, s);
  if (!rep.stationary) {
    std::ostringstream os;
    os << "first-variation residual " << rep.max_residual << " exceeds " << rep.threshold;
    throw Error(ErrorKind::NotStationary, os.str());
  }
  std::vector<double> out;
  for (double r : radii) {
    const double h = 1e-4 * r;
    if (!(r - h > 0.0) || !(r + h < c.domain_radius())) {
      throw Error(ErrorKind::InvalidInput, "radius too close to 0 or R for the difference stencil");
    }
    auto scaled = [&](double x) { return energy_FS(c, s, {Vec2{}, x}) / x; };
    const double d_energy = (scaled(r + h) - scaled(r - h)) / (2.0 * h);
    const double d_gamma = (gamma_deviation(c, s, r + h) - gamma_deviation(c, s, r - h)) / (2.0 * h);
    out.push_back(std::abs(d_energy - d_gamma));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conical projection

namespace {

struct CircleCrossing {
  Vec2 point;
  int i, j;
  int ccw_label;  // fluid just counter-clockwise of the crossing along the circle
};

struct Projection {
  std::vector<Interface> outside;
  std::vector<CircleCrossing> crossings;
};

Projection split_at_circle(const PolyConfig& c, double t) {
  const double on_tol = 1e-9 * t;
  auto on_circle = [&](Vec2 p) { return std::abs(norm(p) - t) <= on_tol; };
  Projection out;
  for (const Interface& f : c.interfaces()) {
    // Refine the polyline with its circle intersections.
    std::vector<Vec2> pts{f.points.front()};
    for (size_t k = 0; k + 1 < f.points.size(); ++k) {
      const Segment seg{f.points[k], f.points[k + 1], f.i, f.j};
      const LineFrame lf(seg);
      const double foot = lf.u_foot / lf.length;
      if (foot > 0.0 && foot < 1.0 && std::abs(lf.dist - t) <= 1e-12 * std::max(1.0, t)) {
        throw Error(ErrorKind::TangentialCrossing, "interface segment is tangent to the projection circle");
      }
      const Interval iv = clip_to_disk(seg.a, seg.b, Vec2{}, t);
      if (!iv.empty()) {
        for (double u : {iv.u0, iv.u1}) {
          if (u > 1e-12 && u < 1.0 - 1e-12) pts.push_back(seg.a + u * (seg.b - seg.a));
        }
      }
      pts.push_back(seg.b);
    }
    // Walk pieces, collecting maximal outside runs.
    std::vector<Vec2> run;
    auto flush = [&](bool closes_loop) {
      if (run.size() >= 2) {
        const Interface piece{f.i, f.j, run};
        for (int end = 0; end < 2 && !closes_loop; ++end) {
          const Vec2 p = end == 0 ? run.front() : run.back();
          if (!on_circle(p)) continue;
          // Traversal direction at p and the side the counter-clockwise arc lies on.
          const Vec2 along = end == 0 ? run[1] - run[0] : run[run.size() - 1] - run[run.size() - 2];
          const bool ccw_left = cross(along, perp(p)) > 0.0;
          out.crossings.push_back({p, f.i, f.j, ccw_left ? f.i : f.j});
        }
        out.outside.push_back(piece);
      }
      run.clear();
    };
    const bool closed = f.points.front() == f.points.back();
    bool all_outside = true;
    for (size_t k = 0; k + 1 < pts.size(); ++k) {
      const Vec2 mid = 0.5 * (pts[k] + pts[k + 1]);
      const bool outside = norm(mid) > t;
      all_outside = all_outside && outside;
      if (outside) {
        if (run.empty()) {
          run.push_back(pts[k]);
        } else if (on_circle(pts[k]) && k > 0) {
          throw Error(ErrorKind::TangentialCrossing, "interface vertex touches the projection circle");
        }
        run.push_back(pts[k + 1]);
      } else {
        flush(false);
      }
    }
    flush(closed && all_outside);
  }
  return out;
}

}  // namespace

PolyConfig conical_projection(const PolyConfig& c, double t) {
  if (!(t > 0.0 && t < c.domain_radius())) throw Error(ErrorKind::InvalidInput, "need 0 < t < R");
  Projection p = split_at_circle(c, t);
  std::vector<Interface> result = std::move(p.outside);
  for (const CircleCrossing& x : p.crossings) {
    // Heading outward along the radius, the counter-clockwise side is the left.
    if (x.ccw_label == x.i) {
      result.push_back({x.i, x.j, {Vec2{}, x.point}});
    } else {
      result.push_back({x.i, x.j, {x.point, Vec2{}}});
    }
  }
  return PolyConfig(c.domain_radius(), std::move(result), c.outer_label());
}

double conical_interior_energy(const PolyConfig& c, const SurfaceTensions& s, double t) {
  double total = 0.0;
  for (const CircleCrossing& x : split_at_circle(c, t).crossings) total += s.sigma(x.i, x.j);
  return t * total;
}

}  // namespace tfl
