#include <doctest.h>

#include <cmath>
#include <random>

#include "tfl/error.hpp"
#include "tfl/polyconfig.hpp"

using namespace tfl;

namespace {

const SurfaceTensions kEqual(1, 1, 1);
const SurfaceTensions k345(3, 4, 5);

// Closed forms for a chord at distance d from the origin, tension sigma.
double chord_length_in(double d, double r) { return r > d ? 2.0 * std::sqrt(r * r - d * d) : 0.0; }
// sigma/8 int d^4 / (d^2 + s^2)^{5/2} over |s| < a.
double chord_fourth(double d, double r, double sigma) {
  if (r <= d) return 0.0;
  const double a = std::sqrt(r * r - d * d);
  return sigma / 8.0 * 2.0 * a * (2.0 * a * a + 3.0 * d * d) / (3.0 * r * r * r);
}

void expect_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
  }
}

// Interface crossing the disk through random interior points.
PolyConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, kTwoPi), u(-0.6, 0.6), pick(0.0, 1.0);
  if (pick(rng) < 0.5) {
    const Vec2 junction{u(rng) * 0.5, u(rng) * 0.5};
    std::vector<double> rays{ang(rng), ang(rng), ang(rng)};
    std::sort(rays.begin(), rays.end());
    if (rays[1] - rays[0] < 0.2 || rays[2] - rays[1] < 0.2 || rays[0] + kTwoPi - rays[2] < 0.2) {
      rays = {0.3, 2.4, 4.3};
    }
    return junction_config(1.0, junction, rays, {0, 1, 2});
  }
  const double a = ang(rng);
  const Vec2 A = polar(1.0, a), B = polar(1.0, a + kPi + 0.8 * (pick(rng) - 0.5));
  std::vector<Vec2> pts{A};
  for (int k = 1; k < 5; ++k) pts.push_back(A + (k / 5.0) * (B - A) + Vec2{u(rng) * 0.25, u(rng) * 0.25});
  pts.push_back(B);
  return PolyConfig(1.0, {Interface{0, 2, pts}});
}

// t * sum sigma over crossings of |x| = t, counted directly on the segments.
double crossing_oracle(const PolyConfig& c, const SurfaceTensions& s, double t) {
  double total = 0.0;
  for (const Segment& seg : c.segments()) {
    const Vec2 d = seg.b - seg.a;
    const double A = norm2(d), B = 2.0 * dot(seg.a, d), Cc = norm2(seg.a) - t * t;
    const double disc = B * B - 4.0 * A * Cc;
    if (disc <= 0.0) continue;
    for (double sgn : {-1.0, 1.0}) {
      const double u = (-B + sgn * std::sqrt(disc)) / (2.0 * A);
      if (u >= 0.0 && u < 1.0) total += s.sigma(seg.i, seg.j);
    }
  }
  return t * total;
}

}  // namespace

TEST_CASE("chord energy, areas, wetting and gravity have closed forms") {
  for (double d : {0.0, 0.2, 0.5, 0.9}) {
    const PolyConfig c = single_chord(1.0, d);
    for (double r : {0.1, 0.3, 0.6, 0.95, 1.0}) {
      CHECK(energy_FS(c, k345, {{0, 0}, r}) == doctest::Approx(3.0 * chord_length_in(d, r)).epsilon(1e-13));
    }
    const double cap = std::acos(d) - d * std::sqrt(1 - d * d);
    const auto areas = c.region_areas();
    CHECK(areas[0] == doctest::Approx(cap).epsilon(1e-13));
    CHECK(areas[1] == doctest::Approx(kPi - cap).epsilon(1e-13));
    CHECK(areas[2] == doctest::Approx(0.0));
    const double mz = 2.0 / 3.0 * std::pow(1 - d * d, 1.5);
    const auto moments = c.region_z_moments();
    CHECK(moments[0] == doctest::Approx(mz).epsilon(1e-12));
    CHECK(moments[1] == doctest::Approx(-mz).epsilon(1e-12));

    EnergyParams p;
    p.sigmas = k345;
    p.beta = {0.5, -0.25, 0.0};
    p.rho = {1.0, 2.0, 0.0};
    p.g = 9.0;
    const EnergyBreakdown e = energy_FSWP(c, p);
    CHECK(e.surface == doctest::Approx(3.0 * chord_length_in(d, 1.0)).epsilon(1e-13));
    const double arc0 = 2.0 * std::acos(d);
    CHECK(e.wetting == doctest::Approx(0.5 * arc0 - 0.25 * (kTwoPi - arc0)).epsilon(1e-12));
    CHECK(e.gravity == doctest::Approx(9.0 * (mz - 2.0 * mz)).epsilon(1e-12));
    CHECK(e.total == doctest::Approx(e.surface + e.wetting + e.gravity));
  }
}

TEST_CASE("malformed configurations are rejected") {
  expect_kind(ErrorKind::InvalidInput, [] { PolyConfig(1.0, {Interface{0, 1, {{0, 0}, {0.5, 0}}}}); });
  expect_kind(ErrorKind::InvalidInput, [] { PolyConfig(1.0, {Interface{1, 1, {{-1, 0}, {1, 0}}}}); });
  expect_kind(ErrorKind::InvalidInput, [] { PolyConfig(1.0, {Interface{0, 1, {{-2, 0}, {1, 0}}}}); });
  expect_kind(ErrorKind::InvalidInput, [] { PolyConfig(-1.0, {}); });
  // Labels along the circle must be consistent.
  expect_kind(ErrorKind::InvalidInput,
              [] { PolyConfig(1.0, {Interface{0, 1, {{-1, 0}, {1, 0}}}, Interface{0, 2, {{0, -1}, {0, 1}}}}); });
}

TEST_CASE("json round trip") {
  const PolyConfig c = junction_config(2.0, {0.1, -0.2}, {0.5, 2.0, 4.0}, {2, 0, 1});
  const PolyConfig back = PolyConfig::from_json(c.to_json());
  CHECK(back.domain_radius() == 2.0);
  REQUIRE(back.segments().size() == c.segments().size());
  for (size_t k = 0; k < c.segments().size(); ++k) {
    CHECK(back.segments()[k].a == c.segments()[k].a);
    CHECK(back.segments()[k].b == c.segments()[k].b);
    CHECK(back.segments()[k].i == c.segments()[k].i);
  }
  CHECK(back.to_json() == c.to_json());
  CHECK_THROWS_AS(PolyConfig::from_json("{\"radius\": 1"), Error);
}

TEST_CASE("chord family satisfies the sharp identity") {
  for (double d : {0.2, 0.4, 0.6, 0.8}) {
    const PolyConfig c = single_chord(1.0, d, 1, 2);
    const double sigma = k345.sigma12();
    std::vector<double> radii;
    for (int k = 0; k < 20; ++k) radii.push_back(d + (0.99 - d) * (k + 1) / 20.0);
    for (double r : radii) {
      const double expected = sigma * chord_length_in(d, r) / r;
      CHECK(energy_FS(c, k345, {{0, 0}, r}) / r == doctest::Approx(expected).epsilon(1e-13));
      CHECK(gamma_deviation(c, k345, r) == doctest::Approx(expected).epsilon(1e-9));
      CHECK(std::abs(energy_FS(c, k345, {{0, 0}, r}) / r - gamma_deviation(c, k345, r)) < 1e-8);
      CHECK(fourth_power_integral(c, k345, 0.05, r) ==
            doctest::Approx(chord_fourth(d, r, sigma) - chord_fourth(d, 0.05, sigma)).epsilon(1e-9));
    }
    for (double res : sharp_monotonicity_check(c, k345, radii)) CHECK(res < 1e-6);
  }
}

TEST_CASE("monotonicity trace of a chord") {
  const PolyConfig c = single_chord(1.0, 0.6);
  const MonotonicityTrace tr = monotonicity_trace(c, kEqual, {0.5, 0.8, 1.0}, 2.0);
  CHECK(tr.scaled_energy[0] == 0.0);
  CHECK(tr.gamma[2] == doctest::Approx(1.6).epsilon(1e-10));
  CHECK(tr.fourth_power[2] == doctest::Approx(chord_fourth(0.6, 1.0, 1.0)).epsilon(1e-9));
  CHECK(tr.correction[1] == doctest::Approx(2.0 * 0.64));
  CHECK(tr.to_csv().rfind("r,scaled_energy,gamma,fourth_power,correction\n", 0) == 0);
  CHECK_THROWS_AS(monotonicity_trace(c, kEqual, {1.5}), Error);
}

TEST_CASE("weak monotonicity holds on stationary configurations") {
  const auto g = neumann_angles(k345);
  std::vector<std::pair<PolyConfig, SurfaceTensions>> corpus;
  corpus.push_back({junction_config(1.0, {0, 0}, {0.3, 0.3 + kPi}, {0, 1}), k345});
  corpus.push_back({junction_config(1.0, {0.2, 0.1}, {1.0, 1.0 + kPi}, {2, 0}), k345});
  for (double d : {0.1, 0.4, 0.7}) corpus.push_back({single_chord(1.0, d), kEqual});
  corpus.push_back({junction_config(1.0, {0, 0}, {rad(90), rad(210), rad(330)}, {0, 1, 2}), kEqual});
  corpus.push_back({junction_config(1.0, {0.15, -0.2}, {rad(10), rad(130), rad(250)}, {0, 1, 2}), kEqual});
  // Sector of fluid f spans Gamma(f).
  const double a0 = 0.4;
  corpus.push_back(
      {junction_config(1.0, {-0.1, 0.05}, {a0, a0 + g.of_fluid(0), a0 + g.of_fluid(0) + g.of_fluid(1)}, {2, 0, 1}),
       k345});
  std::vector<double> grid;
  for (int k = 1; k <= 10; ++k) grid.push_back(0.1 * k);
  for (const auto& [c, s] : corpus) {
    CHECK(stationarity_battery(c, s).stationary);
    for (size_t a = 0; a < grid.size(); ++a) {
      for (size_t b = a + 1; b < grid.size(); ++b) {
        const WeakMonotonicityTerms w = weak_monotonicity_terms(c, s, grid[a], grid[b], 0.0);
        CHECK(w.lhs <= w.rhs + 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(weak_monotonicity_terms(corpus[0].first, k345, 0.5, 0.4, 0.0), Error);
}

TEST_CASE("first variation of rays from the field centre") {
  // A translation field r*phi*e against rays tau_k from its centre gives
  // -r * e . sum sigma_k tau_k; radial fields give zero.
  struct Case {
    std::vector<double> rays_deg;
    bool balanced;
  };
  for (const Case& cs : {Case{{30, 210}, true}, Case{{90, 210, 330}, true}, Case{{90, 180, 315}, false}}) {
    std::vector<double> rays;
    std::vector<int> labels;
    for (size_t k = 0; k < cs.rays_deg.size(); ++k) rays.push_back(rad(cs.rays_deg[k])), labels.push_back(int(k));
    if (labels.size() == 2) labels = {0, 1};
    const Vec2 centre{0.1, -0.05};
    const PolyConfig c = junction_config(1.0, centre, rays, labels);
    Vec2 sum{};
    for (double a : rays) sum += polar(1.0, a);
    for (double radius : {0.2, 0.3, 0.5}) {
      CHECK(std::abs(first_variation_residual(c, {centre, radius, std::nullopt}, kEqual)) < 1e-10);
      double worst = 0.0;
      for (double e : {0.0, 0.7, 1.9, 3.0, 4.4, 5.5}) {
        const Vec2 dir = polar(1.0, e);
        const double res = first_variation_residual(c, {centre, radius, dir}, kEqual);
        CHECK(res == doctest::Approx(-radius * dot(dir, sum)).epsilon(1e-9).scale(1.0));
        worst = std::max(worst, std::abs(res));
      }
      if (cs.balanced) {
        CHECK(worst < 1e-10);
      } else {
        CHECK(worst > 0.05 * radius);
      }
    }
    CHECK(stationarity_battery(c, kEqual).stationary == cs.balanced);
    if (!cs.balanced) {
      expect_kind(ErrorKind::NotStationary, [&] { sharp_monotonicity_check(c, kEqual, {0.5}); });
    }
  }
  // A straight line is stationary for fields centred off it as well.
  const PolyConfig line = single_chord(1.0, 0.3);
  for (Vec2 centre : {Vec2{0, 0}, Vec2{0.2, 0.4}, Vec2{-0.3, 0.25}}) {
    CHECK(std::abs(first_variation_residual(line, {centre, 0.4, std::nullopt}, kEqual)) < 1e-10);
    CHECK(std::abs(first_variation_residual(line, {centre, 0.4, Vec2{0.6, 0.8}}, kEqual)) < 1e-10);
  }
}

TEST_CASE("conical projection is idempotent and its interior cost is the crossing sum") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> tt(0.2, 0.9), uc(-0.5, 0.5), ur(0.05, 0.4);
  int tested = 0;
  while (tested < 20) {
    const PolyConfig c = random_config(rng);
    const double t = tt(rng);
    const PolyConfig p = conical_projection(c, t);
    const PolyConfig pp = conical_projection(p, t);
    ++tested;
    const auto a1 = p.region_areas(), a2 = pp.region_areas();
    for (int l = 0; l < 3; ++l) CHECK(std::abs(a1[l] - a2[l]) < 1e-12);
    for (int k = 0; k < 10; ++k) {
      const Ball b{{uc(rng), uc(rng)}, ur(rng)};
      CHECK(std::abs(energy_FS(p, k345, b) - energy_FS(pp, k345, b)) < 1e-12);
    }
    const double inside = energy_FS(p, k345, {{0, 0}, t});
    CHECK(inside == doctest::Approx(conical_interior_energy(c, k345, t)).epsilon(1e-10));
    CHECK(conical_interior_energy(c, k345, t) == doctest::Approx(crossing_oracle(c, k345, t)).epsilon(1e-13));
    // Outside the circle nothing moves.
    CHECK(energy_FS_annulus(p, k345, t, 1.0) == doctest::Approx(energy_FS_annulus(c, k345, t, 1.0)).epsilon(1e-12));
  }
  expect_kind(ErrorKind::TangentialCrossing, [] { conical_projection(single_chord(1.0, 0.5), 0.5); });
  CHECK_THROWS_AS(conical_projection(single_chord(1.0, 0.5), 1.0), Error);
}

TEST_CASE("auxiliary cutoff functions") {
  CHECK(CutoffProfile::value(0.3) == 1.0);
  CHECK(CutoffProfile::value(0.75) == doctest::Approx(0.5));
  CHECK(CutoffProfile::value(1.2) == 0.0);
  for (double q = 0.5; q < 1.0; q += 0.01) {
    const double h = 1e-6;
    CHECK(CutoffProfile::derivative(q + 0.005) ==
          doctest::Approx((CutoffProfile::value(q + 0.005 + h) - CutoffProfile::value(q + 0.005 - h)) / (2 * h))
              .epsilon(1e-6));
    CHECK(CutoffProfile::derivative(q) <= 0.0);
  }
  // Line through the origin: int phi over the line is 2 * 0.75 r, and x.nu = 0.
  const PolyConfig line = single_chord(1.0, 0.0);
  for (double r : {0.2, 0.6}) {
    CHECK(phi_aux(line, k345, r) == doctest::Approx(3.0 * 1.5 * r).epsilon(1e-10));
    CHECK(std::abs(psi_aux(line, k345, r)) < 1e-12);
  }
}
