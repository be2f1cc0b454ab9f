#include "tfl/fermat.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tfl/error.hpp"

namespace tfl {

double SymMat2::min_eigenvalue() const {
  const double half_trace = 0.5 * trace();
  const double disc = std::sqrt(0.25 * (xx - yy) * (xx - yy) + xy * xy);
  return half_trace - disc;
}

double fermat_cost(Vec2 p, const Triangle& v, const FermatWeights& w) {
  return w.zeta0 * distance(p, v[0]) + w.zeta1 * distance(p, v[1]) + w.zeta2 * distance(p, v[2]);
}

namespace {

void check_off_vertices(Vec2 p, const Triangle& v) {
  const double floor = 1e-14 * diameter(v);
  for (int j = 0; j < 3; ++j) {
    if (distance(p, v[j]) <= floor) {
      throw Error(ErrorKind::VertexSingularity, "point coincides with vertex " + std::to_string(j));
    }
  }
}

Vec2 gradient_unchecked(Vec2 p, const Triangle& v, const FermatWeights& w) {
  Vec2 g;
  for (int j = 0; j < 3; ++j) {
    const Vec2 d = p - v[j];
    g += (w[j] / norm(d)) * d;
  }
  return g;
}

SymMat2 hessian_unchecked(Vec2 p, const Triangle& v, const FermatWeights& w) {
  SymMat2 h;
  for (int j = 0; j < 3; ++j) {
    const Vec2 d = p - v[j];
    const double r = norm(d);
    const double z = w[j] / (r * r * r);
    h.xx += z * d.y * d.y;
    h.xy -= z * d.x * d.y;
    h.yy += z * d.x * d.x;
  }
  return h;
}

}  // namespace

Vec2 fermat_gradient(Vec2 p, const Triangle& v, const FermatWeights& w) {
  check_off_vertices(p, v);
  return gradient_unchecked(p, v, w);
}

SymMat2 fermat_hessian(Vec2 p, const Triangle& v, const FermatWeights& w) {
  check_off_vertices(p, v);
  return hessian_unchecked(p, v, w);
}

FermatSolution fermat_solve(const Triangle& v, const FermatWeights& w, const FermatOptions& opts) {
  const double diam = diameter(v);
  if (!(w.zeta0 > 0 && w.zeta1 > 0 && w.zeta2 > 0)) {
    throw Error(ErrorKind::InvalidInput, "Fermat weights must be positive");
  }
  if (!(std::abs(signed_area(v)) > 1e-12 * diam * diam)) {
    throw Error(ErrorKind::InvalidInput, "triangle vertices are collinear");
  }

  // The cost is convex; its minimum sits at P_k exactly when the pull of the
  // other two weights at P_k is no stronger than zeta_k.
  for (int k = 0; k < 3; ++k) {
    Vec2 pull;
    for (int j = 0; j < 3; ++j) {
      if (j != k) pull += w[j] * unit(v[k] - v[j]);
    }
    if (norm(pull) <= w[k]) {
      std::ostringstream os;
      os << "minimum at vertex " << k << " (pull " << norm(pull) << " <= weight " << w[k] << ")";
      throw NoInteriorMinimumError(k, os.str());
    }
  }

  const double vertex_guard = 1e-10 * diam;
  auto near_vertex = [&](Vec2 p) {
    for (int j = 0; j < 3; ++j) {
      if (distance(p, v[j]) <= vertex_guard) return j;
    }
    return -1;
  };

  Vec2 x = (v[0] + v[1] + v[2]) / 3.0;
  double cost = fermat_cost(x, v, w);
  FermatSolution sol;
  for (int it = 0; it <= opts.max_iterations; ++it) {
    const Vec2 g = gradient_unchecked(x, v, w);
    const SymMat2 h = hessian_unchecked(x, v, w);
    const double gn = norm(g);
    if (gn <= opts.tol) {
      sol.point = x;
      sol.cost = cost;
      sol.gradient_norm = gn;
      sol.iterations = it;
      sol.hessian_min_eigenvalue = h.min_eigenvalue();
      return sol;
    }
    if (it == opts.max_iterations) break;

    Vec2 step{-(h.yy * g.x - h.xy * g.y) / h.det(), -(h.xx * g.y - h.xy * g.x) / h.det()};
    if (!(h.det() > 0.0) || !strictly_inside(v, x + step) || dot(step, g) >= 0.0) {
      step = (-1.0 / h.trace()) * g;
      while (!strictly_inside(v, x + step)) step *= 0.5;
    }

    double alpha = 1.0;
    const double slope = dot(g, step);
    // Close to the optimum the decrease drops below the cost's round-off; then
    // a step that still shrinks the gradient is taken instead.
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * cost;
    auto acceptable = [&](double a, double c) {
      if (c <= cost + 1e-4 * a * slope) return true;
      return c <= cost + noise && norm(gradient_unchecked(x + a * step, v, w)) < gn;
    };
    double trial_cost = fermat_cost(x + step, v, w);
    int halvings = 0;
    while (!acceptable(alpha, trial_cost) && halvings < 60) {
      alpha *= 0.5;
      trial_cost = fermat_cost(x + alpha * step, v, w);
      ++halvings;
    }
    const Vec2 next = x + alpha * step;
    if (next == x) {
      // No representable progress left; accept if the gradient is at round-off.
      if (gn <= 64.0 * std::numeric_limits<double>::epsilon() * (w.zeta0 + w.zeta1 + w.zeta2)) {
        sol.point = x;
        sol.cost = cost;
        sol.gradient_norm = gn;
        sol.iterations = it;
        sol.hessian_min_eigenvalue = h.min_eigenvalue();
        return sol;
      }
      break;
    }
    x = next;
    cost = trial_cost;
    if (const int j = near_vertex(x); j >= 0) {
      throw NoInteriorMinimumError(j, "iterates converged onto vertex " + std::to_string(j));
    }
  }
  throw Error(ErrorKind::NonConvergence,
              "Fermat solve did not converge in " + std::to_string(opts.max_iterations) + " iterations");
}

JunctionAngles junction_angles(Vec2 p, const Triangle& v) {
  check_off_vertices(p, v);
  const Vec2 a = v[0] - p, b = v[1] - p, c = v[2] - p;
  auto turn = [](Vec2 from, Vec2 to) { return std::atan2(cross(from, to), dot(from, to)); };
  return {turn(a, b), turn(b, c), turn(c, a)};
}

GoodTriangle construct_good_triangle(const SurfaceTensions& s, double opening, double orientation) {
  const NeumannAngles gam = neumann_angles(s);
  if (!(opening > 0.0)) throw Error(ErrorKind::InvalidInput, "opening must be positive");
  if (opening >= gam.gamma12) {
    std::ostringstream os;
    os << "opening " << deg(opening) << " deg is not below Gamma_12 = " << deg(gam.gamma12) << " deg";
    throw Error(ErrorKind::OpeningTooWide, os.str());
  }
  // Triangle (O, tilde_p, P1) has angle theta at O and Gamma_01 at tilde_p, so
  // it closes only for theta < pi - Gamma_01. Likewise (O, tilde_p, P2) needs
  // opening - theta < pi - Gamma_02.
  const double theta_low = std::max(0.0, opening + gam.gamma02 - kPi);
  const double theta_high = std::min(opening, kPi - gam.gamma01);
  const double theta = 0.5 * (theta_low + theta_high);

  const double r1 = std::sin(gam.gamma01) / std::sin(theta + gam.gamma01);
  const double r2 = std::sin(gam.gamma02) / std::sin(opening - theta + gam.gamma02);
  GoodTriangle t;
  t.vertices = {Vec2{0.0, 0.0}, polar(r1, orientation), polar(r2, orientation + opening)};
  t.tilde_p = polar(1.0, orientation + theta);
  return t;
}

}  // namespace tfl
