#pragma once

#include <array>

#include "tfl/geometry.hpp"
#include "tfl/tensions.hpp"

namespace tfl {

// Weight zeta_j multiplies the distance to vertex P_j. From tensions the
// mapping is zeta0 = sigma12, zeta1 = sigma02, zeta2 = sigma01: the weight on a
// vertex is the tension of the interface that runs toward it.
struct FermatWeights {
  double zeta0, zeta1, zeta2;

  static FermatWeights from_tensions(const SurfaceTensions& s) {
    return {s.sigma12(), s.sigma02(), s.sigma01()};
  }
  double operator[](int j) const { return j == 0 ? zeta0 : (j == 1 ? zeta1 : zeta2); }
  FermatWeights scaled(double f) const { return {f * zeta0, f * zeta1, f * zeta2}; }
};

struct GoodTriangle {
  Triangle vertices;  // P0, P1, P2, counter-clockwise
  Vec2 tilde_p;       // interior point realizing the Neumann angles
};

struct FermatSolution {
  Vec2 point;
  double cost = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  double hessian_min_eigenvalue = 0.0;
};

struct SymMat2 {
  double xx = 0.0, xy = 0.0, yy = 0.0;

  double trace() const { return xx + yy; }
  double det() const { return xx * yy - xy * xy; }
  double min_eigenvalue() const;
};

// Sum_j zeta_j |p - P_j|.
double fermat_cost(Vec2 p, const Triangle& vertices, const FermatWeights& w);

// Throw VertexSingularity if p is within 1e-14 * diameter of a vertex.
Vec2 fermat_gradient(Vec2 p, const Triangle& vertices, const FermatWeights& w);
SymMat2 fermat_hessian(Vec2 p, const Triangle& vertices, const FermatWeights& w);

struct FermatOptions {
  double tol = 1e-12;  // absolute bound on the gradient norm
  int max_iterations = 200;
};

// Damped Newton from the centroid with Armijo backtracking; gradient descent
// whenever the Newton step leaves the triangle. Throws NoInteriorMinimumError
// when the minimum is a vertex, NonConvergence past the iteration cap.
FermatSolution fermat_solve(const Triangle& vertices, const FermatWeights& w,
                            const FermatOptions& opts = {});

// Signed counter-clockwise angles (gamma01, gamma12, gamma02) between the rays
// p->P0, p->P1, p->P2: gamma01 turns v0 to v1, gamma12 turns v1 to v2 and
// gamma02 turns v2 back to v0. Each lies in (-pi, pi]; their sum is 2*pi for an
// interior p of a counter-clockwise triangle and 0 for an exterior one.
struct JunctionAngles {
  double gamma01, gamma12, gamma02;
  double sum() const { return gamma01 + gamma12 + gamma02; }
};
JunctionAngles junction_angles(Vec2 p, const Triangle& vertices);

// P0 at the origin, P1 on the ray at `orientation`, P2 on the ray at
// `orientation + opening`; tilde_p on the unit circle inside that sector.
// Requires opening < Gamma_12, otherwise OpeningTooWide.
GoodTriangle construct_good_triangle(const SurfaceTensions& s, double opening, double orientation);

}  // namespace tfl
