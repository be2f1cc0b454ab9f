#include "tfl/quadrature.hpp"

#include <cmath>

#include "tfl/error.hpp"

namespace tfl {

namespace {

// Peaked integrands can match the coarse estimate by accident.
constexpr int kMinDepth = 5;

struct Simpson {
  const std::function<double(double)>& f;
  int max_depth;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= kMinDepth && std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth) {
      throw Error(ErrorKind::QuadratureFailure, "adaptive Simpson exceeded depth limit");
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const Simpson s{f, max_depth};
  // Split once up front so a symmetric integrand cannot fool the first estimate.
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  return s.recurse(a, m, fa, flm, fm, left, 0.5 * abs_tol, 1) +
         s.recurse(m, b, fm, frm, fb, right, 0.5 * abs_tol, 1);
}

}  // namespace tfl
