#pragma once

#include <functional>

namespace tfl {

// Adaptive Simpson with Richardson correction. Throws QuadratureFailure when
// a subinterval would need more than `max_depth` bisections.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10, int max_depth = 40);

}  // namespace tfl
