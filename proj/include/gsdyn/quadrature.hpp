#pragma once

#include <cmath>
#include <functional>

namespace gsdyn {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

// Adaptive Simpson on [a, b] with Richardson correction. `converged` is false
// when some subinterval hit max_depth before meeting its share of `tolerance`.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tolerance, int max_depth = 50);

// Maximizes a unimodal function on [lo, hi] by golden-section search.
// Returns the maximizing abscissa.
double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                               int max_iterations = 300);

}  // namespace gsdyn
