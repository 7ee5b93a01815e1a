#pragma once

#include <functional>

namespace gcf {

// Tanh-sinh (double exponential) quadrature on (a,b). Handles integrable
// endpoint singularities, which the speed-mass integrand has for
// alpha < 1. Deterministic level refinement, no randomness.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13);

}  // namespace gcf
