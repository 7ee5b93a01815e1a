#pragma once

#include <vector>

namespace gcf {

// Gauss-map domain for the closed flow. n=1 is a periodic angle grid on
// the circle; n=2 is the axisymmetric reduction: a polar-angle grid on
// [0,pi] including both poles, with even-reflection ghost stencils.
//
// Quadrature weights are exact cell measures (arc length / spherical zone
// area), so they sum to |S^n| to rounding, not just to O(dphi^2).
struct SphereGrid {
    int n = 1;                    // hypersurface dimension, 1 or 2
    std::vector<double> angle;    // theta (n=1) or phi (n=2) per node
    std::vector<double> weight;   // quadrature weight per node
    double spacing = 0.0;         // uniform angle step

    std::size_t size() const { return angle.size(); }
    bool is_pole(std::size_t j) const { return n == 2 && (j == 0 || j + 1 == size()); }
};

SphereGrid make_circle_grid(std::size_t n_theta);
SphereGrid make_axisym_grid(std::size_t n_phi);

// Centered first/second differences with the grid's topology (periodic
// wrap for n=1, even reflection across the poles for n=2).
void sphere_diff(const SphereGrid& g, const std::vector<double>& f,
                 std::vector<double>& df, std::vector<double>& d2f);

}  // namespace gcf
