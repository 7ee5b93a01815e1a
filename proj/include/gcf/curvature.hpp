#pragma once

#include <cstdint>
#include <vector>

#include "gcf/domain.hpp"
#include "gcf/sphere_grid.hpp"

namespace gcf {

// det D^2 u is clamped to this floor inside the boundary collar, where
// one-sided stencils misreport convexity. Outside the collar a
// non-positive determinant is an error.
inline constexpr double collar_det_floor = 1e-14;

// Principal radii and curvatures of a support function h on the Gauss-map
// grid. For n=1: rho1 = rho2 = h'' + h. For n=2 (axisymmetric):
// rho1 = h'' + h, rho2 = h' cot(phi) + h, with rho2 = h'' + h at the poles.
struct SupportCurvature {
    std::vector<double> rho1, rho2;
    std::vector<double> det;    // det W = product of radii
    std::vector<double> gauss;  // K = 1 / det W
    std::vector<double> mean;   // H = sum of principal curvatures
    double min_radius = 0.0;
};

SupportCurvature support_radii(const SphereGrid& g, const std::vector<double>& h);

// Gradient, Hessian and curvature of a height field on a domain grid.
// Gradients fall back to one-sided differences on the ring so the area
// density is defined everywhere; Hessian data exists only where valid.
struct GraphCurvature {
    std::vector<double> ux, uy;
    std::vector<double> uxx, uxy, uyy;
    std::vector<double> det;       // det D^2 u, floored in the collar
    std::vector<double> gauss;     // K = det D^2 u / (1+|Du|^2)^((n+2)/2)
    std::vector<double> nu_vert;   // <-nu, e_{n+1}> = (1+|Du|^2)^(-1/2)
    std::vector<double> kmin, kmax;  // principal curvatures of the graph
    std::vector<double> mu_min;      // smallest Hessian eigenvalue
    std::vector<std::uint8_t> valid;
    std::vector<std::uint8_t> floored;
};

GraphCurvature graph_curvature(const DomainGrid& g, const std::vector<double>& u);

// Quadrature sum of f * density over the grid, compensated, fixed order.
double integrate(const SphereGrid& g, const std::vector<double>& f,
                 const std::vector<double>& density);
// Graph version: cell measure delta^n; mask (if given) selects nodes.
double integrate(const DomainGrid& g, const std::vector<double>& f,
                 const std::vector<double>& density,
                 const std::vector<std::uint8_t>* mask = nullptr);

}  // namespace gcf
