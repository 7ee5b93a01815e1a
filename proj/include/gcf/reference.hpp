#pragma once

#include <vector>

#include "gcf/curvature.hpp"
#include "gcf/domain.hpp"
#include "gcf/sphere_grid.hpp"

// Plain serial reference kernels. These spell the stencils out
// longhand with no scheduling or precomputation; the unit tests hold the
// production (OpenMP) kernels to them and the benchmark tool measures the
// gap. Keep them boring.
namespace gcf::ref {

SupportCurvature support_radii(const SphereGrid& g, const std::vector<double>& h);
GraphCurvature graph_curvature(const DomainGrid& g, const std::vector<double>& u);
double integrate(const SphereGrid& g, const std::vector<double>& f,
                 const std::vector<double>& density);
// one explicit Euler step of each flow, serial
std::vector<double> step_closed(const SphereGrid& g, const std::vector<double>& h,
                                double alpha, double dt);
std::vector<double> step_graph(const DomainGrid& g, const std::vector<double>& u,
                               double alpha, double dt);

}  // namespace gcf::ref
