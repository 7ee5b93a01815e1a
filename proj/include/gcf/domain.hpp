#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <vector>

namespace gcf {

enum class DomainShape { interval, disk, polygon };

// Bounded convex base domain Omega together with the margin that defines
// the interior compact subset Omega' monitors are restricted to.
struct DomainSpec {
    int n = 1;
    DomainShape shape = DomainShape::interval;
    double half_width = 1.0;                         // interval (-a, a)
    double radius = 1.0;                             // disk of radius R
    std::vector<std::array<double, 2>> vertices;     // convex polygon, ccw
    double margin = 0.25;

    double area() const;  // |Omega| (length for n=1)
    bool contains(double x, double y) const;
    double boundary_distance(double x, double y) const;
    std::array<double, 2> centroid() const;
    void validate() const;

    static DomainSpec interval(double a, double margin);
    static DomainSpec disk(double R, double margin);
    static DomainSpec polygon(std::vector<std::array<double, 2>> verts, double margin);
};

// Uniform Cartesian grid over the nodes of the lattice {i*delta} that lie
// inside Omega. Ring nodes are those whose centered stencil leaves the
// node set; they carry Dirichlet data. The collar is the 2-cell band
// around the ring where one-sided effects make the Hessian unreliable.
struct DomainGrid {
    DomainSpec spec;
    double delta = 0.0;

    std::vector<int> gi, gj;              // lattice indices
    std::vector<double> x, y;             // node coordinates
    std::vector<std::int32_t> nbr;        // nbr_count() entries per node, -1 if absent
    std::vector<std::uint8_t> ring;
    std::vector<std::uint8_t> collar;
    std::vector<std::uint8_t> omega_prime;
    std::vector<std::int32_t> interior;   // node ids with full stencils
    std::int32_t center = -1;             // node nearest the centroid

    std::size_t size() const { return x.size(); }
    int nbr_count() const { return spec.n == 1 ? 2 : 8; }
    // neighbor slot layout: n=1 [W,E]; n=2 [W,E,S,N,SW,SE,NW,NE]
    std::int32_t neighbor(std::size_t node, int slot) const {
        return nbr[node * static_cast<std::size_t>(nbr_count()) + static_cast<std::size_t>(slot)];
    }
    // lattice lookup, -1 if (i,j) is not a node
    std::int32_t find(int i, int j) const {
        if (std::abs(i) > imax_ || std::abs(j) > jmax_) return -1;
        return id_map_[static_cast<std::size_t>(i + imax_) * (2 * jmax_ + 1) + (j + jmax_)];
    }

    int imax_ = 0, jmax_ = 0;
    std::vector<std::int32_t> id_map_;
};

// edge_trim > 0 keeps the node set a fixed distance inside the domain
// boundary. Graph runs use a few cells of trim in 2-D so the staircase
// ring does not sample the blow-up zone of translator data; Omega' is
// always measured from the true boundary.
DomainGrid make_domain_grid(const DomainSpec& spec, double delta, double edge_trim = 0.0);

}  // namespace gcf
