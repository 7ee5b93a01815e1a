#include "gcf/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcf/common.hpp"

namespace gcf {

DomainSpec DomainSpec::interval(double a, double margin) {
    DomainSpec s;
    s.n = 1;
    s.shape = DomainShape::interval;
    s.half_width = a;
    s.margin = margin;
    s.validate();
    return s;
}

DomainSpec DomainSpec::disk(double R, double margin) {
    DomainSpec s;
    s.n = 2;
    s.shape = DomainShape::disk;
    s.radius = R;
    s.margin = margin;
    s.validate();
    return s;
}

DomainSpec DomainSpec::polygon(std::vector<std::array<double, 2>> verts, double margin) {
    DomainSpec s;
    s.n = 2;
    s.shape = DomainShape::polygon;
    s.vertices = std::move(verts);
    s.margin = margin;
    s.validate();
    return s;
}

static double polygon_area(const std::vector<std::array<double, 2>>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % v.size()];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * a;
}

double DomainSpec::area() const {
    switch (shape) {
        case DomainShape::interval: return 2.0 * half_width;
        case DomainShape::disk: return pi * radius * radius;
        case DomainShape::polygon: return polygon_area(vertices);
    }
    return 0.0;
}

bool DomainSpec::contains(double px, double py) const {
    switch (shape) {
        case DomainShape::interval: return std::abs(px) < half_width;
        case DomainShape::disk: return px * px + py * py < radius * radius;
        case DomainShape::polygon: {
            for (std::size_t i = 0; i < vertices.size(); ++i) {
                const auto& p = vertices[i];
                const auto& q = vertices[(i + 1) % vertices.size()];
                double cross = (q[0] - p[0]) * (py - p[1]) - (q[1] - p[1]) * (px - p[0]);
                if (cross <= 0.0) return false;
            }
            return true;
        }
    }
    return false;
}

double DomainSpec::boundary_distance(double px, double py) const {
    switch (shape) {
        case DomainShape::interval: return half_width - std::abs(px);
        case DomainShape::disk: return radius - std::sqrt(px * px + py * py);
        case DomainShape::polygon: {
            double d = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < vertices.size(); ++i) {
                const auto& p = vertices[i];
                const auto& q = vertices[(i + 1) % vertices.size()];
                double ex = q[0] - p[0], ey = q[1] - p[1];
                double len = std::hypot(ex, ey);
                double dist = (ex * (py - p[1]) - ey * (px - p[0])) / len;
                d = std::min(d, dist);
            }
            return d;
        }
    }
    return 0.0;
}

std::array<double, 2> DomainSpec::centroid() const {
    if (shape != DomainShape::polygon) return {0.0, 0.0};
    double cx = 0.0, cy = 0.0, a6 = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto& p = vertices[i];
        const auto& q = vertices[(i + 1) % vertices.size()];
        double w = p[0] * q[1] - q[0] * p[1];
        cx += (p[0] + q[0]) * w;
        cy += (p[1] + q[1]) * w;
        a6 += w;
    }
    return {cx / (3.0 * a6), cy / (3.0 * a6)};
}

void DomainSpec::validate() const {
    if (margin <= 0.0) fail("DomainInvalid", "margin must be positive");
    switch (shape) {
        case DomainShape::interval:
            if (n != 1) fail("DomainInvalid", "interval requires n=1");
            if (half_width <= 0.0) fail("DomainInvalid", "half width must be positive");
            if (half_width <= margin) fail("DomainInvalid", "margin leaves Omega' empty");
            break;
        case DomainShape::disk:
            if (n != 2) fail("DomainInvalid", "disk requires n=2");
            if (radius <= 0.0) fail("DomainInvalid", "radius must be positive");
            if (radius <= margin) fail("DomainInvalid", "margin leaves Omega' empty");
            break;
        case DomainShape::polygon: {
            if (n != 2) fail("DomainInvalid", "polygon requires n=2");
            if (vertices.size() < 3) fail("DomainInvalid", "polygon needs >= 3 vertices");
            if (polygon_area(vertices) <= 0.0)
                fail("DomainInvalid", "polygon must be ccw with positive area");
            for (std::size_t i = 0; i < vertices.size(); ++i) {
                const auto& a = vertices[i];
                const auto& b = vertices[(i + 1) % vertices.size()];
                const auto& c = vertices[(i + 2) % vertices.size()];
                double cross =
                    (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
                if (cross < -1e-12) fail("DomainInvalid", "polygon is not convex");
            }
            auto c = centroid();
            if (boundary_distance(c[0], c[1]) <= margin)
                fail("DomainInvalid", "margin leaves Omega' empty");
            break;
        }
    }
}

DomainGrid make_domain_grid(const DomainSpec& spec, double delta, double edge_trim) {
    spec.validate();
    if (delta <= 0.0) fail("GridInvalid", "delta must be positive");
    if (edge_trim < 0.0) fail("GridInvalid", "edge_trim must be >= 0");
    DomainGrid g;
    g.spec = spec;
    g.delta = delta;

    double ext = (spec.shape == DomainShape::interval) ? spec.half_width
                 : (spec.shape == DomainShape::disk)   ? spec.radius
                                                       : 0.0;
    if (spec.shape == DomainShape::polygon)
        for (const auto& v : spec.vertices)
            ext = std::max({ext, std::abs(v[0]), std::abs(v[1])});

    const int imax = static_cast<int>(std::ceil(ext / delta)) + 1;
    const int jmax = (spec.n == 1) ? 0 : imax;
    const int ni = 2 * imax + 1, nj = 2 * jmax + 1;
    g.imax_ = imax;
    g.jmax_ = jmax;
    g.id_map_.assign(static_cast<std::size_t>(ni) * nj, -1);
    auto slot = [&](int i, int j) -> std::int32_t& {
        return g.id_map_[static_cast<std::size_t>(i + imax) * nj + (j + jmax)];
    };

    for (int i = -imax; i <= imax; ++i) {
        for (int j = -jmax; j <= jmax; ++j) {
            double px = i * delta, py = j * delta;
            if (!spec.contains(px, py)) continue;
            if (edge_trim > 0.0 && spec.boundary_distance(px, py) <= edge_trim) continue;
            slot(i, j) = static_cast<std::int32_t>(g.x.size());
            g.gi.push_back(i);
            g.gj.push_back(j);
            g.x.push_back(px);
            g.y.push_back(py);
        }
    }
    const std::size_t m = g.size();
    if (m == 0) fail("GridInvalid", "no lattice nodes inside Omega");

    const int nc = g.nbr_count();
    static const int off1[2][2] = {{-1, 0}, {1, 0}};
    static const int off2[8][2] = {{-1, 0}, {1, 0},  {0, -1}, {0, 1},
                                   {-1, -1}, {1, -1}, {-1, 1}, {1, 1}};
    g.nbr.assign(m * static_cast<std::size_t>(nc), -1);
    g.ring.assign(m, 0);
    for (std::size_t k = 0; k < m; ++k) {
        bool full = true;
        for (int s = 0; s < nc; ++s) {
            const int* o = (spec.n == 1) ? off1[s] : off2[s];
            int ii = g.gi[k] + o[0], jj = g.gj[k] + o[1];
            std::int32_t nb = (std::abs(ii) <= imax && std::abs(jj) <= jmax) ? slot(ii, jj) : -1;
            g.nbr[k * nc + s] = nb;
            if (nb < 0) full = false;
        }
        g.ring[k] = full ? 0 : 1;
    }
    for (std::size_t k = 0; k < m; ++k)
        if (!g.ring[k]) g.interior.push_back(static_cast<std::int32_t>(k));
    if (g.interior.size() < 9) fail("GridInvalid", "fewer than 9 interior nodes");

    // collar: within two 8-neighborhood hops of the ring (ring included)
    g.collar = g.ring;
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<std::uint8_t> next = g.collar;
        for (std::size_t k = 0; k < m; ++k) {
            if (next[k]) continue;
            for (int s = 0; s < nc; ++s) {
                std::int32_t nb = g.nbr[k * nc + s];
                if (nb >= 0 && g.collar[nb]) {
                    next[k] = 1;
                    break;
                }
            }
        }
        g.collar.swap(next);
    }

    g.omega_prime.assign(m, 0);
    for (std::size_t k = 0; k < m; ++k)
        g.omega_prime[k] = spec.boundary_distance(g.x[k], g.y[k]) >= spec.margin ? 1 : 0;

    auto c = spec.centroid();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
        double d = std::hypot(g.x[k] - c[0], g.y[k] - c[1]);
        if (d < best) {
            best = d;
            g.center = static_cast<std::int32_t>(k);
        }
    }
    return g;
}

}  // namespace gcf
