#include "gcf/reference.hpp"

#include <cmath>

#include "gcf/common.hpp"

namespace gcf::ref {

SupportCurvature support_radii(const SphereGrid& g, const std::vector<double>& h) {
    const std::size_t m = g.size();
    SupportCurvature c;
    c.rho1.resize(m);
    c.rho2.resize(m);
    c.det.resize(m);
    c.gauss.resize(m);
    c.mean.resize(m);
    c.min_radius = 1e300;
    for (std::size_t i = 0; i < m; ++i) {
        double hm, hp;
        if (g.n == 1) {
            hm = h[(i + m - 1) % m];
            hp = h[(i + 1) % m];
        } else {
            hm = (i == 0) ? h[1] : h[i - 1];
            hp = (i + 1 == m) ? h[m - 2] : h[i + 1];
        }
        double d2 = (hp - 2.0 * h[i] + hm) / (g.spacing * g.spacing);
        double d1 = (hp - hm) / (2.0 * g.spacing);
        double r1 = d2 + h[i];
        double r2 = r1;
        if (g.n == 2 && !g.is_pole(i)) r2 = d1 / std::tan(g.angle[i]) + h[i];
        c.rho1[i] = r1;
        c.rho2[i] = r2;
        c.det[i] = (g.n == 1) ? r1 : r1 * r2;
        c.gauss[i] = 1.0 / c.det[i];
        c.mean[i] = (g.n == 1) ? 1.0 / r1 : 1.0 / r1 + 1.0 / r2;
        c.min_radius = std::min({c.min_radius, r1, r2});
    }
    if (c.min_radius <= 0.0) fail("ConvexityLost", "reference support_radii");
    return c;
}

GraphCurvature graph_curvature(const DomainGrid& g, const std::vector<double>& u) {
    const std::size_t m = g.size();
    const int nc = g.nbr_count();
    const double d = g.delta;
    GraphCurvature c;
    c.ux.assign(m, 0.0);
    c.uy.assign(m, 0.0);
    c.uxx.assign(m, 0.0);
    c.uxy.assign(m, 0.0);
    c.uyy.assign(m, 0.0);
    c.det.assign(m, 0.0);
    c.gauss.assign(m, 0.0);
    c.nu_vert.assign(m, 0.0);
    c.kmin.assign(m, 0.0);
    c.kmax.assign(m, 0.0);
    c.mu_min.assign(m, 0.0);
    c.valid.assign(m, 0);
    c.floored.assign(m, 0);
    for (std::size_t k = 0; k < m; ++k) {
        if (g.ring[k]) {
            const std::int32_t w = g.nbr[k * nc + 0], e = g.nbr[k * nc + 1];
            double gx = 0.0, gy = 0.0;
            if (w >= 0 && e >= 0)
                gx = (u[e] - u[w]) / (2.0 * d);
            else if (e >= 0)
                gx = (u[e] - u[k]) / d;
            else if (w >= 0)
                gx = (u[k] - u[w]) / d;
            if (g.spec.n == 2) {
                const std::int32_t s = g.nbr[k * nc + 2], n = g.nbr[k * nc + 3];
                if (s >= 0 && n >= 0)
                    gy = (u[n] - u[s]) / (2.0 * d);
                else if (n >= 0)
                    gy = (u[n] - u[k]) / d;
                else if (s >= 0)
                    gy = (u[k] - u[s]) / d;
            }
            c.ux[k] = gx;
            c.uy[k] = gy;
            c.nu_vert[k] = 1.0 / std::sqrt(1.0 + gx * gx + gy * gy);
            continue;
        }
        const std::int32_t* nb = &g.nbr[k * nc];
        double gx = (u[nb[1]] - u[nb[0]]) / (2.0 * d);
        double hxx = (u[nb[1]] - 2.0 * u[k] + u[nb[0]]) / (d * d);
        double gy = 0.0, hyy = 0.0, hxy = 0.0;
        if (g.spec.n == 2) {
            gy = (u[nb[3]] - u[nb[2]]) / (2.0 * d);
            hyy = (u[nb[3]] - 2.0 * u[k] + u[nb[2]]) / (d * d);
            hxy = (u[nb[7]] + u[nb[4]] - u[nb[6]] - u[nb[5]]) / (4.0 * d * d);
        }
        double w = 1.0 + gx * gx + gy * gy;
        double det = (g.spec.n == 1) ? hxx : hxx * hyy - hxy * hxy;
        if (det <= 0.0) {
            if (!g.collar[k]) fail("ConvexityLost", "reference graph_curvature");
            det = collar_det_floor;
            c.floored[k] = 1;
        }
        c.ux[k] = gx;
        c.uy[k] = gy;
        c.uxx[k] = hxx;
        c.uxy[k] = hxy;
        c.uyy[k] = hyy;
        c.det[k] = det;
        c.nu_vert[k] = 1.0 / std::sqrt(w);
        c.gauss[k] = (g.spec.n == 1) ? det / (w * std::sqrt(w)) : det / (w * w);
        if (g.spec.n == 1) {
            c.kmin[k] = c.kmax[k] = c.gauss[k];
            c.mu_min[k] = hxx;
        } else {
            double sw = std::sqrt(w);
            double m00 = ((1.0 + gy * gy) * hxx - gx * gy * hxy) / (w * sw);
            double m11 = ((1.0 + gx * gx) * hyy - gx * gy * hxy) / (w * sw);
            double tr = m00 + m11;
            double dd = det / (w * w);
            double disc = std::sqrt(std::max(tr * tr - 4.0 * dd, 0.0));
            c.kmin[k] = 0.5 * (tr - disc);
            c.kmax[k] = 0.5 * (tr + disc);
            double hdisc = std::sqrt(std::max((hxx - hyy) * (hxx - hyy) + 4.0 * hxy * hxy, 0.0));
            c.mu_min[k] = 0.5 * (hxx + hyy - hdisc);
        }
        c.valid[k] = 1;
    }
    return c;
}

double integrate(const SphereGrid& g, const std::vector<double>& f,
                 const std::vector<double>& density) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < g.size(); ++i)
        s += static_cast<long double>(f[i]) * density[i] * g.weight[i];
    return static_cast<double>(s);
}

std::vector<double> step_closed(const SphereGrid& g, const std::vector<double>& h,
                                double alpha, double dt) {
    SupportCurvature c = gcf::ref::support_radii(g, h);
    std::vector<double> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        out[i] = h[i] - dt * std::pow(c.gauss[i], alpha);
    return out;
}

std::vector<double> step_graph(const DomainGrid& g, const std::vector<double>& u,
                               double alpha, double dt) {
    GraphCurvature c = gcf::ref::graph_curvature(g, u);
    std::vector<double> out = u;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g.ring[k]) continue;  // caller owns the Dirichlet data
        out[k] = u[k] + dt * std::pow(c.gauss[k], alpha) / c.nu_vert[k];
    }
    return out;
}

}  // namespace gcf::ref
