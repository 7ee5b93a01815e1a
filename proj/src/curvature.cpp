#include "gcf/curvature.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "gcf/common.hpp"
#include "gcf/parallel.hpp"
#include "gcf/summation.hpp"

namespace gcf {

SupportCurvature support_radii(const SphereGrid& g, const std::vector<double>& h) {
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(g.size());
    if (static_cast<std::ptrdiff_t>(h.size()) != m) fail("GridMismatch", "support field size");
    std::vector<double> dh, d2h;
    sphere_diff(g, h, dh, d2h);

    SupportCurvature c;
    c.rho1.resize(m);
    c.rho2.resize(m);
    c.det.resize(m);
    c.gauss.resize(m);
    c.mean.resize(m);

    if (g.n == 1) {
        parallel_for(m, [&](std::ptrdiff_t i) {
            double w = d2h[i] + h[i];
            c.rho1[i] = c.rho2[i] = w;
            c.det[i] = w;
            c.gauss[i] = 1.0 / w;
            c.mean[i] = 1.0 / w;
        });
    } else {
        parallel_for(m, [&](std::ptrdiff_t j) {
            double r1 = d2h[j] + h[j];
            // rho2 = h' cot(phi) + h; at the poles h' cot(phi) -> h''
            double r2 = g.is_pole(static_cast<std::size_t>(j))
                            ? r1
                            : dh[j] / std::tan(g.angle[j]) + h[j];
            c.rho1[j] = r1;
            c.rho2[j] = r2;
            c.det[j] = r1 * r2;
            c.gauss[j] = 1.0 / (r1 * r2);
            c.mean[j] = 1.0 / r1 + 1.0 / r2;
        });
    }

    double mn = c.rho1[0];
    std::ptrdiff_t bad = -1;
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        double lo = std::min(c.rho1[i], c.rho2[i]);
        if (lo < mn) mn = lo;
        if (lo <= 0.0 && bad < 0) bad = i;
    }
    c.min_radius = mn;
    if (bad >= 0)
        fail("ConvexityLost", "principal radius " + std::to_string(std::min(c.rho1[bad], c.rho2[bad])) +
                                  " at node " + std::to_string(bad));
    return c;
}

GraphCurvature graph_curvature(const DomainGrid& g, const std::vector<double>& u) {
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(g.size());
    if (static_cast<std::ptrdiff_t>(u.size()) != m) fail("GridMismatch", "height field size");
    const double d = g.delta;
    const double inv2d = 1.0 / (2.0 * d), invd2 = 1.0 / (d * d);
    const int nc = g.nbr_count();
    const bool one_d = g.spec.n == 1;

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

    std::atomic<std::ptrdiff_t> bad{-1};

    parallel_for(m, [&](std::ptrdiff_t k) {
        const std::int32_t* nb = &g.nbr[static_cast<std::size_t>(k) * nc];
        auto uval = [&](int slot) { return u[nb[slot]]; };
        const double uc = u[k];

        if (g.ring[k]) {
            // one-sided gradient so the area density exists on the ring
            double gx = 0.0, gy = 0.0;
            if (nb[0] >= 0 && nb[1] >= 0)
                gx = (uval(1) - uval(0)) * inv2d;
            else if (nb[1] >= 0)
                gx = (uval(1) - uc) / d;
            else if (nb[0] >= 0)
                gx = (uc - uval(0)) / d;
            if (!one_d) {
                if (nb[2] >= 0 && nb[3] >= 0)
                    gy = (uval(3) - uval(2)) * inv2d;
                else if (nb[3] >= 0)
                    gy = (uval(3) - uc) / d;
                else if (nb[2] >= 0)
                    gy = (uc - uval(2)) / d;
            }
            c.ux[k] = gx;
            c.uy[k] = gy;
            c.nu_vert[k] = 1.0 / std::sqrt(1.0 + gx * gx + gy * gy);
            return;
        }

        double gx = (uval(1) - uval(0)) * inv2d;
        double hxx = (uval(1) - 2.0 * uc + uval(0)) * invd2;
        double gy = 0.0, hyy = 0.0, hxy = 0.0;
        if (!one_d) {
            gy = (uval(3) - uval(2)) * inv2d;
            hyy = (uval(3) - 2.0 * uc + uval(2)) * invd2;
            hxy = (u[nb[7]] + u[nb[4]] - u[nb[6]] - u[nb[5]]) * (0.25 * invd2);
        }
        double grad2 = gx * gx + gy * gy;
        double w = 1.0 + grad2;
        double det = one_d ? hxx : hxx * hyy - hxy * hxy;

        if (det <= 0.0) {
            if (g.collar[k]) {
                det = collar_det_floor;
                c.floored[k] = 1;
            } else {
                std::ptrdiff_t expect = -1;
                bad.compare_exchange_strong(expect, k);
            }
        }

        c.ux[k] = gx;
        c.uy[k] = gy;
        c.uxx[k] = hxx;
        c.uxy[k] = hxy;
        c.uyy[k] = hyy;
        c.det[k] = det;
        c.nu_vert[k] = 1.0 / std::sqrt(w);
        c.gauss[k] = one_d ? det / (w * std::sqrt(w)) : det / (w * w);
        if (one_d) {
            c.kmin[k] = c.kmax[k] = c.gauss[k];
            c.mu_min[k] = hxx;
        } else {
            // principal curvatures: eigenvalues of g^{-1} h for the graph
            double sw = std::sqrt(w);
            double m00 = ((1.0 + gy * gy) * hxx - gx * gy * hxy) / (w * sw);
            double m11 = ((1.0 + gx * gx) * hyy - gx * gy * hxy) / (w * sw);
            double tr = m00 + m11;
            double dt2 = det / (w * w);
            double disc = tr * tr - 4.0 * dt2;
            disc = disc > 0.0 ? std::sqrt(disc) : 0.0;
            c.kmin[k] = 0.5 * (tr - disc);
            c.kmax[k] = 0.5 * (tr + disc);
            double htr = hxx + hyy;
            double hdisc = std::sqrt(std::max((hxx - hyy) * (hxx - hyy) + 4.0 * hxy * hxy, 0.0));
            c.mu_min[k] = 0.5 * (htr - hdisc);
        }
        c.valid[k] = 1;
    });

    std::ptrdiff_t b = bad.load();
    if (b >= 0)
        fail("ConvexityLost", "det D^2 u <= 0 outside the collar at node " + std::to_string(b) +
                                  " (x=" + std::to_string(g.x[b]) + ", y=" + std::to_string(g.y[b]) + ")");
    return c;
}

double integrate(const SphereGrid& g, const std::vector<double>& f,
                 const std::vector<double>& density) {
    if (f.size() != g.size() || density.size() != g.size())
        fail("GridMismatch", "integrate: field/density size");
    CompensatedSum s;
    for (std::size_t i = 0; i < g.size(); ++i) s.add(f[i] * density[i] * g.weight[i]);
    return s.value();
}

double integrate(const DomainGrid& g, const std::vector<double>& f,
                 const std::vector<double>& density,
                 const std::vector<std::uint8_t>* mask) {
    if (f.size() != g.size() || density.size() != g.size())
        fail("GridMismatch", "integrate: field/density size");
    if (mask && mask->size() != g.size()) fail("GridMismatch", "integrate: mask size");
    const double cell = (g.spec.n == 1) ? g.delta : g.delta * g.delta;
    CompensatedSum s;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (mask && !(*mask)[i]) continue;
        s.add(f[i] * density[i] * cell);
    }
    return s.value();
}

}  // namespace gcf
