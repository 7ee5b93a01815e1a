#include "gcf/sphere_grid.hpp"

#include <cmath>

#include "gcf/common.hpp"
#include "gcf/parallel.hpp"

namespace gcf {

SphereGrid make_circle_grid(std::size_t n_theta) {
    if (n_theta < 16) fail("GridInvalid", "n_theta must be >= 16");
    SphereGrid g;
    g.n = 1;
    g.spacing = 2.0 * pi / static_cast<double>(n_theta);
    g.angle.resize(n_theta);
    g.weight.assign(n_theta, g.spacing);
    for (std::size_t i = 0; i < n_theta; ++i) g.angle[i] = static_cast<double>(i) * g.spacing;
    return g;
}

SphereGrid make_axisym_grid(std::size_t n_phi) {
    if (n_phi < 16) fail("GridInvalid", "n_phi must be >= 16");
    SphereGrid g;
    g.n = 2;
    g.spacing = pi / static_cast<double>(n_phi - 1);
    g.angle.resize(n_phi);
    g.weight.resize(n_phi);
    for (std::size_t j = 0; j < n_phi; ++j) g.angle[j] = static_cast<double>(j) * g.spacing;
    // exact zone areas: w_j = 2*pi * (cos(phi_j - d/2) - cos(phi_j + d/2)),
    // half cells at the poles; the sum telescopes to 4*pi.
    const double half = 0.5 * g.spacing;
    for (std::size_t j = 0; j < n_phi; ++j) {
        double lo = (j == 0) ? 0.0 : g.angle[j] - half;
        double hi = (j + 1 == n_phi) ? pi : g.angle[j] + half;
        g.weight[j] = 2.0 * pi * (std::cos(lo) - std::cos(hi));
    }
    return g;
}

void sphere_diff(const SphereGrid& g, const std::vector<double>& f,
                 std::vector<double>& df, std::vector<double>& d2f) {
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(g.size());
    if (static_cast<std::ptrdiff_t>(f.size()) != m) fail("GridMismatch", "field size");
    df.resize(m);
    d2f.resize(m);
    const double inv2h = 1.0 / (2.0 * g.spacing);
    const double invh2 = 1.0 / (g.spacing * g.spacing);
    if (g.n == 1) {
        parallel_for(m, [&](std::ptrdiff_t i) {
            std::ptrdiff_t ip = (i + 1 == m) ? 0 : i + 1;
            std::ptrdiff_t im = (i == 0) ? m - 1 : i - 1;
            df[i] = (f[ip] - f[im]) * inv2h;
            d2f[i] = (f[ip] - 2.0 * f[i] + f[im]) * invh2;
        });
    } else {
        parallel_for(m, [&](std::ptrdiff_t j) {
            // ghost values by even reflection across phi = 0 and phi = pi
            double fm = (j == 0) ? f[1] : f[j - 1];
            double fp = (j + 1 == m) ? f[m - 2] : f[j + 1];
            df[j] = (fp - fm) * inv2h;
            d2f[j] = (fp - 2.0 * f[j] + fm) * invh2;
        });
    }
}

}  // namespace gcf
