#include "gcf/graph_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcf/closed_flow.hpp"  // pow_alpha
#include "gcf/common.hpp"
#include "gcf/interp.hpp"
#include "gcf/parallel.hpp"
#include "gcf/summation.hpp"

namespace gcf::graph {

using closed::pow_alpha;

double BarrierPair::upper(double r, double t) const {
    double ra = std::abs(r) * scale_up;
    if (ra >= base.radius)
        fail("SolitonDomainMismatch", "upper barrier undefined at r=" + std::to_string(r));
    return base.eval(ra) / scale_up + L + upper_speed() * t;
}

double BarrierPair::lower(double r, double t) const {
    return base.eval(std::abs(r) * scale_dn) / scale_dn - L + lower_speed() * t;
}

BarrierPair make_barriers(const DomainSpec& domain, double eps0,
                          const soliton::SolitonProfile& u_omega,
                          const DomainGrid& grid, const std::vector<double>& u0) {
    if (!(eps0 >= 0.0 && eps0 < 1.0 / 6.0))
        fail("EpsilonOutOfRange", "need 0 <= eps0 < 1/6, got " + std::to_string(eps0));
    double dom_r = (domain.shape == DomainShape::interval) ? domain.half_width : domain.radius;
    if (u_omega.radius < dom_r * (1.0 - 1e-9))
        fail("SolitonDomainMismatch", "soliton not defined on all of Omega");
    BarrierPair b;
    b.base = u_omega;
    b.eps0 = eps0;
    b.lambda = u_omega.lambda;
    double na = domain.n * u_omega.alpha;
    b.scale_up = std::pow(1.0 + eps0, 1.0 / na);
    b.scale_dn = std::pow(1.0 - eps0, 1.0 / na);
    // Omega' must sit strictly inside the shrunk domain of the upper barrier
    if ((dom_r - domain.margin) * b.scale_up >= u_omega.radius)
        fail("SolitonDomainMismatch", "Omega' exits the upper-barrier domain; shrink eps0");

    double need = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double r = (domain.n == 1) ? std::abs(grid.x[k]) : std::hypot(grid.x[k], grid.y[k]);
        double ubar = u_omega.eval(r * b.scale_dn) / b.scale_dn;
        need = std::max(need, ubar - u0[k]);
        if (r * b.scale_up < u_omega.radius) {
            double uhat = u_omega.eval(r * b.scale_up) / b.scale_up;
            need = std::max(need, u0[k] - uhat);
        }
    }
    b.L = need + 1.0;
    return b;
}

ComparisonCheck check_comparison(const GraphFlowState& s, const BarrierPair& b) {
    const DomainGrid& g = *s.grid;
    ComparisonCheck out;
    double worst = -1.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!g.omega_prime[k]) continue;
        double r = (g.spec.n == 1) ? std::abs(g.x[k]) : std::hypot(g.x[k], g.y[k]);
        double lo = b.lower(r, s.t) - s.u[k];
        double hi = s.u[k] - b.upper(r, s.t);
        double v = std::max(lo, hi);
        if (v > worst) {
            worst = v;
            out.worst_node = static_cast<std::int32_t>(k);
        }
        out.lower_violation = std::max(out.lower_violation, lo);
        out.upper_violation = std::max(out.upper_violation, hi);
    }
    out.lower_violation = std::max(out.lower_violation, 0.0);
    out.upper_violation = std::max(out.upper_violation, 0.0);
    return out;
}

static std::vector<double> speed_field(const DomainGrid& g, const GraphCurvature& c,
                                       double alpha) {
    std::vector<double> ut(g.size(), 0.0);
    parallel_for(static_cast<std::ptrdiff_t>(g.size()), [&](std::ptrdiff_t k) {
        if (c.valid[k]) ut[k] = pow_alpha(c.gauss[k], alpha) / c.nu_vert[k];
    });
    return ut;
}

InteriorEstimateRecord interior_monitor(const GraphFlowState& s, const GraphCurvature& c) {
    const DomainGrid& g = *s.grid;
    InteriorEstimateRecord r;
    r.t = s.t;
    bool any = false;
    double umin = 1e300, umax = -1e300;
    r.min_ut = 1e300;
    r.max_ut = -1e300;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!g.omega_prime[k] || !c.valid[k]) continue;
        any = true;
        double ut = pow_alpha(c.gauss[k], s.alpha) / c.nu_vert[k];
        r.min_ut = std::min(r.min_ut, ut);
        r.max_ut = std::max(r.max_ut, ut);
        r.max_inv_nu = std::max(r.max_inv_nu, 1.0 / c.nu_vert[k]);
        r.max_inv_kmin = std::max(r.max_inv_kmin, 1.0 / c.kmin[k]);
        r.max_kmax = std::max(r.max_kmax, c.kmax[k]);
        umin = std::min(umin, s.u[k]);
        umax = std::max(umax, s.u[k]);
    }
    if (!any) fail("EmptyInterior", "no valid nodes in Omega'");
    r.osc = umax - umin;
    return r;
}

double check_time_harnack(const DomainGrid& grid, const std::vector<double>& ut1, double t1,
                          const std::vector<double>& ut2, double t2, double alpha) {
    if (!(t1 >= 0.01 && t2 > t1)) fail("TimeOrder", "need 0.01 <= t1 < t2");
    double na = grid.spec.n * alpha;
    double bound = std::pow(t1 / t2, na / (1.0 + na));
    double slack = 1e300;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!grid.omega_prime[k]) continue;
        slack = std::min(slack, ut2[k] - bound * ut1[k]);
    }
    return slack;
}

double dt_stable_graph(const DomainGrid& g, const GraphCurvature& c, double alpha,
                       double c_safe) {
    double dt = 1e300;
    for (std::int32_t k : g.interior) {
        if (!c.valid[k] || c.floored[k] || c.mu_min[k] <= 0.0) continue;
        double speed = pow_alpha(c.gauss[k], alpha) / c.nu_vert[k];
        dt = std::min(dt, c_safe * g.delta * g.delta * c.mu_min[k] / (alpha * speed));
    }
    return dt;
}

static void advance(GraphFlowState& s, const GraphCurvature& c, double dt) {
    const DomainGrid& g = *s.grid;
    const double tn = s.t + dt;
    const double alpha = s.alpha;
    std::vector<double>& u = s.u;
    parallel_for(static_cast<std::ptrdiff_t>(g.size()), [&](std::ptrdiff_t k) {
        if (g.ring[k])
            u[k] = s.ring_base[k] + s.ring_speed * tn;
        else
            u[k] += dt * pow_alpha(c.gauss[k], alpha) / c.nu_vert[k];
    });
    s.t = tn;
}

GraphFlowState step_graph(const GraphFlowState& s, double dt) {
    GraphCurvature c = graph_curvature(*s.grid, s.u);
    double dt_max = dt_stable_graph(*s.grid, c, s.alpha);
    if (dt > dt_max * (1.0 + 1e-9))
        fail("StepTooLarge", "dt=" + std::to_string(dt) + " exceeds dt_max=" + std::to_string(dt_max));
    GraphFlowState out = s;
    advance(out, c, dt);
    graph_curvature(*out.grid, out.u);  // convexity re-verified
    return out;
}

// ---- normal matching ------------------------------------------------------

// 1-D: u' is strictly increasing in x on a convex graph, so the gradient
// map inverts by monotone interpolation.
static void match_p_1d(const GraphFlowState& prev, const GraphCurvature& cp,
                       const GraphFlowState& next, const GraphCurvature& cn,
                       double spacing, std::vector<double>& p, int& matched, int& failed) {
    const DomainGrid& g = *prev.grid;
    std::vector<double> xs, slope, f;
    for (std::int32_t k : g.interior) {
        if (!cn.valid[k] || g.collar[k]) continue;
        xs.push_back(g.x[k]);
        slope.push_back(cn.ux[k]);
        f.push_back(pow_alpha(cn.gauss[k], next.alpha));
    }
    if (xs.size() < 4) fail("NormalMatchFailed", "too few interior nodes");
    MonotoneCubic slope_of_x(xs, slope);
    MonotoneCubic f_of_x(xs, f);
    for (std::int32_t k : g.interior) {
        if (!cp.valid[k] || g.collar[k]) continue;
        double s = cp.ux[k];
        if (s <= slope.front() || s >= slope.back()) {
            ++failed;
            continue;
        }
        double xstar = slope_of_x.invert(s);
        double fprev = pow_alpha(cp.gauss[k], prev.alpha);
        p[k] = (f_of_x.eval(xstar) - fprev) / (prev.alpha * fprev * spacing);
        ++matched;
    }
}

// 2-D: damped Newton on bilinearly interpolated gradients.
struct Bilinear {
    const DomainGrid& g;
    const std::vector<double>* fields[3];
    // returns false if the cell at (x,y) has an unusable corner
    bool eval(double x, double y, const std::vector<std::uint8_t>& ok, double out[3]) const {
        double fx = x / g.delta, fy = y / g.delta;
        int i = static_cast<int>(std::floor(fx)), j = static_cast<int>(std::floor(fy));
        double ax = fx - i, ay = fy - j;
        std::int32_t c00 = g.find(i, j), c10 = g.find(i + 1, j);
        std::int32_t c01 = g.find(i, j + 1), c11 = g.find(i + 1, j + 1);
        if (c00 < 0 || c10 < 0 || c01 < 0 || c11 < 0) return false;
        if (!ok[c00] || !ok[c10] || !ok[c01] || !ok[c11]) return false;
        for (int q = 0; q < 3; ++q) {
            const std::vector<double>& v = *fields[q];
            out[q] = (1 - ax) * (1 - ay) * v[c00] + ax * (1 - ay) * v[c10] +
                     (1 - ax) * ay * v[c01] + ax * ay * v[c11];
        }
        return true;
    }
};

static void match_p_2d(const GraphFlowState& prev, const GraphCurvature& cp,
                       const GraphFlowState& next, const GraphCurvature& cn,
                       double spacing, std::vector<double>& p, int& matched, int& failed) {
    const DomainGrid& g = *prev.grid;
    std::vector<std::uint8_t> ok(g.size(), 0);
    std::vector<double> fnext(g.size(), 0.0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        ok[k] = cn.valid[k] && !g.collar[k];
        if (cn.valid[k]) fnext[k] = pow_alpha(cn.gauss[k], next.alpha);
    }
    Bilinear bi{g, {&cn.ux, &cn.uy, &fnext}};
    for (std::int32_t k : g.interior) {
        if (!cp.valid[k] || g.collar[k]) continue;
        double px = cp.ux[k], py = cp.uy[k];
        double x = g.x[k], y = g.y[k];
        bool found = false;
        for (int it = 0; it < 40; ++it) {
            double v[3];
            if (!bi.eval(x, y, ok, v)) break;
            double rx = v[0] - px, ry = v[1] - py;
            if (std::hypot(rx, ry) <= 1e-10 * (1.0 + std::hypot(px, py))) {
                double fprev = pow_alpha(cp.gauss[k], prev.alpha);
                p[k] = (v[2] - fprev) / (prev.alpha * fprev * spacing);
                found = true;
                break;
            }
            // Newton step with the local Hessian as Jacobian
            double hxx = cn.uxx[k] > 0 ? cn.uxx[k] : 1.0, hyy = cn.uyy[k] > 0 ? cn.uyy[k] : 1.0;
            double hxy = cn.uxy[k];
            double det = hxx * hyy - hxy * hxy;
            if (det <= 0) break;
            double dx = -(hyy * rx - hxy * ry) / det;
            double dy = -(-hxy * rx + hxx * ry) / det;
            double lim = 2.0 * g.delta;
            dx = std::clamp(dx, -lim, lim);
            dy = std::clamp(dy, -lim, lim);
            x += dx;
            y += dy;
        }
        if (found)
            ++matched;
        else
            ++failed;
    }
}

std::vector<double> match_normals_p(const GraphFlowState& prev, const GraphFlowState& next,
                                    int& matched, int& failed) {
    if (prev.grid.get() != next.grid.get()) fail("GridMismatch", "states on different grids");
    double spacing = next.t - prev.t;
    if (spacing <= 0.0) fail("TimeOrder", "states must be consecutive");
    const DomainGrid& g = *prev.grid;
    GraphCurvature cp = graph_curvature(g, prev.u);
    GraphCurvature cn = graph_curvature(g, next.u);
    std::vector<double> p(g.size(), std::numeric_limits<double>::quiet_NaN());
    if (g.spec.n == 1)
        match_p_1d(prev, cp, next, cn, spacing, p, matched, failed);
    else
        match_p_2d(prev, cp, next, cn, spacing, p, matched, failed);
    return p;
}

TechnicalEntropies graph_technical_entropies(const GraphFlowState& prev,
                                             const GraphFlowState& next) {
    if (prev.grid.get() != next.grid.get()) fail("GridMismatch", "states on different grids");
    const DomainGrid& g = *prev.grid;
    GraphCurvature cp = graph_curvature(g, prev.u);

    TechnicalEntropies out;
    out.t = next.t;
    std::vector<double> p = match_normals_p(prev, next, out.matched, out.failed);

    // integrals over Omega' of the graph at the earlier time, dg = sqrt(1+|Du|^2) dx
    const double cell = (g.spec.n == 1) ? g.delta : g.delta * g.delta;
    CompensatedSum sn, sj, sd;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!g.omega_prime[k] || !cp.valid[k]) continue;
        double dg = cell / cp.nu_vert[k];
        double ka = pow_alpha(cp.gauss[k], prev.alpha);
        sn.add(ka * dg);
        if (std::isfinite(p[k])) {
            sj.add(p[k] * ka * dg);
            sd.add(p[k] * p[k] * ka * dg);
        }
    }
    out.speed_mass = sn.value();
    out.accel_mass = sj.value();
    out.accel_scaled = (prev.alpha - 1.0) * out.accel_mass;
    out.dissipation = sd.value();
    return out;
}

// ---- initial data ---------------------------------------------------------

std::vector<double> make_initial(const DomainGrid& grid, const soliton::SolitonProfile& sol,
                                 InitialData kind, double perturb_amp, std::uint64_t seed,
                                 double offset, double lambda_hint) {
    const std::size_t m = grid.size();
    std::vector<double> u(m, 0.0);
    auto radius_of = [&](std::size_t k) {
        return grid.spec.n == 1 ? std::abs(grid.x[k]) : std::hypot(grid.x[k], grid.y[k]);
    };
    double dom_r = (grid.spec.shape == DomainShape::interval) ? grid.spec.half_width
                                                              : grid.spec.radius;
    if (grid.spec.shape == DomainShape::polygon) {
        dom_r = 0.0;
        for (const auto& v : grid.spec.vertices) dom_r = std::max(dom_r, std::hypot(v[0], v[1]));
    }

    std::uint64_t rng = seed ^ 0x5bf03635ULL;
    const double amp = perturb_amp * (0.75 + 0.5 * uniform01(rng));

    switch (kind) {
        case InitialData::translator: {
            for (std::size_t k = 0; k < m; ++k) u[k] = sol.eval(radius_of(k)) + offset;
            break;
        }
        case InitialData::dented_translator: {
            // boundary-compatible generic start: the soliton minus an
            // interior dent; the deficit drains fast because it carries
            // no slow near-wall content, and the flank gradient relaxes
            // to the translator's from above
            const double width = 0.45 * dom_r;
            for (std::size_t k = 0; k < m; ++k) {
                double r = radius_of(k);
                double q = r / width;
                u[k] = sol.eval(r) - amp * std::exp(-q * q);
            }
            break;
        }
        case InitialData::steep_cap: {
            // soliton of a slightly smaller domain (steeper on Omega'),
            // continued tangentially past r_c so it stays finite on Omega,
            // plus a small quadratic and an even cosine bump: convex.
            const double steep = 1.15;
            const double na = grid.spec.n * sol.alpha;
            const double sc = std::pow(steep, 1.0 / na);
            const double rc = 0.8 * sol.radius / sc;
            const double uc = sol.eval(rc * sc) / sc;
            const double pc = sol.slope(rc * sc);
            for (std::size_t k = 0; k < m; ++k) {
                double r = radius_of(k);
                double base = (r <= rc) ? sol.eval(r * sc) / sc : uc + pc * (r - rc);
                double bump = 0.5 * amp * (1.0 + std::cos(pi * std::min(r / dom_r, 1.0)));
                u[k] = base + 0.05 * r * r + bump;
            }
            break;
        }
        case InitialData::paraboloid_cap: {
            const double lam = lambda_hint > 0.0 ? lambda_hint : sol.lambda;
            const double c0 = 1.6 * std::pow(lam, 1.0 / (grid.spec.n * sol.alpha));
            for (std::size_t k = 0; k < m; ++k) {
                double r = radius_of(k);
                double bump = 0.5 * amp * (1.0 + std::cos(pi * std::min(r / dom_r, 1.0)));
                u[k] = 0.5 * c0 * r * r + 0.25 * bump;
            }
            break;
        }
    }
    return u;
}

// ---- driver ---------------------------------------------------------------

GraphRunResult run_graph(const GraphRunConfig& cfg) {
    if (cfg.alpha <= 0.5) fail("ConfigInvalid", "graph flow requires alpha > 1/2");
    if (!cfg.have_reference &&
        (cfg.mode == BoundaryMode::pinned_translator ||
         cfg.initial != InitialData::paraboloid_cap))
        fail("ConfigInvalid",
             "without a reference soliton only barrier-mode paraboloid starts are possible");
    cfg.domain.validate();

    double trim_cells = cfg.edge_trim_cells >= 0.0 ? cfg.edge_trim_cells
                                                   : (cfg.domain.n == 2 ? 3.0 : 0.0);
    auto grid = std::make_shared<DomainGrid>(
        make_domain_grid(cfg.domain, cfg.delta, trim_cells * cfg.delta));
    GraphRunResult res;
    res.lambda_target = soliton::lambda_omega(cfg.domain, cfg.alpha);

    soliton::SolitonProfile dummy;
    dummy.alpha = cfg.alpha;
    const soliton::SolitonProfile& sol = cfg.have_reference ? cfg.reference : dummy;
    GraphFlowState s;
    s.grid = grid;
    s.alpha = cfg.alpha;
    s.mode = cfg.mode;
    s.eps0 = cfg.eps0;
    s.u = make_initial(*grid, sol, cfg.initial, cfg.perturb_amp, cfg.seed, cfg.offset,
                       res.lambda_target);

    s.ring_base.assign(grid->size(), 0.0);
    if (cfg.mode == BoundaryMode::pinned_translator) {
        s.ring_speed = cfg.reference.lambda;
        for (std::size_t k = 0; k < grid->size(); ++k)
            if (grid->ring[k]) s.ring_base[k] = s.u[k];
    } else {
        // ring values transported at the exact translator speed of Omega;
        // the eps0 barriers sandwich the run and are checked every sample
        s.ring_speed = res.lambda_target;
        for (std::size_t k = 0; k < grid->size(); ++k)
            if (grid->ring[k]) s.ring_base[k] = s.u[k];
        if (cfg.have_reference) {
            res.barriers = make_barriers(cfg.domain, cfg.eps0, cfg.reference, *grid, s.u);
            res.have_barriers = true;
        }
    }

    // reference profile at the nodes, shifted so inf over the profile
    // window is zero; the window defaults to Omega'
    double pmargin = cfg.profile_margin > 0.0 ? cfg.profile_margin : cfg.domain.margin;
    std::vector<std::uint8_t> pwin(grid->size(), 0);
    for (std::size_t k = 0; k < grid->size(); ++k)
        pwin[k] = cfg.domain.boundary_distance(grid->x[k], grid->y[k]) >= pmargin ? 1 : 0;
    std::vector<double> target(grid->size(), 0.0);
    double target_min = 1e300;
    if (cfg.have_reference) {
        for (std::size_t k = 0; k < grid->size(); ++k) {
            double r =
                grid->spec.n == 1 ? std::abs(grid->x[k]) : std::hypot(grid->x[k], grid->y[k]);
            target[k] = cfg.reference.eval(r);
            if (pwin[k]) target_min = std::min(target_min, target[k]);
        }
    }

    GraphFlowState prev_sample = s;
    bool have_prev = false;

    auto sample = [&](const GraphFlowState& st) {
        GraphCurvature c = graph_curvature(*st.grid, st.u);
        res.sample_times.push_back(st.t);
        res.interior.push_back(interior_monitor(st, c));
        res.ut_snapshots.push_back(speed_field(*st.grid, c, st.alpha));

        ConvergenceRow row;
        row.t = st.t;
        std::int32_t c0 = grid->center;
        row.center_speed = pow_alpha(c.gauss[c0], st.alpha) / c.nu_vert[c0];
        row.speed_err = std::abs(row.center_speed - res.lambda_target);
        if (cfg.have_reference) {
            double umin = 1e300;
            for (std::size_t k = 0; k < grid->size(); ++k)
                if (pwin[k]) umin = std::min(umin, st.u[k]);
            double perr = 0.0;
            for (std::size_t k = 0; k < grid->size(); ++k)
                if (pwin[k])
                    perr = std::max(perr,
                                    std::abs((st.u[k] - umin) - (target[k] - target_min)));
            row.profile_err = perr;
        } else {
            row.profile_err = std::numeric_limits<double>::quiet_NaN();
        }
        res.convergence.push_back(row);

        if (res.have_barriers) res.comparison.push_back(check_comparison(st, res.barriers));

        std::size_t ns = res.ut_snapshots.size();
        if (ns >= 2 && res.sample_times[ns - 2] >= 0.01) {
            res.harnack_slack.push_back(check_time_harnack(
                *grid, res.ut_snapshots[ns - 2], res.sample_times[ns - 2],
                res.ut_snapshots[ns - 1], res.sample_times[ns - 1], st.alpha));
        } else {
            res.harnack_slack.push_back(std::numeric_limits<double>::quiet_NaN());
        }

        if (cfg.tech_entropies && have_prev)
            res.tech.push_back(graph_technical_entropies(prev_sample, st));
        prev_sample = st;
        have_prev = true;
    };

    sample(s);
    res.status = "time_reached";
    long k_sample = 1;
    while (s.t < cfg.t_end - 1e-12) {
        GraphCurvature c = graph_curvature(*grid, s.u);
        double target_t = std::min(k_sample * cfg.sample_dt, cfg.t_end);
        double dt = std::min({dt_stable_graph(*grid, c, s.alpha, cfg.c_safe), cfg.dt_cap,
                              target_t - s.t});
        advance(s, c, dt);
        ++res.steps;
        if (s.t >= target_t - 1e-12 && std::abs(target_t - k_sample * cfg.sample_dt) < 1e-12) {
            s.t = target_t;
            sample(s);
            ++k_sample;
        }
    }
    res.final_state = s;
    return res;
}

}  // namespace gcf::graph
