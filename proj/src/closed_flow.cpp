#include "gcf/closed_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcf/common.hpp"
#include "gcf/parallel.hpp"

namespace gcf::closed {

void ClosedFlowState::validate() const {
    if (h.size() != grid.size()) fail("GridMismatch", "state field size");
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!std::isfinite(h[i])) fail("StateInvalid", "non-finite support value");
        if (h[i] <= 0.0) fail("StateInvalid", "support function must be positive (origin inside)");
    }
    support_radii(grid, h);  // throws ConvexityLost if not strictly convex
}

std::vector<double> support_round(const SphereGrid& g, double r) {
    if (r <= 0.0) fail("StateInvalid", "radius must be positive");
    return std::vector<double>(g.size(), r);
}

std::vector<double> support_ellipse(const SphereGrid& g, double a, double b) {
    if (g.n != 1) fail("GridMismatch", "ellipse support requires n=1");
    std::vector<double> h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        double c = std::cos(g.angle[i]), s = std::sin(g.angle[i]);
        h[i] = std::sqrt(a * a * c * c + b * b * s * s);
    }
    return h;
}

std::vector<double> support_spheroid(const SphereGrid& g, double eq, double pol) {
    if (g.n != 2) fail("GridMismatch", "spheroid support requires n=2");
    std::vector<double> h(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        double c = std::cos(g.angle[j]), s = std::sin(g.angle[j]);
        h[j] = std::sqrt(pol * pol * c * c + eq * eq * s * s);
    }
    return h;
}

static std::vector<double> speed_field(const SphereGrid& g, const SupportCurvature& c,
                                       double alpha) {
    std::vector<double> f(g.size());
    parallel_for(static_cast<std::ptrdiff_t>(g.size()),
                 [&](std::ptrdiff_t i) { f[i] = pow_alpha(c.gauss[i], alpha); });
    return f;
}

PFields p_scalar_field(const ClosedFlowState& s) {
    PFields out;
    out.curv = support_radii(s.grid, s.h);
    out.speed = speed_field(s.grid, out.curv, s.alpha);
    std::vector<double> df, d2f;
    sphere_diff(s.grid, out.speed, df, d2f);

    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(s.grid.size());
    out.p.resize(m);
    if (s.grid.n == 1) {
        out.tensor_sq.resize(m);
        parallel_for(m, [&](std::ptrdiff_t i) {
            out.p[i] = (d2f[i] + out.speed[i]) / out.curv.rho1[i];
            out.tensor_sq[i] = out.p[i] * out.p[i];
        });
    } else {
        parallel_for(m, [&](std::ptrdiff_t j) {
            // round-sphere covariant Hessian contracted with W^{-1}:
            // f''/rho1 + cot(phi) f'/rho2, the second term -> f''/rho2 at poles
            double hess = d2f[j] / out.curv.rho1[j];
            hess += (s.grid.is_pole(static_cast<std::size_t>(j))
                         ? d2f[j]
                         : df[j] / std::tan(s.grid.angle[j])) /
                    out.curv.rho2[j];
            out.p[j] = hess + out.speed[j] * out.curv.mean[j];
        });
    }
    return out;
}

std::vector<double> p_time_difference(const ClosedFlowState& s, double dt) {
    PFields now = p_scalar_field(s);
    ClosedFlowState next = step_closed(s, dt);
    SupportCurvature nc = support_radii(next.grid, next.h);
    std::vector<double> fnext = speed_field(next.grid, nc, s.alpha);
    std::vector<double> p(s.grid.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = (fnext[i] - now.speed[i]) / (s.alpha * now.speed[i] * dt);
    return p;
}

EntropyRecord entropies(const ClosedFlowState& s) {
    PFields pf = p_scalar_field(s);
    const std::size_t m = s.grid.size();
    std::vector<double> pf2(m);
    for (std::size_t i = 0; i < m; ++i) pf2[i] = pf.p[i] * pf.p[i];

    EntropyRecord r;
    r.t = s.t;
    r.N = integrate(s.grid, pf.speed, pf.curv.det);
    std::vector<double> pk(m);
    for (std::size_t i = 0; i < m; ++i) pk[i] = pf.p[i] * pf.speed[i];
    r.J = integrate(s.grid, pk, pf.curv.det);
    for (std::size_t i = 0; i < m; ++i) pk[i] = pf2[i] * pf.speed[i];
    r.D2 = integrate(s.grid, pk, pf.curv.det);
    r.DT = (s.grid.n == 1) ? r.D2 : std::numeric_limits<double>::quiet_NaN();
    auto [mn, mx] = std::minmax_element(pf.speed.begin(), pf.speed.end());
    r.speed_min = *mn;
    r.speed_max = *mx;
    return r;
}

static double dt_from_curv(const SphereGrid& g, const SupportCurvature& c, double alpha,
                           double c_safe) {
    double dt = 1e300;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double rho = std::min(c.rho1[i], c.rho2[i]);
        double speed = pow_alpha(c.gauss[i], alpha);
        dt = std::min(dt, c_safe * g.spacing * g.spacing * rho / (alpha * speed));
    }
    return dt;
}

double dt_stable(const ClosedFlowState& s, double c_safe) {
    return dt_from_curv(s.grid, support_radii(s.grid, s.h), s.alpha, c_safe);
}

ClosedFlowState step_closed(const ClosedFlowState& s, double dt) {
    double dt_max = dt_stable(s, 0.2);
    if (dt > dt_max * (1.0 + 1e-9))
        fail("StepTooLarge", "dt=" + std::to_string(dt) + " exceeds dt_max=" + std::to_string(dt_max));
    SupportCurvature c = support_radii(s.grid, s.h);
    ClosedFlowState out = s;
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(s.grid.size());
    parallel_for(m, [&](std::ptrdiff_t i) {
        out.h[i] = s.h[i] - dt * pow_alpha(c.gauss[i], s.alpha);
    });
    out.t = s.t + dt;
    support_radii(out.grid, out.h);  // convexity re-verified
    return out;
}

static void need_samples(std::span<const EntropyRecord> recs) {
    if (recs.size() < 3) fail("InsufficientSamples", "need >= 3 uniform samples");
}

std::vector<double> check_first_derivative(std::span<const EntropyRecord> recs, double alpha) {
    need_samples(recs);
    const double dt = recs[1].t - recs[0].t;
    const double span = recs.back().t - recs.front().t;
    std::vector<double> out;
    out.reserve(recs.size() - 2);
    for (std::size_t k = 1; k + 1 < recs.size(); ++k) {
        double dndt = (recs[k + 1].N - recs[k - 1].N) / (2.0 * dt);
        double resid = dndt - (alpha - 1.0) * recs[k].J;
        double scale = std::max(std::abs(recs[k].J), std::abs(recs[k].N) / span);
        out.push_back(resid / scale);
    }
    return out;
}

MonotonicityCheck check_monotonicity(std::span<const EntropyRecord> recs, double alpha, int n) {
    need_samples(recs);
    MonotonicityCheck out;
    out.alpha_in_range = alpha >= (n - 1) / (2.0 * n);
    const double dt = recs[1].t - recs[0].t;
    const double coef = 1.0 / n + 2.0 * alpha - 1.0;
    for (std::size_t k = 1; k + 1 < recs.size(); ++k) {
        double djdt = (recs[k + 1].J - recs[k - 1].J) / (2.0 * dt);
        double jsq = recs[k].J * recs[k].J / recs[k].N;
        out.t.push_back(recs[k].t);
        out.slack1.push_back(djdt - coef * recs[k].D2);
        out.slack2.push_back(djdt - coef * jsq);
        out.scale.push_back(jsq);
    }
    return out;
}

ConcavityCheck check_concavity(std::span<const EntropyRecord> recs, double alpha) {
    if (alpha == 1.0) fail("AlphaEqualsOne", "N^(a/(1-a)) undefined at alpha=1");
    need_samples(recs);
    const double dt = recs[1].t - recs[0].t;
    const double span = recs.back().t - recs.front().t;
    const double expo = alpha / (1.0 - alpha);
    ConcavityCheck out;
    double mmax = 0.0;
    for (std::size_t k = 1; k + 1 < recs.size(); ++k) {
        double m0 = std::pow(recs[k - 1].N, expo);
        double m1 = std::pow(recs[k].N, expo);
        double m2 = std::pow(recs[k + 1].N, expo);
        out.t.push_back(recs[k].t);
        out.dd.push_back((m2 - 2.0 * m1 + m0) / (dt * dt));
        mmax = std::max({mmax, std::abs(m0), std::abs(m1), std::abs(m2)});
    }
    out.scale = mmax / (span * span);
    return out;
}

double check_harnack(const ClosedFlowState& s1, const ClosedFlowState& s2) {
    if (!(0.0 < s1.t && s1.t < s2.t)) fail("TimeOrder", "need 0 < t1 < t2");
    if (s1.grid.size() != s2.grid.size() || s1.grid.n != s2.grid.n)
        fail("GridMismatch", "harnack snapshots on different grids");
    SupportCurvature c1 = support_radii(s1.grid, s1.h);
    SupportCurvature c2 = support_radii(s2.grid, s2.h);
    const double na = s1.grid.n * s1.alpha;
    const double bound = std::pow(s1.t / s2.t, na / (1.0 + na));
    double slack = 1e300;
    for (std::size_t i = 0; i < s1.grid.size(); ++i) {
        double f1 = pow_alpha(c1.gauss[i], s1.alpha);
        double f2 = pow_alpha(c2.gauss[i], s1.alpha);
        slack = std::min(slack, f2 / f1 - bound);
    }
    return slack;
}

ClosedRunResult run_closed(const ClosedRunConfig& cfg) {
    if (cfg.alpha <= 0.0) fail("ConfigInvalid", "alpha must be positive");
    if (cfg.sample_dt <= 0.0 || cfg.stop_time <= 0.0)
        fail("ConfigInvalid", "sample_dt and stop_time must be positive");

    ClosedFlowState s;
    s.alpha = cfg.alpha;
    if (cfg.n == 1) {
        s.grid = make_circle_grid(cfg.grid_size);
        s.h = (cfg.shape == ClosedShape::ellipse)
                  ? support_ellipse(s.grid, cfg.axis_a, cfg.axis_b)
                  : support_round(s.grid, cfg.radius);
    } else if (cfg.n == 2) {
        s.grid = make_axisym_grid(cfg.grid_size);
        s.h = (cfg.shape == ClosedShape::spheroid)
                  ? support_spheroid(s.grid, cfg.axis_a, cfg.axis_b)
                  : support_round(s.grid, cfg.radius);
    } else {
        fail("ConfigInvalid", "closed flow supports n in {1,2}");
    }
    s.validate();

    ClosedRunResult res;
    res.status = "time_reached";

    auto want_snapshot = [&](double t) {
        for (double ts : cfg.snapshot_times)
            if (std::abs(t - ts) < 0.5 * cfg.sample_dt) return true;
        return false;
    };
    auto record = [&](const ClosedFlowState& st) {
        res.records.push_back(entropies(st));
        SupportCurvature c = support_radii(st.grid, st.h);
        std::vector<double> f(st.grid.size());
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = pow_alpha(c.gauss[i], st.alpha);
        res.speed_snapshots.push_back(std::move(f));
        if (want_snapshot(st.t)) res.snapshots.push_back(st);
    };
    record(s);

    long k_sample = 1;
    while (s.t < cfg.stop_time - 1e-12) {
        SupportCurvature c = support_radii(s.grid, s.h);
        if (c.min_radius < cfg.w_floor) {
            res.status = "extinction";
            break;
        }
        double target = std::min(k_sample * cfg.sample_dt, cfg.stop_time);
        double dt = std::min({dt_from_curv(s.grid, c, s.alpha, cfg.c_safe), cfg.dt_cap,
                              target - s.t});
        const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(s.grid.size());
        std::vector<double>& h = s.h;
        const double alpha = s.alpha;
        parallel_for(m, [&](std::ptrdiff_t i) {
            h[i] -= dt * pow_alpha(c.gauss[i], alpha);
        });
        s.t += dt;
        ++res.steps;
        if (s.t >= target - 1e-12 && std::abs(target - k_sample * cfg.sample_dt) < 1e-12) {
            s.t = target;  // pin accumulated rounding to the sampling grid
            record(s);
            ++k_sample;
        }
    }
    res.final_state = s;
    return res;
}

}  // namespace gcf::closed
