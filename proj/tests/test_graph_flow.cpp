#include "doctest.h"

#include <cmath>

#include "gcf/common.hpp"
#include "gcf/graph_flow.hpp"
#include "gcf/soliton.hpp"

using namespace gcf;
using namespace gcf::graph;

static GraphRunConfig reaper_cfg() {
    GraphRunConfig cfg;
    cfg.domain = DomainSpec::interval(1.0, 0.25);
    cfg.alpha = 1.0;
    cfg.delta = 2.0 / 256.0;
    cfg.reference = soliton::grim_reaper(1.0);
    cfg.have_reference = true;
    return cfg;
}

TEST_CASE("pinned translator advances uniformly at speed lambda") {
    GraphRunConfig cfg = reaper_cfg();
    cfg.mode = BoundaryMode::pinned_translator;
    cfg.initial = InitialData::translator;
    cfg.t_end = 0.5;
    cfg.sample_dt = 0.1;
    auto res = run_graph(cfg);
    const DomainGrid& g = *res.final_state.grid;
    const double lam = pi / 2.0;
    // steadiness: sup over Omega' of |u(t) - u(0) - lambda t| <= 1e-3 (1 + lambda t)
    GraphFlowState s0;
    double worst = 0.0;
    std::vector<double> u0 = make_initial(g, cfg.reference, InitialData::translator, 0, 1);
    for (std::size_t k = 0; k < g.size(); ++k)
        if (g.omega_prime[k])
            worst = std::max(worst,
                             std::abs(res.final_state.u[k] - u0[k] - lam * res.final_state.t));
    CHECK(worst <= 1e-3 * (1.0 + lam * res.final_state.t));
    // center speed equals lambda up to discretization
    CHECK(res.convergence.back().center_speed == doctest::Approx(lam).epsilon(1e-3));
    // profile shape is steady
    CHECK(res.convergence.back().profile_err <= 1e-3);
}

TEST_CASE("pinned radial translator on the unit disk moves at speed 2") {
    GraphRunConfig cfg;
    cfg.domain = DomainSpec::disk(1.0, 0.25);
    cfg.alpha = 1.0;
    cfg.delta = 1.0 / 24.0;
    cfg.reference = soliton::radial_translator(2, 1.0, 1.0);
    cfg.have_reference = true;
    cfg.mode = BoundaryMode::pinned_translator;
    cfg.initial = InitialData::translator;
    cfg.t_end = 0.4;
    cfg.sample_dt = 0.1;
    auto res = run_graph(cfg);
    CHECK(res.convergence.back().center_speed == doctest::Approx(2.0).epsilon(0.01));
    CHECK(res.convergence.back().profile_err <= 2e-3);
    for (const auto& r : res.interior) {
        CHECK(r.min_ut > 0.0);
        CHECK(r.max_ut == doctest::Approx(2.0).epsilon(0.02));
    }
}

TEST_CASE("positive speed lifts any convex cap") {
    GraphRunConfig cfg = reaper_cfg();
    cfg.mode = BoundaryMode::barrier;
    cfg.initial = InitialData::paraboloid_cap;
    cfg.t_end = 0.05;
    cfg.sample_dt = 0.05;
    auto res = run_graph(cfg);
    std::vector<double> u0 = make_initial(*res.final_state.grid, cfg.reference,
                                          InitialData::paraboloid_cap, cfg.perturb_amp, cfg.seed);
    for (std::size_t k = 0; k < res.final_state.u.size(); ++k)
        CHECK(res.final_state.u[k] >= u0[k] - 1e-12);
}

TEST_CASE("barrier construction: scaling, speeds, epsilon range") {
    auto grim = soliton::grim_reaper(1.0);
    DomainSpec dom = DomainSpec::interval(1.0, 0.25);
    DomainGrid grid = make_domain_grid(dom, 2.0 / 64.0);
    std::vector<double> u0 = make_initial(grid, grim, InitialData::translator, 0, 1);

    // eps0 = 0 collapses both barriers onto u_Omega
    auto b0 = make_barriers(dom, 0.0, grim, grid, u0);
    CHECK(b0.upper_speed() == doctest::Approx(pi / 2.0));
    CHECK(b0.lower_speed() == doctest::Approx(pi / 2.0));
    CHECK(b0.upper(0.5, 0.0) - b0.L == doctest::Approx(grim.eval(0.5)).epsilon(1e-12));
    CHECK(b0.lower(0.5, 0.0) + b0.L == doctest::Approx(grim.eval(0.5)).epsilon(1e-12));

    // lambda scales as c^(-n a) under domain scaling: half width -> double speed
    CHECK(soliton::grim_reaper(0.5).lambda == doctest::Approx(pi).epsilon(1e-14));

    CHECK_THROWS_WITH_AS(make_barriers(dom, 0.2, grim, grid, u0),
                         doctest::Contains("EpsilonOutOfRange"), FlowError);
}

TEST_CASE("barrier speeds on the unit disk at eps0 = 0.1") {
    auto sol = soliton::radial_translator(2, 1.0, 1.0);
    DomainSpec dom = DomainSpec::disk(1.0, 0.3);
    DomainGrid grid = make_domain_grid(dom, 1.0 / 20.0);
    std::vector<double> u0 = make_initial(grid, sol, InitialData::translator, 0, 1);
    auto b = make_barriers(dom, 0.1, sol, grid, u0);
    CHECK(b.upper_speed() == doctest::Approx(2.2).epsilon(0.006));
    CHECK(b.lower_speed() == doctest::Approx(1.8).epsilon(0.006));
}

TEST_CASE("comparison check: clean run and constructed failure") {
    GraphRunConfig cfg = reaper_cfg();
    cfg.mode = BoundaryMode::barrier;
    cfg.initial = InitialData::steep_cap;
    cfg.t_end = 0.2;
    cfg.sample_dt = 0.05;
    auto res = run_graph(cfg);
    REQUIRE(res.have_barriers);
    for (const auto& c : res.comparison) {
        CHECK(c.lower_violation <= 1e-3 * (1.0 + res.lambda_target * res.final_state.t));
        CHECK(c.upper_violation <= 1e-3 * (1.0 + res.lambda_target * res.final_state.t));
    }
    // corrupt one Omega' node: the violation must surface there
    GraphFlowState bad = res.final_state;
    std::int32_t node = -1;
    for (std::size_t k = 0; k < bad.u.size(); ++k)
        if (bad.grid->omega_prime[k]) node = static_cast<std::int32_t>(k);
    bad.u[node] -= res.barriers.L + 1.0;
    auto chk = check_comparison(bad, res.barriers);
    CHECK(chk.lower_violation > 0.5);
    CHECK(chk.worst_node == node);
}

TEST_CASE("time harnack on an exact translator") {
    GraphRunConfig cfg = reaper_cfg();
    cfg.mode = BoundaryMode::pinned_translator;
    cfg.initial = InitialData::translator;
    cfg.t_end = 2.0;
    cfg.sample_dt = 0.5;
    auto res = run_graph(cfg);
    // u_t is constant in t, so the slack is lambda (1 - (t1/t2)^(na/(1+na)))
    std::size_t i1 = 2, i2 = 4;  // t = 1.0 and t = 2.0
    double t1 = res.sample_times[i1], t2 = res.sample_times[i2];
    double slack = check_time_harnack(*res.final_state.grid, res.ut_snapshots[i1], t1,
                                      res.ut_snapshots[i2], t2, cfg.alpha);
    double lam = pi / 2.0;
    double want = lam * (1.0 - std::pow(t1 / t2, 0.5));
    CHECK(slack == doctest::Approx(want).epsilon(0.01));
    CHECK_THROWS_WITH_AS(check_time_harnack(*res.final_state.grid, res.ut_snapshots[0], 0.0,
                                            res.ut_snapshots[1], 0.5, cfg.alpha),
                         doctest::Contains("TimeOrder"), FlowError);
}

TEST_CASE("interior monitor on the grim reaper") {
    DomainSpec dom = DomainSpec::interval(1.0, 0.5);
    auto grid = std::make_shared<DomainGrid>(make_domain_grid(dom, 2.0 / 256.0));
    auto grim = soliton::grim_reaper(1.0);
    GraphFlowState s;
    s.grid = grid;
    s.alpha = 1.0;
    s.u = make_initial(*grid, grim, InitialData::translator, 0, 1);
    auto c = graph_curvature(*grid, s.u);
    auto rec = interior_monitor(s, c);
    const double lam = pi / 2.0;
    CHECK(rec.min_ut == doctest::Approx(lam).epsilon(1e-3));
    CHECK(rec.max_ut == doctest::Approx(lam).epsilon(1e-3));
    // curvature of the reaper is lam * cos(lam x): min over |x| <= 1/2
    CHECK(rec.max_inv_kmin == doctest::Approx(1.0 / (lam * std::cos(lam * 0.5))).epsilon(1e-2));
    CHECK(rec.max_inv_nu == doctest::Approx(1.0 / std::cos(lam * 0.5)).epsilon(1e-2));
    CHECK(rec.osc == doctest::Approx(grim.eval(0.5)).epsilon(1e-2));
}

TEST_CASE("technical entropies: translator has P ~= 0 and bounded speed mass") {
    GraphRunConfig cfg = reaper_cfg();
    cfg.mode = BoundaryMode::pinned_translator;
    cfg.initial = InitialData::translator;
    cfg.t_end = 1.0;
    cfg.sample_dt = 0.1;
    cfg.tech_entropies = true;
    auto res = run_graph(cfg);
    REQUIRE(!res.tech.empty());
    const auto& last = res.tech.back();  // collar transient has settled by t=1
    CHECK(last.matched > 0);
    CHECK(std::abs(last.accel_mass) <= 1e-3);
    CHECK(last.dissipation <= 1e-5);
    // Gauss-map image of Omega' is a sector of S^1: mass below 2 pi
    CHECK(last.speed_mass > 0.0);
    CHECK(last.speed_mass < 2.0 * pi);
}

TEST_CASE("alpha = 0.75: truncated entropies stay finite and bounded") {
    GraphRunConfig cfg;
    cfg.domain = DomainSpec::interval(1.0, 0.25);
    cfg.alpha = 0.75;
    cfg.delta = 2.0 / 128.0;
    cfg.reference = soliton::radial_translator(1, 0.75, 1.0);
    cfg.have_reference = true;
    cfg.mode = BoundaryMode::barrier;
    cfg.initial = InitialData::dented_translator;
    cfg.t_end = 2.0;
    cfg.sample_dt = 0.25;
    cfg.tech_entropies = true;
    auto res = run_graph(cfg);
    REQUIRE(!res.tech.empty());
    for (const auto& te : res.tech) {
        CHECK(std::isfinite(te.speed_mass));
        CHECK(std::isfinite(te.accel_scaled));
        CHECK(te.speed_mass > 0.0);
        CHECK(te.speed_mass < 2.0 * pi);
        CHECK(std::abs(te.accel_scaled) < 10.0);
    }
}

TEST_CASE("pinned translator with a vertical offset: translation invariance") {
    GraphRunConfig cfg = reaper_cfg();
    cfg.mode = BoundaryMode::pinned_translator;
    cfg.initial = InitialData::translator;
    cfg.offset = 5.0;
    cfg.t_end = 0.2;
    cfg.sample_dt = 0.1;
    auto res = run_graph(cfg);
    // profile and speed errors vanish identically under a vertical shift
    for (const auto& c : res.convergence) {
        CHECK(c.profile_err <= 1e-3);
        CHECK(c.speed_err <= 1e-3 * res.lambda_target);
    }
}

TEST_CASE("step_graph guards the parabolic bound") {
    GraphRunConfig cfg = reaper_cfg();
    auto grid = std::make_shared<DomainGrid>(make_domain_grid(cfg.domain, cfg.delta));
    GraphFlowState s;
    s.grid = grid;
    s.alpha = 1.0;
    s.u = make_initial(*grid, cfg.reference, InitialData::translator, 0, 1);
    s.ring_base.assign(grid->size(), 0.0);
    s.ring_speed = pi / 2.0;
    for (std::size_t k = 0; k < grid->size(); ++k)
        if (grid->ring[k]) s.ring_base[k] = s.u[k];
    CHECK_THROWS_WITH_AS(step_graph(s, 1.0), doctest::Contains("StepTooLarge"), FlowError);
    auto c = graph_curvature(*grid, s.u);
    auto s2 = step_graph(s, dt_stable_graph(*grid, c, s.alpha));
    CHECK(s2.t > 0.0);
}

TEST_CASE("polygon domain runs without a reference profile") {
    GraphRunConfig cfg;
    cfg.domain = DomainSpec::polygon({{-0.8, -0.8}, {0.8, -0.8}, {0.8, 0.8}, {-0.8, 0.8}}, 0.3);
    cfg.alpha = 1.0;
    cfg.delta = 1.0 / 20.0;
    cfg.mode = BoundaryMode::barrier;
    cfg.initial = InitialData::paraboloid_cap;
    cfg.t_end = 2.0;
    cfg.sample_dt = 0.25;
    auto res = run_graph(cfg);
    CHECK(!res.have_barriers);
    // ring transport pins the asymptotic speed to lambda_Omega of the square
    double target = soliton::lambda_omega(cfg.domain, 1.0);
    CHECK(res.lambda_target == doctest::Approx(target));
    CHECK(res.convergence.back().center_speed == doctest::Approx(target).epsilon(0.05));
    CHECK(std::isnan(res.convergence.back().profile_err));
    for (const auto& r : res.interior) CHECK(r.min_ut > 0.0);

    // pinned mode without a reference is rejected
    cfg.mode = BoundaryMode::pinned_translator;
    CHECK_THROWS_WITH_AS(run_graph(cfg), doctest::Contains("ConfigInvalid"), FlowError);
}

TEST_CASE("initial data menu stays strictly convex") {
    GraphRunConfig cfg = reaper_cfg();
    auto grid = make_domain_grid(cfg.domain, 2.0 / 128.0);
    for (auto kind : {InitialData::translator, InitialData::steep_cap,
                      InitialData::paraboloid_cap}) {
        auto u = make_initial(grid, cfg.reference, kind, 0.2, 7);
        auto c = graph_curvature(grid, u);  // throws if convexity fails
        for (std::int32_t k : grid.interior)
            if (!grid.collar[k]) CHECK(c.det[k] > 0.0);
    }
}
