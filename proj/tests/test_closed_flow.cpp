#include "doctest.h"

#include <cmath>

#include "gcf/closed_flow.hpp"
#include "gcf/common.hpp"

using namespace gcf;
using namespace gcf::closed;

// shrinking round shape: r(t) = (r0^(1+na) - (1+na) t)^(1/(1+na))
static double round_radius(double r0, int n, double alpha, double t) {
    double e = 1.0 + n * alpha;
    return std::pow(std::pow(r0, e) - e * t, 1.0 / e);
}

static ClosedFlowState round_state(int n, double r, double alpha, std::size_t size = 256) {
    ClosedFlowState s;
    s.grid = (n == 1) ? make_circle_grid(size) : make_axisym_grid(size);
    s.h = support_round(s.grid, r);
    s.alpha = alpha;
    return s;
}

static ClosedFlowState ellipse_state(double a, double b, double alpha, std::size_t size = 256) {
    ClosedFlowState s;
    s.grid = make_circle_grid(size);
    s.h = support_ellipse(s.grid, a, b);
    s.alpha = alpha;
    return s;
}

TEST_CASE("one explicit step on round shapes") {
    double dt = 1e-5;
    auto s1 = step_closed(round_state(1, 1.0, 1.0), dt);
    for (double h : s1.h) CHECK(h == doctest::Approx(1.0 - dt).epsilon(1e-12));

    // r0=2, alpha=2: speed K^2 = 2^-2
    auto s2 = step_closed(round_state(1, 2.0, 2.0), dt);
    for (double h : s2.h) CHECK(h == doctest::Approx(2.0 - 0.25 * dt).epsilon(1e-12));

    // sphere r0=1, alpha=1/2: speed K^(1/2) = 1
    auto s3 = step_closed(round_state(2, 1.0, 0.5), dt);
    for (double h : s3.h) CHECK(h == doctest::Approx(1.0 - dt).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(step_closed(round_state(1, 1.0, 1.0), 0.5),
                         doctest::Contains("StepTooLarge"), FlowError);
}

TEST_CASE("P field: constant n r^(-n a - 1) on round shapes") {
    auto pf1 = p_scalar_field(round_state(1, 0.8, 1.0));
    for (double p : pf1.p) CHECK(p == doctest::Approx(1.0 / 0.64).epsilon(1e-11));

    for (double alpha : {0.5, 1.0, 2.0}) {
        auto pf2 = p_scalar_field(round_state(2, 1.0, alpha));
        for (double p : pf2.p) CHECK(p == doctest::Approx(2.0).epsilon(1e-11));
    }
}

TEST_CASE("entropies on round shapes and the Gauss-map invariant") {
    auto e1 = entropies(round_state(1, 1.0, 1.0));
    CHECK(e1.N == doctest::Approx(2.0 * pi).epsilon(1e-12));
    CHECK(e1.J == doctest::Approx(2.0 * pi).epsilon(1e-11));
    CHECK(e1.DT == doctest::Approx(e1.D2).epsilon(1e-14));

    auto e2 = entropies(round_state(2, 1.0, 1.0, 128));
    CHECK(e2.N == doctest::Approx(4.0 * pi).epsilon(1e-12));
    CHECK(e2.J == doctest::Approx(8.0 * pi).epsilon(1e-11));

    // N at alpha=1 is the Gauss-map mass: shape independent
    auto e3 = entropies(ellipse_state(1.0, 0.6, 1.0, 512));
    CHECK(e3.N == doctest::Approx(2.0 * pi).epsilon(1e-10));
}

TEST_CASE("spatial P agrees with the fixed-normal time difference") {
    double dt = 1e-6;
    for (auto s : {ellipse_state(1.0, 0.6, 1.0), ellipse_state(1.0, 0.7, 1.5)}) {
        auto spatial = p_scalar_field(s);
        auto timed = p_time_difference(s, dt);
        double tol = std::max(1e-2, 10.0 * dt);
        for (std::size_t i = 0; i < timed.size(); ++i)
            CHECK(std::abs(timed[i] - spatial.p[i]) <=
                  tol * std::max(1.0, std::abs(spatial.p[i])));
    }
}

TEST_CASE("run_closed tracks the shrinking-circle law") {
    ClosedRunConfig cfg;
    cfg.n = 1;
    cfg.alpha = 1.0;
    cfg.grid_size = 256;
    cfg.stop_time = 0.3;
    cfg.sample_dt = 5e-3;
    auto res = run_closed(cfg);
    CHECK(res.status == "time_reached");
    double want = std::sqrt(1.0 - 2.0 * 0.3);
    double hmin = 1e300, hmax = -1e300;
    for (double h : res.final_state.h) {
        hmin = std::min(hmin, h);
        hmax = std::max(hmax, h);
    }
    CHECK(hmax - hmin <= 1e-12);  // stays exactly round
    CHECK(hmax == doctest::Approx(want).epsilon(1e-3));

    // alpha=1 keeps N = 2 pi at every sample
    for (const auto& r : res.records) CHECK(r.N == doctest::Approx(2.0 * pi).epsilon(1e-6));
}

TEST_CASE("run_closed sphere n=2 and extinction status") {
    ClosedRunConfig cfg;
    cfg.n = 2;
    cfg.alpha = 1.0;
    cfg.shape = ClosedShape::sphere;
    cfg.grid_size = 64;
    cfg.stop_time = 0.2;
    cfg.sample_dt = 5e-3;
    auto res = run_closed(cfg);
    double want = round_radius(1.0, 2, 1.0, 0.2);
    CHECK(res.final_state.h[0] == doctest::Approx(want).epsilon(1e-3));
    for (const auto& r : res.records) CHECK(r.N == doctest::Approx(4.0 * pi).epsilon(1e-6));

    cfg.stop_time = 1.0;  // extinction at t = 1/3
    auto res2 = run_closed(cfg);
    CHECK(res2.status == "extinction");
}

TEST_CASE("first-derivative identity dN/dt = (alpha-1) J") {
    ClosedRunConfig cfg;
    cfg.n = 1;
    cfg.grid_size = 256;
    cfg.stop_time = 0.05;
    cfg.sample_dt = 1e-3;

    cfg.alpha = 1.0;
    auto r1 = run_closed(cfg);
    for (double res : check_first_derivative(r1.records, 1.0)) CHECK(std::abs(res) <= 1e-6);

    cfg.alpha = 2.0;
    auto r2 = run_closed(cfg);
    for (double res : check_first_derivative(r2.records, 2.0)) CHECK(std::abs(res) <= 1e-3);

    cfg.shape = ClosedShape::ellipse;
    cfg.axis_a = 1.0;
    cfg.axis_b = 0.6;
    cfg.alpha = 0.7;
    auto r3 = run_closed(cfg);
    double worst3 = 0.0;
    for (double res : check_first_derivative(r3.records, 0.7))
        worst3 = std::max(worst3, std::abs(res));
    CHECK(worst3 <= 1e-2);

    // refinement: residual decreases when dt and the grid are refined
    cfg.grid_size = 512;
    cfg.sample_dt = 5e-4;
    auto r4 = run_closed(cfg);
    double worst4 = 0.0;
    for (double res : check_first_derivative(r4.records, 0.7))
        worst4 = std::max(worst4, std::abs(res));
    CHECK(worst4 < worst3);

    CHECK_THROWS_WITH_AS(check_first_derivative(std::span(r1.records.data(), 2), 1.0),
                         doctest::Contains("InsufficientSamples"), FlowError);
}

TEST_CASE("monotonicity: equality on circles, strict on ellipses") {
    ClosedRunConfig cfg;
    cfg.n = 1;
    cfg.alpha = 1.0;
    cfg.grid_size = 256;
    cfg.stop_time = 0.06;
    cfg.sample_dt = 1e-3;
    auto rc = run_closed(cfg);
    auto mc = check_monotonicity(rc.records, 1.0, 1);
    CHECK(mc.alpha_in_range);
    for (std::size_t k = 0; k < mc.slack2.size(); ++k)
        CHECK(std::abs(mc.slack2[k]) <= 1e-3 * mc.scale[k]);

    cfg.shape = ClosedShape::ellipse;
    cfg.axis_a = 1.0;
    cfg.axis_b = 0.6;
    auto re = run_closed(cfg);
    auto me = check_monotonicity(re.records, 1.0, 1);
    for (std::size_t k = 0; k < me.slack2.size(); ++k) {
        CHECK(me.slack2[k] > 0.0);
        CHECK(me.slack1[k] >= -1e-3 * me.scale[k]);
    }
}

TEST_CASE("n=1 dissipation identity dJ/dt = 2 alpha D2") {
    ClosedRunConfig cfg;
    cfg.n = 1;
    cfg.alpha = 1.5;
    cfg.shape = ClosedShape::ellipse;
    cfg.axis_a = 1.0;
    cfg.axis_b = 0.6;
    cfg.grid_size = 256;
    cfg.stop_time = 0.06;
    cfg.sample_dt = 2.5e-4;
    auto res = run_closed(cfg);
    const auto& r = res.records;
    for (std::size_t k = 1; k + 1 < r.size(); ++k) {
        double djdt = (r[k + 1].J - r[k - 1].J) / (r[k + 1].t - r[k - 1].t);
        CHECK(std::abs(djdt - 2.0 * cfg.alpha * r[k].D2) <= 1e-2 * std::abs(djdt));
    }
}

TEST_CASE("concavity of N^(a/(1-a))") {
    ClosedRunConfig cfg;
    cfg.n = 1;
    cfg.grid_size = 256;
    cfg.stop_time = 0.06;
    cfg.sample_dt = 1e-3;

    for (double alpha : {2.0, 0.7}) {
        cfg.alpha = alpha;
        auto res = run_closed(cfg);
        auto cc = check_concavity(res.records, alpha);
        for (double dd : cc.dd) CHECK(dd <= 1e-6 * cc.scale);
        // shrinking circle closed form is strictly concave in time
        if (alpha == 2.0)
            for (double dd : cc.dd) CHECK(dd < 0.0);
    }
    cfg.shape = ClosedShape::ellipse;
    cfg.axis_b = 0.6;
    cfg.alpha = 2.0;
    auto res = run_closed(cfg);
    auto cc = check_concavity(res.records, 2.0);
    for (double dd : cc.dd) CHECK(dd <= 1e-6 * cc.scale);

    CHECK_THROWS_WITH_AS(check_concavity(res.records, 1.0),
                         doctest::Contains("AlphaEqualsOne"), FlowError);
}

TEST_CASE("harnack snapshots") {
    ClosedRunConfig cfg;
    cfg.n = 1;
    cfg.alpha = 1.0;
    cfg.grid_size = 256;
    cfg.stop_time = 0.1;
    cfg.sample_dt = 1e-3;
    cfg.snapshot_times = {0.05, 0.1};

    // circle: K increases along the flow, slack strictly positive
    auto rc = run_closed(cfg);
    REQUIRE(rc.snapshots.size() == 2);
    CHECK(check_harnack(rc.snapshots[0], rc.snapshots[1]) > 0.0);

    cfg.shape = ClosedShape::ellipse;
    cfg.axis_a = 1.0;
    cfg.axis_b = 0.6;
    auto re = run_closed(cfg);
    CHECK(check_harnack(re.snapshots[0], re.snapshots[1]) >= -1e-3);

    CHECK_THROWS_WITH_AS(check_harnack(re.snapshots[1], re.snapshots[0]),
                         doctest::Contains("TimeOrder"), FlowError);
}

TEST_CASE("monotonicity flags alpha below the theorem's range") {
    ClosedRunConfig cfg;
    cfg.n = 2;
    cfg.alpha = 0.1;  // below (n-1)/(2n) = 1/4
    cfg.shape = ClosedShape::sphere;
    cfg.grid_size = 32;
    cfg.stop_time = 5e-3;
    cfg.sample_dt = 1e-3;
    auto res = run_closed(cfg);
    auto mc = check_monotonicity(res.records, cfg.alpha, cfg.n);
    CHECK(!mc.alpha_in_range);  // reported, not fatal
    CHECK(!mc.slack2.empty());
}

TEST_CASE("sphere n=2 monotonicity equality within 1e-3") {
    ClosedRunConfig cfg;
    cfg.n = 2;
    cfg.alpha = 1.0;
    cfg.shape = ClosedShape::sphere;
    cfg.grid_size = 64;
    cfg.stop_time = 0.06;
    cfg.sample_dt = 1e-3;
    auto res = run_closed(cfg);
    auto mc = check_monotonicity(res.records, 1.0, 2);
    for (std::size_t k = 0; k < mc.slack2.size(); ++k)
        CHECK(std::abs(mc.slack2[k]) <= 1e-3 * mc.scale[k]);
}

TEST_CASE("axisymmetric P: spatial route matches the time difference off-round") {
    ClosedFlowState s;
    s.grid = make_axisym_grid(256);
    s.h = support_spheroid(s.grid, 1.0, 1.3);
    for (double alpha : {1.0, 0.6, 1.7}) {
        s.alpha = alpha;
        auto spat = p_scalar_field(s);
        auto timed = p_time_difference(s, 1e-7);
        for (std::size_t j = 0; j < timed.size(); ++j)
            CHECK(std::abs(timed[j] - spat.p[j]) <=
                  1e-3 * std::max(1.0, std::abs(spat.p[j])));
    }
}

TEST_CASE("sphere harnack slack matches the closed form") {
    ClosedRunConfig cfg;
    cfg.n = 2;
    cfg.alpha = 1.0;
    cfg.shape = ClosedShape::sphere;
    cfg.grid_size = 64;
    cfg.stop_time = 0.1;
    cfg.sample_dt = 1e-3;
    cfg.snapshot_times = {0.05, 0.1};
    auto res = run_closed(cfg);
    double slack = check_harnack(res.snapshots[0], res.snapshots[1]);
    double r1 = round_radius(1.0, 2, 1.0, 0.05), r2 = round_radius(1.0, 2, 1.0, 0.1);
    double want = (r1 * r1) / (r2 * r2) - std::pow(0.5, 2.0 / 3.0);
    CHECK(slack == doctest::Approx(want).epsilon(1e-3));
}

TEST_CASE("axisymmetric spheroid run: invariants hold off the round case") {
    ClosedRunConfig cfg;
    cfg.n = 2;
    cfg.alpha = 1.0;
    cfg.shape = ClosedShape::spheroid;
    cfg.axis_a = 1.0;   // equatorial
    cfg.axis_b = 1.25;  // polar
    cfg.grid_size = 128;
    cfg.stop_time = 0.05;
    cfg.sample_dt = 1e-3;
    auto res = run_closed(cfg);
    CHECK(res.status == "time_reached");
    for (const auto& r : res.records) CHECK(r.N == doctest::Approx(4.0 * pi).epsilon(1e-6));
    auto mc = check_monotonicity(res.records, 1.0, 2);
    for (std::size_t k = 0; k < mc.slack2.size(); ++k)
        CHECK(mc.slack2[k] >= -1e-3 * mc.scale[k]);
    for (double r : check_first_derivative(res.records, 1.0)) CHECK(std::abs(r) <= 1e-6);
}

TEST_CASE("state validation rejects bad support data") {
    ClosedFlowState s = round_state(1, 1.0, 1.0, 64);
    s.h[3] = -0.1;
    CHECK_THROWS_AS(s.validate(), FlowError);
}
