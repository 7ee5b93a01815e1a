#include "doctest.h"

#include <cmath>

#include "gcf/common.hpp"
#include "gcf/curvature.hpp"
#include "gcf/domain.hpp"
#include "gcf/sphere_grid.hpp"
#include "gcf/summation.hpp"

using namespace gcf;

TEST_CASE("sphere grid weights reproduce |S^n| exactly") {
    for (std::size_t n : {16, 128, 512}) {
        SphereGrid g = make_circle_grid(n);
        CHECK(compensated_sum(g.weight) == doctest::Approx(2.0 * pi).epsilon(1e-12));
    }
    for (std::size_t n : {16, 64, 256}) {
        SphereGrid g = make_axisym_grid(n);
        CHECK(compensated_sum(g.weight) == doctest::Approx(4.0 * pi).epsilon(1e-12));
    }
    CHECK_THROWS_AS(make_circle_grid(8), FlowError);
}

TEST_CASE("support radii: unit circle and round sphere") {
    SphereGrid g1 = make_circle_grid(64);
    auto c1 = support_radii(g1, std::vector<double>(g1.size(), 1.0));
    for (std::size_t i = 0; i < g1.size(); ++i) {
        CHECK(c1.rho1[i] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(c1.gauss[i] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(c1.mean[i] == doctest::Approx(1.0).epsilon(1e-13));
    }

    SphereGrid g2 = make_axisym_grid(64);
    double r = 1.7;
    auto c2 = support_radii(g2, std::vector<double>(g2.size(), r));
    for (std::size_t j = 0; j < g2.size(); ++j) {
        CHECK(c2.gauss[j] == doctest::Approx(1.0 / (r * r)).epsilon(1e-13));
        CHECK(c2.mean[j] == doctest::Approx(2.0 / r).epsilon(1e-13));
    }
}

// ellipse a=2, b=1: radius of curvature at theta=0 is b^2/a = 1/2, K = 2
TEST_CASE("support radii: ellipse tip curvature with refinement") {
    double prev_err = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        std::size_t n = pass == 0 ? 256 : 512;
        SphereGrid g = make_circle_grid(n);
        std::vector<double> h(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            double c = std::cos(g.angle[i]), s = std::sin(g.angle[i]);
            h[i] = std::sqrt(4.0 * c * c + s * s);
        }
        auto cur = support_radii(g, h);
        double err = std::abs(cur.gauss[0] - 2.0);
        CHECK(cur.rho1[0] == doctest::Approx(0.5).epsilon(1e-3));
        if (pass == 1) CHECK(err < prev_err / 3.0);  // ~second order
        prev_err = err;
    }
}

// h = 2 + cos(theta) supports a circle of radius 2 about (1,0): K = 1/2
TEST_CASE("discrete curvature converges at second order") {
    double errs[2];
    std::size_t sizes[2] = {128, 256};
    for (int p = 0; p < 2; ++p) {
        SphereGrid g = make_circle_grid(sizes[p]);
        std::vector<double> h(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) h[i] = 2.0 + std::cos(g.angle[i]);
        auto c = support_radii(g, h);
        double e = 0.0;
        for (double k : c.gauss) e = std::max(e, std::abs(k - 0.5));
        errs[p] = e;
    }
    double order = std::log2(errs[0] / errs[1]);
    CHECK(order >= 1.9);
}

TEST_CASE("convexity loss reported with node") {
    SphereGrid g = make_circle_grid(64);
    std::vector<double> h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) h[i] = 1.0 + 0.6 * std::cos(2.0 * g.angle[i]);
    CHECK_THROWS_WITH_AS(support_radii(g, h), doctest::Contains("ConvexityLost"), FlowError);
}

TEST_CASE("graph curvature: paraboloid values") {
    DomainSpec dom = DomainSpec::disk(1.3, 0.1);
    DomainGrid g = make_domain_grid(dom, 0.05);
    std::vector<double> u(g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
        u[k] = 0.5 * (g.x[k] * g.x[k] + g.y[k] * g.y[k]);
    auto c = graph_curvature(g, u);

    std::int32_t c0 = g.find(0, 0);
    REQUIRE(c0 >= 0);
    CHECK(c.gauss[c0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.nu_vert[c0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.kmin[c0] == doctest::Approx(1.0).epsilon(1e-12));

    std::int32_t k1 = g.find(20, 0);  // (1, 0): |Du| = 1, det = 1 -> K = 1/4
    REQUIRE(k1 >= 0);
    REQUIRE(c.valid[k1]);
    CHECK(c.gauss[k1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("graph curvature: grim reaper profile at the origin") {
    DomainSpec dom = DomainSpec::interval(1.2, 0.1);
    DomainGrid g = make_domain_grid(dom, 1.2 / 256.0);
    std::vector<double> u(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) u[k] = -std::log(std::cos(g.x[k]));
    auto c = graph_curvature(g, u);
    std::int32_t c0 = g.find(0, 0);
    REQUIRE(c0 >= 0);
    CHECK(c.gauss[c0] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("graph convexity loss outside the collar") {
    DomainSpec dom = DomainSpec::interval(1.0, 0.1);
    DomainGrid g = make_domain_grid(dom, 1.0 / 64.0);
    std::vector<double> u(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) u[k] = g.x[k] * g.x[k];
    std::int32_t mid = g.find(0, 0);
    u[mid] += 0.1;  // concave dent at the center
    CHECK_THROWS_WITH_AS(graph_curvature(g, u), doctest::Contains("ConvexityLost"), FlowError);
}

TEST_CASE("integrate: circle perimeter, Gauss-map mass, disk area") {
    SphereGrid g = make_circle_grid(512);
    auto c = support_radii(g, std::vector<double>(g.size(), 1.0));
    std::vector<double> one(g.size(), 1.0);
    CHECK(integrate(g, one, c.det) == doctest::Approx(2.0 * pi).epsilon(1e-10));

    // total curvature of any strictly convex curve is 2*pi
    std::vector<double> h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        double cc = std::cos(g.angle[i]), s = std::sin(g.angle[i]);
        h[i] = std::sqrt(cc * cc + 0.36 * s * s);
    }
    auto ce = support_radii(g, h);
    CHECK(integrate(g, ce.gauss, ce.det) == doctest::Approx(2.0 * pi).epsilon(1e-8));

    DomainSpec dom = DomainSpec::disk(1.0, 0.1);
    DomainGrid dg = make_domain_grid(dom, 1.0 / 64.0);
    std::vector<double> f(dg.size(), 1.0), dens(dg.size(), 1.0);
    CHECK(integrate(dg, f, dens) == doctest::Approx(pi).epsilon(0.02));

    std::vector<double> bad(dg.size() + 1, 1.0);
    CHECK_THROWS_WITH_AS(integrate(dg, bad, dens), doctest::Contains("GridMismatch"), FlowError);
}

TEST_CASE("gauss-map mass is shape independent (n=2)") {
    SphereGrid g = make_axisym_grid(256);
    std::vector<double> h(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        double c = std::cos(g.angle[j]), s = std::sin(g.angle[j]);
        h[j] = std::sqrt(1.44 * c * c + s * s);  // prolate spheroid
    }
    auto cur = support_radii(g, h);
    CHECK(integrate(g, cur.gauss, cur.det) == doctest::Approx(4.0 * pi).epsilon(1e-6));
}

TEST_CASE("graph K field inherits the grid's dihedral symmetry") {
    DomainSpec dom = DomainSpec::disk(1.0, 0.2);
    DomainGrid g = make_domain_grid(dom, 1.0 / 24.0);
    std::vector<double> u(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        double r2 = g.x[k] * g.x[k] + g.y[k] * g.y[k];
        u[k] = 0.4 * r2 + 0.1 * r2 * r2;
    }
    auto c = graph_curvature(g, u);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!c.valid[k]) continue;
        for (auto [pi_, pj] : {std::pair{g.gj[k], g.gi[k]}, {-g.gi[k], g.gj[k]},
                               {g.gi[k], -g.gj[k]}}) {
            std::int32_t m = g.find(pi_, pj);
            REQUIRE(m >= 0);
            if (c.valid[m]) CHECK(c.gauss[k] == doctest::Approx(c.gauss[m]).epsilon(1e-12));
        }
    }
}

TEST_CASE("domain spec validation") {
    CHECK_THROWS_AS(DomainSpec::interval(0.2, 0.25), FlowError);  // empty Omega'
    CHECK_THROWS_AS(DomainSpec::polygon({{0, 0}, {2, 0}, {2, 2}, {1, 0.5}, {0, 2}}, 0.05),
                    FlowError);  // reflex vertex
    auto square = DomainSpec::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, 0.25);
    CHECK(square.area() == doctest::Approx(4.0));
    CHECK(square.contains(0.5, 0.5));
    CHECK(!square.contains(1.5, 0.0));
    CHECK(square.boundary_distance(0.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("domain grid structure") {
    DomainSpec dom = DomainSpec::disk(1.0, 0.25);
    DomainGrid g = make_domain_grid(dom, 1.0 / 16.0);
    REQUIRE(g.interior.size() >= 9);
    // every interior node has its full stencil inside the node set
    for (std::int32_t k : g.interior)
        for (int s = 0; s < g.nbr_count(); ++s) CHECK(g.neighbor(k, s) >= 0);
    // ring nodes are exactly those missing a neighbor
    for (std::size_t k = 0; k < g.size(); ++k) {
        bool missing = false;
        for (int s = 0; s < g.nbr_count(); ++s)
            if (g.neighbor(k, s) < 0) missing = true;
        CHECK(static_cast<bool>(g.ring[k]) == missing);
        if (g.omega_prime[k]) CHECK(dom.boundary_distance(g.x[k], g.y[k]) >= 0.25);
    }
    CHECK(g.center == g.find(0, 0));
    CHECK_THROWS_AS(make_domain_grid(dom, 0.9), FlowError);  // too few interior nodes
}
