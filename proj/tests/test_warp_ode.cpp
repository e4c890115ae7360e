#include <doctest.h>

#include <cmath>

#include "staticlab/catalog.hpp"
#include "staticlab/curvature.hpp"
#include "staticlab/warp_ode.hpp"

using namespace staticlab;

TEST_SUITE("warp_ode") {

TEST_CASE("constant warp is a fixed point exactly when a balances R") {
    WarpOdeParams p{3, 6.0, 1.0}; // a = R/(n(n-1)) makes r'' = 0 at r = 1
    CHECK(warp_acceleration(p, 1.0) == doctest::Approx(0.0));
    OdeState y0;
    y0.r = 1.0;
    y0.rp = 0.0;
    y0.f = 0.0;
    y0.fp = 1.0;
    WarpTrajectory t = integrate_warp_ode(p, y0, 25.0);
    double dev = 0.0;
    for (double s = 0.0; s <= 25.0; s += 0.37)
        dev = std::max(dev, std::fabs(t.traj.eval(s, 0, 0) - 1.0));
    CHECK(dev < 1e-10);
}

TEST_CASE("constant-coefficient case recovers sin") {
    WarpOdeParams p{3, 2.0, 1.0 / 3.0}; // r == 1 balanced at R = 2
    OdeState y0;
    y0.r = 1.0;
    y0.rp = 0.0;
    y0.f = 0.0;
    y0.fp = 1.0;
    WarpTrajectory t = integrate_warp_ode(p, y0, 10.0 * 2.0 * M_PI);
    double dev = 0.0;
    for (double s = 0.0; s <= 62.8; s += 0.173)
        dev = std::max(dev, std::fabs(t.traj.eval(s, 2, 0) - std::sin(s)));
    CHECK(dev < 1e-9);
    CHECK(t.k_drift < 1e-8);
    CHECK(t.a_drift < 1e-8);
}

TEST_CASE("first integrals: plug-in values and drift over ten periods") {
    // constant r = rho
    for (double rho : {1.0, 1.7}) {
        int n = 3;
        double R = 6.0;
        double c = R / (n * (n - 1.0));
        double a = c * std::pow(rho, n); // balance
        FirstIntegrals fi = first_integrals({n, R, a}, rho, 0.0);
        CHECK(fi.k == doctest::Approx(c * rho * rho + 2.0 * a / (n - 2.0) / rho));
    }

    // the sin-warp sphere presentation has a = 0, k = 1
    OdeState st{1.0, std::sin(1.0), std::cos(1.0), std::cos(1.0), -std::sin(1.0)};
    FirstIntegrals fi = first_integrals_from_state(3, 6.0, st);
    CHECK(std::fabs(fi.a) < 1e-14);
    CHECK(fi.k == doctest::Approx(1.0).epsilon(1e-13));

    // generic bound orbit: both integrals conserved over >= 10 periods
    PeriodicWarp pw = find_periodic_warp(3, 6.0, 0.5, 1.25);
    REQUIRE(pw.found);
    OdeState y0;
    y0.r = pw.r_max;
    y0.rp = 0.0;
    y0.f = 0.0;
    y0.fp = 1.0;
    WarpTrajectory t = integrate_warp_ode({3, 6.0, 0.5}, y0, 10.5 * pw.period);
    CHECK(t.k_drift < 1e-8);
    CHECK(t.a_drift < 1e-8);
    CHECK(t.constraint_residual < 1e-8);
}

TEST_CASE("warp collapse is detected and flagged") {
    WarpOdeParams p{3, 6.0, 0.0}; // a = 0: the orbit reaches r = 0
    OdeState y0;
    y0.r = std::sin(1.0);
    y0.rp = std::cos(1.0);
    y0.f = std::cos(1.0);
    y0.fp = -std::sin(1.0);
    WarpTrajectory t = integrate_warp_ode(p, y0, 10.0);
    CHECK(t.collapsed);
    CHECK(t.collapse_s == doctest::Approx(M_PI - 1.0).epsilon(1e-3));
}

TEST_CASE("periodic shooting: closure, tolerance stability, model residual") {
    PeriodicWarp pw = find_periodic_warp(3, 6.0, 0.5, 1.25);
    REQUIRE(pw.found);
    CHECK(pw.closure_error < 1e-8);
    CHECK(pw.r_min > 0.0);
    CHECK(pw.r_max > pw.r_min);

    // period stable under a 10x tighter integrator
    OdeOptions tight;
    tight.rtol = 1e-12;
    tight.atol = 1e-14;
    PeriodicWarp pw2 = find_periodic_warp(3, 6.0, 0.5, 1.25, tight);
    CHECK(std::fabs(pw.period - pw2.period) < 1e-8);

    // f = c r' substitution: the constraint residual along the orbit
    WarpOdeParams p{3, 6.0, 0.5};
    OdeState y0;
    y0.r = pw.r_max;
    y0.rp = 0.0;
    y0.f = 0.0;
    y0.fp = 1.0; // proportional to r'' at the turning point? f' must follow c r''
    y0.fp = warp_acceleration(p, pw.r_max);
    WarpTrajectory t = integrate_warp_ode(p, y0, 2.0 * pw.period);
    CHECK(t.constraint_residual < 1e-8);

    StaticModel model = periodic_warp_model(pw, "periodic-test");
    auto pts = sample_points(model.metric.chart(), 8, 41u, 0.05);
    double worst = 0.0, bmax = 0.0;
    for (const auto& x : pts) {
        worst = std::max(worst, vacuum_static_residual(model.metric, model.f, x).max_abs());
        bmax = std::max(bmax, bach(model.metric, x).max_abs());
    }
    CHECK(worst < 1e-6);
    CHECK(bmax < 3e-5);
}

TEST_CASE("constant-r and degenerate shooting regimes") {
    // amplitude <= 1 collapses to the constant-r solution at the well center
    PeriodicWarp cw = find_periodic_warp(3, 6.0, 0.5, 1.0);
    CHECK(cw.found);
    CHECK(cw.r_max == cw.r_min);
    WarpOdeParams p{3, 6.0, 0.5};
    CHECK(warp_acceleration(p, cw.r_max) == doctest::Approx(0.0).epsilon(1e-12));

    // a = 0: no well (round-sphere limit, the orbit hits r = 0)
    PeriodicWarp none = find_periodic_warp(3, 6.0, 0.0);
    CHECK(!none.found);
    CHECK(!none.diagnostic.empty());
    // R < 0: no well either
    CHECK(!find_periodic_warp(3, -6.0, 0.5).found);
}

TEST_CASE("the periodic-r member is conformally flat") {
    StaticModel m = build_model("s1xr-s2");
    auto pts = sample_points(m.metric.chart(), 6, 83u, 0.05);
    for (const auto& x : pts) {
        CHECK(cotton(m.metric, x).max_abs() < 1e-7);
        CHECK(curvature_at(m.metric, x).weyl.max_abs() < 1e-10);
    }
}

TEST_CASE("catalog: every entry passes the three independent pipelines") {
    for (const auto& e : catalog()) {
        CatalogCertification c = certify_entry(e);
        CAPTURE(e.name);
        CHECK(c.pass);
        CHECK(c.vacuum_residual < 1e-6);
        CHECK(c.max_bach < 3e-5);
        CHECK(c.max_d < 1e-5);
        CHECK(c.scalar_deviation < 1e-6);
    }
    // tags cover the classification shapes
    std::vector<std::string> expect = {"flat", "Sn", "Hn", "S1xS2", "constant-r", "periodic-r",
                                       "non-compact"};
    for (const auto& tag : expect) {
        bool found = false;
        for (const auto& e : catalog())
            for (const auto& t : e.tags) found = found || (t == tag);
        CAPTURE(tag);
        CHECK(found);
    }
}

} // TEST_SUITE
