#include <doctest.h>

#include <cmath>

#include "staticlab/catalog.hpp"
#include "staticlab/curvature.hpp"
#include "staticlab/quadrature.hpp"

using namespace staticlab;

TEST_SUITE("quadrature") {

TEST_CASE("gauss-legendre integrates sin^2 over a period to machine precision") {
    std::vector<double> xs, ws;
    gauss_legendre(16, xs, ws);
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) {
        double s = M_PI * (xs[i] + 1.0); // map to [0, 2 pi]
        acc += M_PI * ws[i] * std::sin(s) * std::sin(s);
    }
    CHECK(acc == doctest::Approx(M_PI).epsilon(1e-13));
}

TEST_CASE("volumes: unit S3 and the f^2 integral over S1 x S2") {
    StaticModel s3 = build_model("s3");
    IntegralResult vol = integrate_radial(s3, [](double) { return 1.0; }, region_closed(s3), 32);
    CHECK(std::fabs(vol.value - 2.0 * M_PI * M_PI) < 1e-10);
    CHECK(vol.converged);

    StaticModel p = build_model("s1xs2");
    IntegralResult i2 = integrate_radial(
        p, [](double s) { return std::sin(s) * std::sin(s); }, region_closed(p), 32);
    CHECK(std::fabs(i2.value - 4.0 * M_PI * M_PI) < 1e-8);
}

TEST_CASE("between-levels regions keep interior components only") {
    StaticModel m = build_model("warped5");
    Region r = region_between_levels(m, 0.5, 1.5);
    REQUIRE(r.intervals.size() == 1); // the component at the right chart end is dropped
    const Curve& f = m.f.radial_curve();
    CHECK(f(r.intervals[0][0], 0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(f(r.intervals[0][1], 0) == doctest::Approx(1.5).epsilon(1e-10));
    CHECK_THROWS_AS(region_between_levels(m, 1.5, 0.5), Error);
}

TEST_CASE("the |D|^2 integral is positive and stable under node doubling") {
    StaticModel m = build_model("warped5");
    Region region = region_between_levels(m, 0.5, 1.5);
    auto dsq = [&](const Point& x) {
        CurvaturePoint c = curvature_at(m.metric, x);
        return d_tensor(m.metric, m.f, x).norm2(c.ginv);
    };
    IntegralResult ir = integrate_invariant(m, dsq, region, 32);
    CHECK(ir.value > 1e-4);
    CHECK(ir.converged);
    CHECK(ir.error_indicator < 1e-6 * (1.0 + ir.value));
}

TEST_CASE("scalar invariants of warped models depend on s only") {
    StaticModel m = build_model("warped5");
    auto dsq = [&](const Point& x) {
        CurvaturePoint c = curvature_at(m.metric, x);
        return d_tensor(m.metric, m.f, x).norm2(c.ginv);
    };
    auto pts = sample_points(m.metric.chart(), 6, 37u, 0.08);
    double ref_s = 1.3;
    Point ref = pts[0];
    ref[0] = ref_s;
    double v0 = dsq(ref);
    for (auto x : pts) {
        x[0] = ref_s;
        CHECK(dsq(x) == doctest::Approx(v0).epsilon(1e-8));
    }
}

TEST_CASE("level-region identity: trivial and nontrivial content") {
    StaticModel s3 = build_model("s3");
    IdentityCheck tr = check_main_identity(s3, 0.2, 0.8, 2, 24);
    CHECK(std::fabs(tr.lhs) < 1e-8);
    CHECK(std::fabs(tr.rhs) < 1e-8);
    CHECK(tr.pass);

    // Bach-flat catalog member: both sides vanish independently
    StaticModel cat = build_model("s1xs2xs2");
    IdentityCheck tc = check_main_identity(cat, 0.2, 0.8, 2, 16);
    CHECK(std::fabs(tc.lhs) < 1e-5);
    CHECK(std::fabs(tc.rhs) < 1e-5);

    StaticModel m = build_model("warped5");
    for (int p : {2, 3}) {
        IdentityCheck ic = check_main_identity(m, 0.5, 1.5, p, 24);
        CAPTURE(p);
        CHECK(ic.pass);
        CHECK(ic.converged);
        CHECK(std::fabs(ic.lhs) > 10.0 * ic.tolerance);
        CHECK(std::fabs(ic.rhs) > 10.0 * ic.tolerance);
    }
}

TEST_CASE("boundary antisymmetry mechanism") {
    for (auto name : {"s3", "s1xs2", "warped5"}) {
        StaticModel m = build_model(name);
        double fmax = 0.0;
        const Curve& f = m.f.radial_curve();
        for (double s = m.warped.base.lo(0); s <= m.warped.base.hi(0);
             s += m.warped.base.extent(0) / 64.0)
            fmax = std::max(fmax, std::fabs(f(s, 0)));
        CAPTURE(name);
        CHECK(boundary_antisymmetry_residual(m, 0.45 * fmax) < 1e-10);
    }
}

TEST_CASE("full-divergence identity on closed models") {
    // n = 4: the coefficient vanishes identically and the LHS must too
    CHECK(full_divergence_coefficient(4, 2) == 0.0);
    StaticModel s1xs3 = build_model("s1xs3");
    IdentityCheck ic = check_full_divergence_identity(s1xs3, 2, 12);
    CHECK(ic.rhs == 0.0);
    CHECK(std::fabs(ic.lhs) < 1e-4);

    // n = 5 closed member: both sides vanish independently (D = C = 0)
    StaticModel cat = build_model("s1xs2xs2");
    IdentityCheck i5 = check_full_divergence_identity(cat, 2, 10);
    CHECK(std::fabs(i5.lhs) < 1e-4);
    CHECK(std::fabs(i5.rhs) < 1e-6);

    CHECK_THROWS_AS(check_full_divergence_identity(build_model("warped5"), 2), Error);
    CHECK_THROWS_AS(check_full_divergence_identity(build_model("s1xs3"), 3), Error);
}

TEST_CASE("dimension-3 full divergence of the cotton tensor") {
    // the n = 3 specialization of the closed-manifold coefficient is p/4
    for (int p = 2; p <= 8; ++p)
        CHECK(full_divergence_coefficient(3, p) == doctest::Approx(p / 4.0).epsilon(1e-15));

    StaticModel s1xs2 = build_model("s1xs2");
    IdentityCheck ic = check_3d_identity(s1xs2, 2, 16);
    CHECK(std::fabs(ic.lhs) < 1e-6);
    CHECK(std::fabs(ic.rhs) < 1e-6);
    CHECK(ic.pass);

    StaticModel s3 = build_model("s3");
    IdentityCheck i4 = check_3d_identity(s3, 4, 16);
    CHECK(std::fabs(i4.lhs) < 1e-5);
    CHECK(std::fabs(i4.rhs) < 1e-8);
}

TEST_CASE("odd p requires a positive region") {
    StaticModel m = build_model("warped5");
    CHECK_THROWS_AS(check_main_identity(m, -0.1, 1.5, 3, 8), Error);
    CHECK_THROWS_AS(check_main_identity(m, 0.5, 1.5, 1, 8), Error);
}

TEST_CASE("negative control: perturbed potentials break the region identity") {
    StaticModel m = build_model("warped5");
    StaticModel bad = perturb_potential(m, 0.05);
    IdentityCheck ic = check_main_identity(bad, 0.5, 1.5, 2, 24);
    CHECK(ic.residual > 100.0 * ic.tolerance);
}

TEST_CASE("identity residual tracks the equation residual") {
    // loosening the manufacture tolerance (or perturbing f) must move the
    // identity residual linearly, and a tight solve must beat a loose one
    StaticModel tight = build_model("warped5");
    ManufactureOptions loose_opts;
    loose_opts.rtol = 1e-6;
    loose_opts.atol = 1e-8;
    loose_opts.validate_tol = 0.0;
    StaticModel loose = manufacture_static_doubly_warped(
        Curve::sinusoid(2.0, 0.3), make_sphere_fiber(2, 1.0), make_sphere_fiber(2, 1.0), 5,
        0.35, 0.5, 2.0, 0.0, 0.0, 4.6, loose_opts, "warped5-loose");

    double rt = check_main_identity(tight, 0.5, 1.5, 2, 16).residual;
    double rl = check_main_identity(loose, 0.5, 1.5, 2, 16).residual;
    CHECK(rt <= rl * 1.5 + 1e-12);

    // linear scaling in an explicit perturbation
    double r3 = check_main_identity(perturb_potential(tight, 4e-3), 0.5, 1.5, 2, 16).residual;
    double r4 = check_main_identity(perturb_potential(tight, 4e-4), 0.5, 1.5, 2, 16).residual;
    double ratio = r3 / r4;
    CHECK(ratio > 3.0);
    CHECK(ratio < 30.0);
}

} // TEST_SUITE
