#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "staticlab/curvature.hpp"
#include "staticlab/errors.hpp"
#include "staticlab/metric.hpp"

using namespace staticlab;

namespace {

MetricField s3_chart_metric() {
    // round S^3 in geodesic polar coordinates, entered as a plain chart metric
    Chart chart(3, {"s", "theta", "phi"}, {{0.0, M_PI}, {0.0, M_PI}, {0.0, 2 * M_PI}},
                {false, false, true});
    return make_chart_metric(chart, [](const Point& x, Matrix& g) {
        double s2 = std::sin(x[0]) * std::sin(x[0]);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g(i, j) = 0.0;
        g(0, 0) = 1.0;
        g(1, 1) = s2;
        g(2, 2) = s2 * std::sin(x[1]) * std::sin(x[1]);
    }, "s3-chart");
}

} // namespace

TEST_SUITE("geometry") {

TEST_CASE("euclidean chart metric") {
    MetricField m = make_chart_metric(Chart::box(3, -1.0, 1.0), [](const Point&, Matrix& g) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g(i, j) = (i == j) ? 1.0 : 0.0;
    });
    Point x = {0.2, -0.4, 0.7};
    CHECK(m.det(x) == doctest::Approx(1.0));
    MetricJet j = m.jet(x, 2);
    double dev = 0.0;
    for (double v : j.d1) dev = std::max(dev, std::fabs(v));
    for (double v : j.d2) dev = std::max(dev, std::fabs(v));
    CHECK(dev < 1e-10);
}

TEST_CASE("polar S3 chart: determinant and closed-form derivative") {
    MetricField m = s3_chart_metric();
    Point x = {1.0, 1.1, 0.3};
    CHECK(m.det(x) ==
          doctest::Approx(std::pow(std::sin(1.0), 4) * std::pow(std::sin(1.1), 2)).epsilon(1e-10));
    // d_s g_{theta theta} = 2 sin(s) cos(s), via stencils
    MetricJet j = m.jet(x, 1);
    CHECK(std::fabs(j.d1v(0, 1, 1) - 2.0 * std::sin(1.0) * std::cos(1.0)) < 1e-8);
    // polynomial-sharp case: g11 = 1 + x1^2 has d1 g11 = 2 x1
    MetricField poly = make_chart_metric(Chart::box(2, -2.0, 2.0), [](const Point& x2, Matrix& g) {
        g(0, 0) = 1.0 + x2[0] * x2[0];
        g(0, 1) = g(1, 0) = 0.0;
        g(1, 1) = 1.0;
    });
    MetricJet pj = poly.jet({1.0, 0.0}, 1);
    CHECK(std::fabs(pj.d1v(0, 0, 0) - 2.0) < 1e-10);
}

TEST_CASE("degenerate metric is rejected with the offending point") {
    MetricField m = make_chart_metric(Chart::box(2, -1.0, 1.0), [](const Point& x, Matrix& g) {
        g(0, 0) = x[0]; // zero eigenvalue at x0 = 0, negative beyond
        g(0, 1) = g(1, 0) = 0.0;
        g(1, 1) = 1.0;
    });
    CHECK_NOTHROW(m.value({0.5, 0.0}));
    CHECK_THROWS_AS(m.value({0.0, 0.0}), DegenerateMetricError);
    try {
        m.value({-0.25, 0.125});
    } catch (const DegenerateMetricError& e) {
        CHECK(e.point[0] == doctest::Approx(-0.25));
    }
}

TEST_CASE("out-of-domain evaluation throws") {
    MetricField m = s3_chart_metric();
    CHECK_THROWS_AS(m.jet({-0.5, 1.0, 0.3}, 1), OutOfDomainError);
    // periodic coordinate may leave the fundamental interval
    CHECK_NOTHROW(m.jet({1.0, 1.0, 9.0}, 1));
}

TEST_CASE("warped product equals the same metric entered as a chart") {
    MetricField warped =
        make_warped_product(Curve::sine(), make_sphere_fiber(2, 1.0), 3, Chart::line(0.0, M_PI));
    MetricField chart = s3_chart_metric();
    auto pts = sample_points(chart.chart(), 20, 17u, 0.05);
    double dev = 0.0;
    for (const auto& x : pts) {
        Matrix a = warped.value(x), b = chart.value(x);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) dev = std::max(dev, std::fabs(a(i, j) - b(i, j)));
    }
    CHECK(dev < 1e-12);
}

TEST_CASE("warped products: product metric, round sphere, generic warp") {
    // r == 1 over S2: S1 x S2 with scalar curvature 2
    MetricField prod = make_warped_product(Curve::constant(1.0), make_sphere_fiber(2, 1.0), 3,
                                           Chart::line(0.0, 2 * M_PI, true));
    CHECK(curvature_at(prod, {0.3, 1.2, 0.5}).scalar == doctest::Approx(2.0).epsilon(1e-10));

    // r = sin s: round S3 with scalar curvature 6
    MetricField s3 =
        make_warped_product(Curve::sine(), make_sphere_fiber(2, 1.0), 3, Chart::line(0.0, M_PI));
    CHECK(curvature_at(s3, {1.1, 0.9, 0.2}).scalar == doctest::Approx(6.0).epsilon(1e-10));

    // r = 2 + sin s: cross-check the scalar curvature against two oracles
    Curve r = Curve::sinusoid(2.0, 1.0);
    MetricField w = make_warped_product(r, make_sphere_fiber(2, 1.0), 3,
                                        Chart::line(0.0, 2 * M_PI, true));
    Point x = {0.0, 1.3, 0.4};
    double pipeline = curvature_at(w, x).scalar;

    oracle::WarpedOracle closed;
    closed.r = [](double s, int k) { return Curve::sinusoid(2.0, 1.0)(s, k); };
    closed.n = 3;
    closed.block_dims = {2};
    closed.block_kappa = {1.0};
    CHECK(pipeline == doctest::Approx(closed.scalar({0.0, 1.3, 0.4})).epsilon(1e-9));

    oracle::FdOracle fd;
    fd.n = 3;
    fd.g = [&w](const oracle::Vec& y, oracle::Vec& out) {
        Matrix g = w.value(Point(y.begin(), y.end()));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out[i * 3 + j] = g(i, j);
    };
    CHECK(std::fabs(pipeline - fd.scalar({0.0, 1.3, 0.4})) < 1e-6);
}

TEST_CASE("non-positive warp is rejected") {
    CHECK_THROWS_AS(make_warped_product(Curve::sinusoid(0.5, 1.0), make_sphere_fiber(2, 1.0), 3,
                                        Chart::line(0.0, 2 * M_PI, true)),
                    InvalidWarpError);
}

TEST_CASE("derivative arrays are symmetric in the derivative indices") {
    MetricField w = make_warped_product(Curve::sinusoid(2.0, 0.3), make_sphere_fiber(2, 1.0), 3,
                                        Chart::line(0.0, 2 * M_PI, true));
    MetricField fd = w.finite_difference_mode();
    Point x = {0.7, 1.1, 0.4};
    MetricJet j = fd.jet(x, 3);
    double dev = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            for (int i = 0; i < 3; ++i)
                for (int jj = 0; jj < 3; ++jj)
                    dev = std::max(dev, std::fabs(j.d2v(k, l, i, jj) - j.d2v(l, k, i, jj)));
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            for (int q = 0; q < 3; ++q)
                for (int i = 0; i < 3; ++i)
                    for (int jj = 0; jj < 3; ++jj) {
                        dev = std::max(dev,
                                       std::fabs(j.d3v(k, l, q, i, jj) - j.d3v(l, k, q, i, jj)));
                        dev = std::max(dev,
                                       std::fabs(j.d3v(k, l, q, i, jj) - j.d3v(q, l, k, i, jj)));
                    }
    CHECK(dev == 0.0); // symmetric by construction
}

TEST_CASE("analytic third-derivative jets agree with stencils") {
    MetricField w = make_warped_product(Curve::sinusoid(2.0, 0.3), make_sphere_fiber(2, 1.0), 3,
                                        Chart::line(0.0, 2 * M_PI, true));
    MetricField fd = w.finite_difference_mode();
    Point x = {0.7, 1.1, 0.4};
    MetricJet ja = w.jet(x, 3);
    MetricJet jf = fd.jet(x, 3);
    double dev = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < ja.d3.size(); ++i) {
        dev = std::max(dev, std::fabs(ja.d3[i] - jf.d3[i]));
        scale = std::max(scale, std::fabs(ja.d3[i]));
    }
    // relative to the largest component; the stencils are 2nd order here
    CHECK(dev < 2e-3 * scale);

    // doubly-warped assembly too
    std::vector<WarpBlock> blocks = {{Curve::sinusoid(2.0, 0.3), make_sphere_fiber(2, 1.0)},
                                     {Curve::sinusoid(1.5, 0.2, 2.0), make_sphere_fiber(2, 1.0)}};
    MetricField dw = make_multiply_warped_product(blocks, Chart::line(0.0, 2 * M_PI, true));
    MetricField dfd = dw.finite_difference_mode();
    Point y = {0.9, 1.1, 0.4, 1.3, 0.8};
    MetricJet da = dw.jet(y, 3);
    MetricJet df = dfd.jet(y, 3);
    dev = 0.0;
    scale = 0.0;
    for (std::size_t i = 0; i < da.d3.size(); ++i) {
        dev = std::max(dev, std::fabs(da.d3[i] - df.d3[i]));
        scale = std::max(scale, std::fabs(da.d3[i]));
    }
    CHECK(dev < 2e-3 * scale);
}

TEST_CASE("stencils are exact on polynomials") {
    CHECK(DiffEngine::polynomial_exactness_error() < 1e-10);
}

TEST_CASE("finite differences converge at 4th order against analytic jets") {
    std::vector<std::pair<MetricField, Point>> probes;
    probes.emplace_back(make_warped_product(Curve::sinusoid(2.0, 0.3),
                                            make_sphere_fiber(2, 1.0), 3,
                                            Chart::line(0.0, 2 * M_PI, true)),
                        Point{0.9, 1.2, 0.8});
    probes.emplace_back(make_warped_product(Curve::hyperbolic_cosine(),
                                            make_hyperbolic_fiber(2, 1.0), 3,
                                            Chart::line(-1.2, 1.2)),
                        Point{0.4, 0.1, 1.4});
    for (auto& [w, x] : probes) {
        MetricJet exact = w.jet(x, 2);
        auto max_err = [&](double h_frac) {
            MetricField fd = w.finite_difference_mode();
            fd.engine().h12_frac = h_frac;
            MetricJet j = fd.jet(x, 2);
            double dev = 0.0;
            for (std::size_t i = 0; i < j.d2.size(); ++i)
                dev = std::max(dev, std::fabs(j.d2[i] - exact.d2[i]));
            return dev;
        };
        double e1 = max_err(4.0e-2);
        double e2 = max_err(2.0e-2);
        double ratio = e1 / e2;
        CAPTURE(w.name());
        CHECK(ratio > 12.0);
        CHECK(ratio < 20.0);
    }
}

TEST_CASE("fibers are Einstein to tolerance") {
    struct Probe {
        FiberSpec f;
        double tol;
    };
    std::vector<Probe> fibers = {{make_sphere_fiber(2, 1.0), 1e-10},
                                 {make_sphere_fiber(3, 1.0), 1e-10},
                                 {make_sphere_fiber(2, 0.5), 1e-10},
                                 {make_torus_fiber(2), 1e-12},
                                 {make_hyperbolic_fiber(2, 1.0), 1e-10},
                                 {make_hyperbolic_fiber(3, 2.0), 1e-10},
                                 {make_s2xs2_fiber(1.0, 1.0), 1e-10}};
    for (const auto& [f, tol] : fibers) {
        auto pts = sample_points(f.metric.chart(), 6, 29u, 0.08);
        double dev = 0.0;
        for (const auto& y : pts) {
            CurvaturePoint c = curvature_at(f.metric, y);
            for (int i = 0; i < f.dim; ++i)
                for (int j = 0; j < f.dim; ++j)
                    dev = std::max(dev,
                                   std::fabs(c.ricci(i, j) - f.einstein_constant * c.g(i, j)));
        }
        CAPTURE(f.name);
        CHECK(dev < tol);
    }
    // unequal S2 x S2 radii are not Einstein and must be rejected
    CHECK_THROWS_AS(make_s2xs2_fiber(1.0, 2.0), ConfigError);
}

TEST_CASE("scalar fields: radial, coordinate, jets") {
    MetricField w = make_warped_product(Curve::sinusoid(2.0, 0.3), make_sphere_fiber(2, 1.0), 3,
                                        Chart::line(0.0, 2 * M_PI, true));
    ScalarField f = ScalarField::radial(w.chart(), Curve::sine());
    Point x = {0.6, 1.0, 0.5};
    ScalarJet j = f.jet(x, 2);
    CHECK(j.value == doctest::Approx(std::sin(0.6)));
    CHECK(j.d1(0) == doctest::Approx(std::cos(0.6)));
    CHECK(j.d1(1) == 0.0);
    CHECK(j.d2(0, 0) == doctest::Approx(-std::sin(0.6)));

    ScalarField c = ScalarField::coordinate(w.chart(), 1);
    ScalarJet cj = c.jet(x, 2);
    CHECK(cj.d1(1) == 1.0);
    CHECK(cj.d2(1, 1) == 0.0);
}

} // TEST_SUITE
