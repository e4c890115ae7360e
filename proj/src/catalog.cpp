#include "staticlab/catalog.hpp"

#include <cmath>

#include "staticlab/curvature.hpp"
#include "staticlab/errors.hpp"
#include "staticlab/levelset.hpp"
#include "staticlab/warp_ode.hpp"

namespace staticlab {

namespace {

StaticModel warped_vacuum(const std::string& name, const Curve& r, const FiberSpec& fiber,
                          int n, const Chart& base, const Curve& f, double R, bool closed,
                          bool constant_f = false) {
    StaticModel m;
    m.name = name;
    m.metric = make_warped_product(r, fiber, n, base, name);
    m.f = ScalarField::radial(m.metric.chart(), f);
    m.kind = ModelKind::VacuumStatic;
    m.known_scalar = R;
    m.closed = closed;
    m.constant_f = constant_f;
    m.warped.valid = true;
    m.warped.base = base;
    m.warped.blocks = {WarpBlock{r, fiber}};
    return m;
}

StaticModel build_flat_t3() {
    Chart base = Chart::line(0.0, 2.0 * M_PI, true);
    return warped_vacuum("flat-t3", Curve::constant(1.0), make_torus_fiber(2), 3, base,
                         Curve::constant(1.0), 0.0, /*closed=*/true, /*constant_f=*/true);
}

StaticModel build_flat_line() {
    Chart base = Chart::line(-1.5, 1.5, false);
    return warped_vacuum("flat-line", Curve::constant(1.0), make_torus_fiber(2), 3, base,
                         Curve::linear(0.0, 1.0), 0.0, /*closed=*/false);
}

StaticModel build_sphere(int n) {
    Chart base = Chart::line(0.0, M_PI, false);
    return warped_vacuum(n == 3 ? "s3" : "s4", Curve::sine(), make_sphere_fiber(n - 1, 1.0), n,
                         base, Curve::cosine(), n * (n - 1.0), /*closed=*/true);
}

StaticModel build_h3() {
    Chart base = Chart::line(-1.2, 1.2, false);
    return warped_vacuum("h3", Curve::hyperbolic_cosine(), make_hyperbolic_fiber(2, 1.0), 3,
                         base, Curve::hyperbolic_sine(), -6.0, /*closed=*/false);
}

StaticModel build_s1xs2() {
    Chart base = Chart::line(0.0, 2.0 * M_PI, true);
    return warped_vacuum("s1xs2", Curve::constant(1.0), make_sphere_fiber(2, 1.0), 3, base,
                         Curve::sine(), 2.0, /*closed=*/true);
}

// S^1(1/sqrt(n-2)) x E^{n-1} with R_E = (n-1)(n-2): f = sin(sqrt(n-2) s).
StaticModel build_s1xs3() {
    double om = std::sqrt(2.0);
    Chart base = Chart::line(0.0, 2.0 * M_PI / om, true);
    return warped_vacuum("s1xs3", Curve::constant(1.0), make_sphere_fiber(3, 1.0), 4, base,
                         Curve::sine(om), 6.0, /*closed=*/true);
}

StaticModel build_s1xs2xs2() {
    double om = std::sqrt(3.0);
    Chart base = Chart::line(0.0, 2.0 * M_PI / om, true);
    double rho = 1.0 / std::sqrt(3.0);
    return warped_vacuum("s1xs2xs2", Curve::constant(1.0), make_s2xs2_fiber(rho, rho), 5, base,
                         Curve::sine(om), 12.0, /*closed=*/true);
}

StaticModel build_periodic() {
    PeriodicWarp pw = find_periodic_warp(3, 6.0, 0.5, 1.25);
    if (!pw.found) throw Error("periodic warp construction failed: " + pw.diagnostic);
    return periodic_warp_model(pw, "s1xr-s2");
}

// Non-compact warped regime at R < 0 generated from (R, a, k) alone;
// f follows r' so the constraint holds along the trajectory.
StaticModel build_ex5() {
    const int n = 3;
    const double R = -6.0, a = 0.5;
    WarpOdeParams p{n, R, a};
    double r0 = 1.0, rp0 = 0.3;
    double f0 = rp0, fp0 = warp_acceleration(p, r0);
    OdeSystem sys;
    sys.dim = 4;
    // reuse the classification field through integrate_warp_ode
    OdeState y0;
    y0.r = r0;
    y0.rp = rp0;
    y0.f = f0;
    y0.fp = fp0;
    const double lo = -0.15, hi = 1.35; // window with stencil margins
    WarpTrajectory fwd = integrate_warp_ode(p, y0, hi);
    OdeState yb = y0;
    WarpTrajectory bwd = integrate_warp_ode(p, yb, lo);
    auto fwdp = std::make_shared<Trajectory>(fwd.traj);
    auto bwdp = std::make_shared<Trajectory>(bwd.traj);
    auto state = [fwdp, bwdp](double s, int comp) {
        return (s >= 0.0) ? fwdp->eval(s, comp, 0) : bwdp->eval(s, comp, 0);
    };
    const double c = R / (n * (n - 1.0));
    Curve rc([state, a, c, n](double s, int k) {
        double r = state(s, 0);
        switch (k) {
            case 0: return r;
            case 1: return state(s, 1);
            case 2: return a * std::pow(r, 1.0 - n) - c * r;
            default:
                return ((1.0 - n) * a * std::pow(r, -static_cast<double>(n)) - c) * state(s, 1);
        }
    });
    Curve fc([state, a, c, n](double s, int k) {
        double r = state(s, 0), rp = state(s, 1);
        switch (k) {
            case 0: return rp;
            case 1: return a * std::pow(r, 1.0 - n) - c * r;
            case 2:
                return ((1.0 - n) * a * std::pow(r, -static_cast<double>(n)) - c) * rp;
            default: {
                double rpp = a * std::pow(r, 1.0 - n) - c * r;
                return (1.0 - n) * (-static_cast<double>(n)) * a *
                           std::pow(r, -static_cast<double>(n) - 1.0) * rp * rp +
                       ((1.0 - n) * a * std::pow(r, -static_cast<double>(n)) - c) * rpp;
            }
        }
    });
    double k_int = first_integrals(p, r0, rp0).k;
    FiberSpec fiber = make_einstein_fiber(n - 1, (n - 2.0) * k_int);
    Chart base = Chart::line(0.0, 1.2, false);
    StaticModel m;
    m.name = "ex5-noncompact";
    m.metric = make_warped_product(rc, fiber, n, base, "ex5-noncompact");
    m.f = ScalarField::radial(m.metric.chart(), fc);
    m.kind = ModelKind::VacuumStatic;
    m.known_scalar = R;
    m.closed = false;
    m.warped.valid = true;
    m.warped.base = base;
    m.warped.blocks = {WarpBlock{rc, fiber}};
    return m;
}

double periodic_k() {
    static double k = [] {
        PeriodicWarp pw = find_periodic_warp(3, 6.0, 0.5, 1.25);
        return pw.k;
    }();
    return k;
}

double ex5_k() {
    WarpOdeParams p{3, -6.0, 0.5};
    return first_integrals(p, 1.0, 0.3).k;
}

} // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;
        v.push_back({"flat-t3", 3, {"flat"}, 0.0, true, true, 0.0, build_flat_t3});
        v.push_back({"flat-line", 3, {"flat", "non-compact"}, 0.0, false, false, 0.0,
                     build_flat_line});
        v.push_back({"s3", 3, {"Sn"}, 6.0, true, false, 1.0, [] { return build_sphere(3); }});
        v.push_back({"s4", 4, {"Sn"}, 12.0, true, false, 1.0, [] { return build_sphere(4); }});
        v.push_back({"h3", 3, {"Hn", "non-compact"}, -6.0, false, false, -1.0, build_h3});
        v.push_back({"s1xs2", 3, {"S1xS2", "constant-r"}, 2.0, true, false, 1.0, build_s1xs2});
        v.push_back({"s1xs3", 4, {"constant-r"}, 6.0, true, false, 1.0, build_s1xs3});
        v.push_back(
            {"s1xs2xs2", 5, {"constant-r"}, 12.0, true, false, 1.0, build_s1xs2xs2});
        v.push_back({"s1xr-s2", 3, {"periodic-r"}, 6.0, true, false, periodic_k(),
                     build_periodic});
        v.push_back({"ex5-noncompact", 3, {"non-compact"}, -6.0, false, false, ex5_k(),
                     build_ex5});
        return v;
    }();
    return entries;
}

CatalogCertification certify_entry(const CatalogEntry& entry, const CertifyTolerances& tol,
                                   int samples) {
    StaticModel model = entry.build();
    CatalogCertification cert;
    cert.name = entry.name;

    auto pts = sample_points(model.metric.chart(), samples, 97u,
                             model.metric.sample_margin_frac());
    for (const auto& x : pts) {
        cert.vacuum_residual =
            std::max(cert.vacuum_residual,
                     vacuum_static_residual(model.metric, model.f, x).max_abs());
        cert.max_bach = std::max(cert.max_bach, bach(model.metric, x).max_abs());
        cert.max_d = std::max(cert.max_d, d_tensor(model.metric, model.f, x).max_abs());
        CurvaturePoint cp = curvature_at(model.metric, x);
        cert.scalar_deviation =
            std::max(cert.scalar_deviation, std::fabs(cp.scalar - entry.expected_scalar));
    }

    cert.slice_constant_expected = (model.dim() - 2.0) * entry.einstein_k;
    if (!entry.constant_f && model.warped.valid && model.warped.blocks.size() == 1) {
        // pick a regular value in the middle of the range of f
        double fmax = 0.0, fmin = 0.0;
        const Curve& f = model.f.radial_curve();
        const Chart& base = model.warped.base;
        for (int i = 1; i < 64; ++i) {
            double v = f(base.lo(0) + base.extent(0) * i / 64.0, 0);
            fmax = std::max(fmax, v);
            fmin = std::min(fmin, v);
        }
        double c = fmin + 0.61 * (fmax - fmin);
        EinsteinSlice es = einstein_slice_check(model, c);
        cert.slice_einstein_dev = es.deviation;
        cert.slice_constant_measured = es.fiber_einstein_constant;
    } else {
        cert.slice_einstein_dev = std::numeric_limits<double>::quiet_NaN();
        cert.slice_constant_measured = cert.slice_constant_expected;
    }

    bool slice_ok = entry.constant_f ||
                    (cert.slice_einstein_dev <= tol.slice &&
                     std::fabs(cert.slice_constant_measured - cert.slice_constant_expected) <=
                         tol.slice);
    cert.pass = cert.vacuum_residual <= tol.vacuum && cert.max_bach <= tol.bach &&
                cert.max_d <= tol.d_flat && slice_ok;
    return cert;
}

StaticModel build_model(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e.build();

    if (name == "warped3") {
        ManufactureOptions mo;
        return manufacture_static_warped(Curve::sinusoid(2.0, 0.3), make_sphere_fiber(2, 1.0),
                                         3, 1.0, 0.3, 0.0, 2.0 * M_PI, mo, "warped3");
    }
    if (name == "warped4") {
        ManufactureOptions mo;
        return manufacture_static_doubly_warped(Curve::sinusoid(2.0, 0.3),
                                                make_sphere_fiber(2, 1.0), make_torus_fiber(1),
                                                4, 0.8, 0.3, 2.0, 0.0, 0.0, 3.5, mo, "warped4");
    }
    if (name == "warped5") {
        ManufactureOptions mo;
        return manufacture_static_doubly_warped(Curve::sinusoid(2.0, 0.3),
                                                make_sphere_fiber(2, 1.0),
                                                make_sphere_fiber(2, 1.0), 5, 0.35, 0.5, 2.0,
                                                0.0, 0.0, 4.6, mo, "warped5");
    }
    if (name == "warped5-single") {
        ManufactureOptions mo;
        return manufacture_static_warped(Curve::sinusoid(2.0, 0.3), make_s2xs2_fiber(1.0, 1.0),
                                         5, 1.0, 0.5, 0.0, 2.0 * M_PI, mo, "warped5-single");
    }
    if (name == "s3-cpe") {
        Chart base = Chart::line(0.0, M_PI, false);
        FiberSpec s2 = make_sphere_fiber(2, 1.0);
        StaticModel m;
        m.name = "s3-cpe";
        m.metric = make_warped_product(Curve::sine(), s2, 3, base, "s3-cpe");
        m.f = ScalarField::radial(m.metric.chart(),
                                  Curve::sum(Curve::constant(1.0), Curve::cosine(), 0.5));
        m.kind = ModelKind::Cpe;
        m.known_scalar = 6.0;
        m.closed = true;
        m.warped.valid = true;
        m.warped.base = base;
        m.warped.blocks = {WarpBlock{Curve::sine(), s2}};
        return m;
    }
    throw ConfigError("unknown model: " + name);
}

std::vector<std::string> model_names() {
    std::vector<std::string> names;
    for (const auto& e : catalog()) names.push_back(e.name);
    names.push_back("warped3");
    names.push_back("warped4");
    names.push_back("warped5");
    names.push_back("warped5-single");
    names.push_back("s3-cpe");
    return names;
}

} // namespace staticlab
