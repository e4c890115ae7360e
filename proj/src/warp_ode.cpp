#include "staticlab/warp_ode.hpp"

#include <cmath>
#include <memory>

#include "staticlab/errors.hpp"

namespace staticlab {

double warp_acceleration(const WarpOdeParams& p, double r) {
    double c = p.R / (p.n * (p.n - 1.0));
    return p.a * std::pow(r, 1.0 - p.n) - c * r;
}

FirstIntegrals first_integrals(const WarpOdeParams& p, double r, double rp) {
    double c = p.R / (p.n * (p.n - 1.0));
    FirstIntegrals fi;
    fi.a = p.a;
    fi.k = rp * rp + c * r * r + 2.0 * p.a / (p.n - 2.0) * std::pow(r, 2.0 - p.n);
    return fi;
}

FirstIntegrals first_integrals_from_state(int n, double R, const OdeState& st) {
    if (std::fabs(st.f) < 1e-12) throw Error("first integrals from state need f != 0");
    double rpp = st.rp * st.fp / st.f;
    double c = R / (n * (n - 1.0));
    FirstIntegrals fi;
    fi.a = std::pow(st.r, n - 1.0) * rpp + c * std::pow(st.r, n);
    fi.k = st.rp * st.rp + c * st.r * st.r + 2.0 * fi.a / (n - 2.0) * std::pow(st.r, 2.0 - n);
    return fi;
}

namespace {

OdeSystem warp_system(const WarpOdeParams& p) {
    OdeSystem sys;
    sys.dim = 4;
    const int n = p.n;
    const double R = p.R, a = p.a;
    const double c = R / (n * (n - 1.0));
    auto rhs = [n, R, a, c](double, const double* y, double* dy) {
        double r = y[0], rp = y[1], fp = y[3];
        double rpp = a * std::pow(r, 1.0 - n) - c * r;
        double fpp = -(n - 1.0) * (rp / r) * fp - R / (n - 1.0) * y[2];
        dy[0] = rp;
        dy[1] = rpp;
        dy[2] = fp;
        dy[3] = fpp;
    };
    sys.rhs = rhs;
    sys.rhs2 = [n, R, a, c, rhs](double s, const double* y, double* d2) {
        double r = y[0], rp = y[1], fp = y[3];
        double dy[4];
        rhs(s, y, dy);
        double rpp = dy[1], fpp = dy[3];
        double rppp = ((1.0 - n) * a * std::pow(r, -static_cast<double>(n)) - c) * rp;
        double fppp = -(n - 1.0) * ((rpp * r - rp * rp) / (r * r)) * fp -
                      (n - 1.0) * (rp / r) * fpp - R / (n - 1.0) * fp;
        d2[0] = rpp;
        d2[1] = rppp;
        d2[2] = fpp;
        d2[3] = fppp;
    };
    return sys;
}

} // namespace

WarpTrajectory integrate_warp_ode(const WarpOdeParams& p, const OdeState& y0, double span,
                                  const OdeOptions& opts) {
    WarpTrajectory out;
    out.params = p;
    if (y0.r <= 0.0) throw InvalidWarpError(y0.s);

    OdeSystem sys = warp_system(p);
    // Collapse guard: integrate in pieces, stop when r gets close to 0.
    double s = y0.s, target = y0.s + span;
    std::vector<double> y = {y0.r, y0.rp, y0.f, y0.fp};
    const double r_floor = 1e-4 * y0.r;
    Trajectory full;
    try {
        full = integrate_ode(sys, y, s, target, opts);
    } catch (const std::exception&) {
        // bisect the reachable span (warp collapse drives r'' -> -inf)
        double lo = 0.0, hi = span;
        for (int it = 0; it < 40; ++it) {
            double mid = 0.5 * (lo + hi);
            try {
                integrate_ode(sys, y, s, s + mid, opts);
                lo = mid;
            } catch (const std::exception&) {
                hi = mid;
            }
        }
        full = integrate_ode(sys, y, s, s + 0.95 * lo, opts);
        out.collapsed = true;
        out.collapse_s = s + lo;
    }
    out.traj = full;

    // Monitor integrals and the constraint along the accepted nodes.
    double k0 = first_integrals(p, y0.r, y0.rp).k;
    double fmax = 0.0;
    for (std::size_t i = 0; i < full.nodes().size(); ++i)
        fmax = std::max(fmax, std::fabs(full.node_value(i, 2)));
    double a_lo = p.a, a_hi = p.a;
    out.min_r = y0.r;
    for (std::size_t i = 0; i < full.nodes().size(); ++i) {
        double r = full.node_value(i, 0), rp = full.node_value(i, 1);
        double f = full.node_value(i, 2), fp = full.node_value(i, 3);
        out.min_r = std::min(out.min_r, r);
        if (r < r_floor) {
            out.collapsed = true;
            out.collapse_s = full.nodes()[i];
        }
        double k = first_integrals(p, r, rp).k;
        out.k_drift = std::max(out.k_drift, std::fabs(k - k0));
        double rpp = warp_acceleration(p, r);
        out.constraint_residual =
            std::max(out.constraint_residual, std::fabs(rp * fp - rpp * f));
        if (std::fabs(f) >= 0.05 * fmax && fmax > 0.0) {
            OdeState st{full.nodes()[i], r, rp, f, fp};
            double a_rec = first_integrals_from_state(p.n, p.R, st).a;
            a_lo = std::min(a_lo, a_rec);
            a_hi = std::max(a_hi, a_rec);
        }
    }
    out.a_drift = a_hi - a_lo;
    return out;
}

double EffectivePotential::value(double r) const {
    return R / (n * (n - 1.0)) * r * r + 2.0 * a / (n - 2.0) * std::pow(r, 2.0 - n);
}

double EffectivePotential::deriv(double r) const {
    return 2.0 * R / (n * (n - 1.0)) * r + (2.0 - n) * 2.0 * a / (n - 2.0) * std::pow(r, 1.0 - n);
}

double EffectivePotential::well_center() const {
    return std::pow(a * n * (n - 1.0) / R, 1.0 / n);
}

PeriodicWarp find_periodic_warp(int n, double R, double a, double amplitude,
                                const OdeOptions& opts) {
    PeriodicWarp out;
    out.params = {n, R, a};
    EffectivePotential V{n, R, a};
    if (!V.has_well()) {
        out.diagnostic = "effective potential has no interior well (need R > 0 and a > 0); "
                         "V'(1) = " +
                         std::to_string(R > 0.0 || a > 0.0 ? V.deriv(1.0) : 0.0);
        return out;
    }
    double rstar = V.well_center();
    if (amplitude <= 1.0) {
        // the constant-r solution sits at the well bottom
        out.found = true;
        out.period = 0.0;
        out.r_max = out.r_min = rstar;
        out.k = first_integrals({n, R, a}, rstar, 0.0).k;
        out.diagnostic = "amplitude <= 1: constant warp r = r*";
        out.r = Curve::constant(rstar);
        out.f = Curve::sine(std::sqrt(R / (n - 1.0)));
        return out;
    }

    double r0 = amplitude * rstar;
    out.k = V.value(r0);
    out.r_max = r0;

    // Small-oscillation period as the search scale.
    double t_harm = 2.0 * M_PI / std::sqrt(0.5 * std::fabs(V.deriv(rstar * 1.0001) -
                                                           V.deriv(rstar * 0.9999)) /
                                           (0.0002 * rstar));

    WarpOdeParams p{n, R, a};
    OdeSystem sys = warp_system(p);
    Trajectory probe = integrate_ode(sys, {r0, 0.0, 0.0, 1.0}, 0.0, 3.0 * t_harm, opts);

    // First two zeros of r' after the start: bottom then back to the top.
    std::vector<double> zeros;
    double step = t_harm / 200.0;
    double prev = probe.eval(step, 1, 0);
    for (double s = 2.0 * step; s < 3.0 * t_harm && zeros.size() < 2; s += step) {
        double cur = probe.eval(s, 1, 0);
        if (prev * cur <= 0.0 && prev != cur)
            zeros.push_back(brent_root([&](double t) { return probe.eval(t, 1, 0); }, s - step, s));
        prev = cur;
    }
    if (zeros.size() < 2) {
        out.diagnostic = "orbit did not close within the search window";
        return out;
    }
    double period = zeros[1];
    out.period = period;
    out.r_min = probe.eval(zeros[0], 0, 0);
    out.closure_error = std::fabs(probe.eval(period, 0, 0) - r0) +
                        std::fabs(probe.eval(period, 1, 0));

    // Re-integrate with margins so warped-metric stencils never leave the
    // covered span, then expose (r, f) as curves. f is proportional to r'
    // (substituting f = r' into the radial system closes it), normalized to
    // max |f| = 1.
    Trajectory fwd = integrate_ode(sys, {r0, 0.0, 0.0, 1.0}, 0.0, 1.35 * period, opts);
    Trajectory bwd = integrate_ode(sys, {r0, 0.0, 0.0, 1.0}, 0.0, -0.35 * period, opts);
    auto f_scale = 0.0;
    for (double s = 0.0; s <= period; s += period / 400.0)
        f_scale = std::max(f_scale, std::fabs(fwd.eval(s, 1, 0)));

    auto fwdp = std::make_shared<Trajectory>(std::move(fwd));
    auto bwdp = std::make_shared<Trajectory>(std::move(bwd));
    const double c = R / (n * (n - 1.0));
    auto state = [fwdp, bwdp](double s, int comp, int order) {
        return (s >= 0.0) ? fwdp->eval(s, comp, order) : bwdp->eval(s, comp, order);
    };
    auto rcurve = Curve([state, a, c, n](double s, int k) {
        switch (k) {
            case 0: return state(s, 0, 0);
            case 1: return state(s, 1, 0);
            case 2: {
                double r = state(s, 0, 0);
                return a * std::pow(r, 1.0 - n) - c * r;
            }
            default: {
                double r = state(s, 0, 0), rp = state(s, 1, 0);
                return ((1.0 - n) * a * std::pow(r, -static_cast<double>(n)) - c) * rp;
            }
        }
    });
    auto fcurve = Curve([state, a, c, n, f_scale](double s, int k) {
        double r = state(s, 0, 0), rp = state(s, 1, 0);
        double rpp = a * std::pow(r, 1.0 - n) - c * r;
        switch (k) {
            case 0: return rp / f_scale;
            case 1: return rpp / f_scale;
            case 2:
                return ((1.0 - n) * a * std::pow(r, -static_cast<double>(n)) - c) * rp / f_scale;
            default: {
                double t1 = (1.0 - n) * (-static_cast<double>(n)) * a *
                            std::pow(r, -static_cast<double>(n) - 1.0) * rp * rp;
                double t2 = ((1.0 - n) * a * std::pow(r, -static_cast<double>(n)) - c) * rpp;
                return (t1 + t2) / f_scale;
            }
        }
    });
    out.r = rcurve;
    out.f = fcurve;
    out.found = true;
    return out;
}

StaticModel periodic_warp_model(const PeriodicWarp& pw, std::string name) {
    if (!pw.found || pw.period <= 0.0) throw Error("periodic warp not available");
    const int n = pw.params.n;
    double lambda = (n - 2.0) * pw.k;
    FiberSpec fiber = make_einstein_fiber(n - 1, lambda);

    Chart base = Chart::line(0.0, pw.period, /*periodic=*/true);
    MetricField metric = make_warped_product(pw.r, fiber, n, base,
                                             name.empty() ? "periodic-warp" : name);
    StaticModel model;
    model.name = name.empty() ? "periodic-warp" : std::move(name);
    model.metric = metric;
    model.f = ScalarField::radial(metric.chart(), pw.f);
    model.kind = ModelKind::VacuumStatic;
    model.known_scalar = pw.params.R;
    model.closed = true;
    model.warped.valid = true;
    model.warped.base = base;
    model.warped.blocks = {WarpBlock{pw.r, fiber}};
    return model;
}

} // namespace staticlab
