#include "staticlab/statics.hpp"

#include <cmath>

#include "staticlab/errors.hpp"
#include "staticlab/ode.hpp"
#include "stencils.hpp"

namespace staticlab {

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::VacuumStatic: return "vacuum-static";
        case ModelKind::Static: return "static";
        case ModelKind::Cpe: return "cpe";
        default: return "unified";
    }
}

std::optional<ModelKind> model_kind_from_string(const std::string& s) {
    if (s == "vacuum-static") return ModelKind::VacuumStatic;
    if (s == "static") return ModelKind::Static;
    if (s == "cpe") return ModelKind::Cpe;
    if (s == "unified") return ModelKind::Unified;
    return std::nullopt;
}

double phi_value(const StaticModel& model, const Point& x) {
    const int n = model.dim();
    if (model.kind == ModelKind::Cpe && model.has_known_scalar()) {
        double R = model.known_scalar;
        return R * model.f(x) / (2.0 * (n - 1)) - R / (n * (n - 1.0));
    }
    if (model.kind == ModelKind::VacuumStatic && model.has_known_scalar()) {
        return model.known_scalar * model.f(x) / (2.0 * (n - 1));
    }
    CurvaturePoint c = curvature_at(model.metric, x);
    double tr_s = c.scalar * (n - 2.0) / (2.0 * (n - 1.0));
    double lap = laplacian(model.metric, model.f, x);
    return (model.f(x) * tr_s - lap) / n;
}

std::function<double(const Point&)> phi_field(const StaticModel& model) {
    return [&model](const Point& x) { return phi_value(model, x); };
}

namespace {

// Shared assembly: Hess f - (Ric - R/(n-1) g) f and the trace pieces.
struct EquationParts {
    int n;
    Matrix g;
    TensorValue hess;
    Matrix ricci;
    double scalar;
    double lap;
    double fv;
};

EquationParts equation_parts(const MetricField& M, const ScalarField& f, const Point& x) {
    EquationParts p;
    CurvaturePoint c = curvature_at(M, x);
    p.n = c.n;
    p.g = c.g;
    p.ricci = c.ricci;
    p.scalar = c.scalar;
    p.hess = hessian(M, f, x);
    p.lap = 0.0;
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j) p.lap += c.ginv(i, j) * p.hess(i, j);
    p.fv = f(x);
    return p;
}

} // namespace

TensorValue static_residual(const MetricField& M, const ScalarField& f, const Point& x) {
    EquationParts p = equation_parts(M, f, x);
    const int n = p.n;
    TensorValue r(n, {Variance::Lower, Variance::Lower});
    double c1 = p.scalar / (n - 1.0);
    double c2 = (c1 * p.fv + p.lap) / n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = p.hess(i, j) - (p.ricci(i, j) - c1 * p.g(i, j)) * p.fv - c2 * p.g(i, j);
    return r;
}

TensorValue vacuum_static_residual(const MetricField& M, const ScalarField& f, const Point& x) {
    EquationParts p = equation_parts(M, f, x);
    const int n = p.n;
    TensorValue r(n, {Variance::Lower, Variance::Lower});
    double c1 = p.scalar / (n - 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = p.hess(i, j) - (p.ricci(i, j) - c1 * p.g(i, j)) * p.fv;
    return r;
}

TensorValue cpe_residual(const MetricField& M, const ScalarField& f, const Point& x) {
    EquationParts p = equation_parts(M, f, x);
    const int n = p.n;
    TensorValue r(n, {Variance::Lower, Variance::Lower});
    double c1 = p.scalar / (n - 1.0);
    double c2 = p.scalar / (n * (n - 1.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = p.hess(i, j) - (p.ricci(i, j) - c1 * p.g(i, j)) * p.fv - c2 * p.g(i, j);
    return r;
}

TensorValue unified_residual(const MetricField& M, const ScalarField& f, const Point& x) {
    EquationParts p = equation_parts(M, f, x);
    const int n = p.n;
    double cR = p.scalar / (2.0 * (n - 1.0));
    double tr_s = p.scalar * (n - 2.0) / (2.0 * (n - 1.0));
    double phi = (p.fv * tr_s - p.lap) / n;
    TensorValue r(n, {Variance::Lower, Variance::Lower});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double schouten = p.ricci(i, j) - cR * p.g(i, j);
            r(i, j) = p.fv * schouten - p.hess(i, j) - phi * p.g(i, j);
        }
    return r;
}

TensorValue unified_residual(const StaticModel& model, const Point& x) {
    return unified_residual(model.metric, model.f, x);
}

PhiPsi phi_psi(const StaticModel& model, const Point& x) {
    const MetricField& M = model.metric;
    const ScalarField& f = model.f;
    const int n = M.dim();

    TensorValue hess = hessian(M, f, x);
    std::vector<double> fup = gradient_upper(M, f, x);
    ScalarJet sj = f.jet(x, 1);
    Matrix ginv = M.jet(x, 0).ginv;
    double lap = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) lap += ginv(i, j) * hess(i, j);

    PhiPsi out;
    out.phi = phi_value(model, x);
    out.psi.assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double hf = 0.0;
        for (int l = 0; l < n; ++l) hf += hess(j, l) * fup[l];
        out.psi[j] = hf - lap * sj.d1(j);
    }

    // General form: -(n-2) f Phi_j + f_{j,l} f^l + n Phi f_j, with Phi_j
    // obtained by differencing the Phi field.
    auto phi_fn = phi_field(model);
    out.psi_general.assign(n, 0.0);
    std::vector<double> one(1), scratch(1);
    detail::VecFn fn = [&](const Point& y, std::vector<double>& v) { v[0] = phi_fn(y); };
    double fv = f(x);
    for (int j = 0; j < n; ++j) {
        double h = detail::clamp_step(M.chart(), x, j, 1.0e-3 * M.chart().scale(j), 2);
        detail::apply_stencil(fn, x, j, h, detail::d1_o4(), one, scratch);
        double phi_j = one[0];
        double hf = 0.0;
        for (int l = 0; l < n; ++l) hf += hess(j, l) * fup[l];
        out.psi_general[j] = -(n - 2.0) * fv * phi_j + hf + n * out.phi * sj.d1(j);
    }

    out.max_diff = 0.0;
    for (int j = 0; j < n; ++j)
        out.max_diff = std::max(out.max_diff, std::fabs(out.psi[j] - out.psi_general[j]));
    return out;
}

DComparison d_closed_form(const StaticModel& model, const Point& x) {
    const MetricField& M = model.metric;
    const int n = M.dim();
    DComparison out{d_tensor(M, model.f, x),
                    TensorValue(n, {Variance::Lower, Variance::Lower, Variance::Lower}), 0.0};

    PhiPsi pp = phi_psi(model, x);
    TensorValue hess = hessian(M, model.f, x);
    ScalarJet sj = model.f.jet(x, 1);
    Matrix g = M.jet(x, 0).g;

    // D_{ijk} = ((n-1)(f_{i,k} f_j - f_{j,k} f_i) + Psi_j g_{ik} - Psi_i g_{jk}) / (n-2)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = (n - 1.0) * (hess(i, k) * sj.d1(j) - hess(j, k) * sj.d1(i));
                v += pp.psi_general[j] * g(i, k) - pp.psi_general[i] * g(j, k);
                out.closed_form(i, j, k) = v / (n - 2.0);
            }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                out.max_diff = std::max(
                    out.max_diff, std::fabs(out.direct(i, j, k) - out.closed_form(i, j, k)));
    return out;
}

double bach_rewrite_residual(const StaticModel& model, const Point& x) {
    const MetricField& M = model.metric;
    const ScalarField& f = model.f;
    const int n = M.dim();
    double fv = f(x);
    if (std::fabs(fv) < model.f_min)
        throw Error("bach rewrite needs |f| >= f_min at the evaluation point");

    FieldSteps steps = FieldSteps::for_metric(M);
    CurvaturePoint cp = curvature_at(M, x);
    TensorValue c = cotton(M, x);
    std::vector<double> fup = gradient_upper(M, f, x);

    // nabla^i (D_{ijk} / f^2)
    TensorFieldFn dfield = [&M, &f](const Point& y) {
        TensorValue d = d_tensor(M, f, y);
        double fy = f(y);
        d *= 1.0 / (fy * fy);
        return d;
    };
    TensorValue divd = covariant_divergence(M, dfield, x, 0, steps.div_frac);

    TensorValue lhs = bach(M, x);
    double worst = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            // C_{lkj} f^l / f
            double cterm = 0.0;
            for (int l = 0; l < n; ++l) cterm += c(l, k, j) * fup[l];
            double wterm = 0.0;
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l) wterm += cp.weyl(i, j, k, l) * fup[i] * fup[l];
            double rhs = -divd(j, k) + (n - 3.0) / (n - 2.0) * cterm / fv + wterm / (fv * fv);
            worst = std::max(worst, std::fabs((n - 2.0) * lhs(j, k) - rhs));
        }
    return worst;
}

StaticModel manufacture_static_doubly_warped(const Curve& a, const FiberSpec& fiber1,
                                             const FiberSpec& fiber2, int n, double f0,
                                             double df0, double b0, double db0, double s_lo,
                                             double s_hi, const ManufactureOptions& opts,
                                             std::string name) {
    const int m1 = fiber1.dim, m2 = fiber2.dim;
    if (1 + m1 + m2 != n) throw ConfigError("fiber dimensions must add up to n-1");
    if (opts.kind != ManufactureKind::Unified)
        throw ConfigError("doubly-warped manufacture supports the unified reduction only");
    if (f0 * f0 + df0 * df0 <= 0.0)
        throw ConfigError("manufacture: initial data for f must not vanish");
    const double l1 = fiber1.einstein_constant, l2 = fiber2.einstein_constant;

    // State y = (f, f', b, b'). With P1 = a'/a, P2 = b'/b:
    //   b''/b = (P1 - P2) f'/f - l1/a^2 + l2/b^2 + a''/a
    //           + (m1-1) P1^2 - (m2-1) P2^2 + (m2-m1) P1 P2
    //   f''   = P1 f' + f [-(m1-1) a''/a - m2 b''/b - l1/a^2
    //           + (m1-1) P1^2 + m2 P1 P2]
    // which is the trace-free part of fS = Hess f + Phi g on this ansatz.
    auto rhs_impl = [a, l1, l2, m1, m2](double s, const double* y, double* dy) {
        double f = y[0], fp = y[1], b = y[2], bp = y[3];
        double a0 = a(s, 0), a1 = a(s, 1), a2 = a(s, 2);
        double P1 = a1 / a0, P2 = bp / b;
        double bpp_over_b = (P1 - P2) * fp / f - l1 / (a0 * a0) + l2 / (b * b) + a2 / a0 +
                            (m1 - 1.0) * P1 * P1 - (m2 - 1.0) * P2 * P2 +
                            (m2 - m1) * P1 * P2;
        double fpp = P1 * fp + f * (-(m1 - 1.0) * a2 / a0 - m2 * bpp_over_b -
                                    l1 / (a0 * a0) + (m1 - 1.0) * P1 * P1 + m2 * P1 * P2);
        dy[0] = fp;
        dy[1] = fpp;
        dy[2] = bp;
        dy[3] = bpp_over_b * b;
    };

    OdeSystem sys;
    sys.dim = 4;
    sys.rhs = rhs_impl;
    sys.rhs2 = [rhs_impl](double s, const double* y, double* d2) {
        // exact second derivatives for f and b; one-sided estimate for the
        // remaining components (interpolation only)
        double dy[4];
        rhs_impl(s, y, dy);
        const double del = 1.0e-6;
        double yt[4], dyt[4];
        for (int i = 0; i < 4; ++i) yt[i] = y[i] + del * dy[i];
        rhs_impl(s + del, yt, dyt);
        d2[0] = dy[1];
        d2[1] = (dyt[1] - dy[1]) / del;
        d2[2] = dy[3];
        d2[3] = (dyt[3] - dy[3]) / del;
    };

    OdeOptions oo;
    oo.rtol = opts.rtol;
    oo.atol = opts.atol;
    Trajectory tr = integrate_ode(sys, {f0, df0, b0, db0}, s_lo, s_hi, oo);

    // f and b as curves: orders 0/1 from the dense output, order 2 from the
    // equations themselves, order 3 by differencing the order-2 formula.
    auto traj = std::make_shared<Trajectory>(std::move(tr));
    auto state_at = [traj](double s, double* y) {
        y[0] = traj->eval(s, 0, 0);
        y[1] = traj->eval(s, 1, 0);
        y[2] = traj->eval(s, 2, 0);
        y[3] = traj->eval(s, 3, 0);
    };
    auto deriv2 = [rhs_impl, state_at](double s, int comp) {
        double y[4], dy[4];
        state_at(s, y);
        rhs_impl(s, y, dy);
        return comp == 0 ? dy[1] : dy[3];
    };
    Curve fcurve([traj, deriv2](double s, int k) {
        switch (k) {
            case 0: return traj->eval(s, 0, 0);
            case 1: return traj->eval(s, 0, 1);
            case 2: return deriv2(s, 0);
            default: {
                const double h = 1.0e-5;
                return (deriv2(s + h, 0) - deriv2(s - h, 0)) / (2.0 * h);
            }
        }
    });
    Curve bcurve([traj, deriv2](double s, int k) {
        switch (k) {
            case 0: return traj->eval(s, 2, 0);
            case 1: return traj->eval(s, 2, 1);
            case 2: return deriv2(s, 1);
            default: {
                const double h = 1.0e-5;
                return (deriv2(s + h, 1) - deriv2(s - h, 1)) / (2.0 * h);
            }
        }
    });

    Chart base = Chart::line(s_lo, s_hi, opts.periodic);
    std::vector<WarpBlock> blocks = {WarpBlock{a, fiber1}, WarpBlock{bcurve, fiber2}};
    MetricField metric = make_multiply_warped_product(blocks, base, name);

    StaticModel model;
    model.name = std::move(name);
    model.metric = metric;
    model.f = ScalarField::radial(metric.chart(), fcurve);
    model.kind = ModelKind::Unified;
    model.closed = opts.periodic;
    model.warped.valid = true;
    model.warped.base = base;
    model.warped.blocks = blocks;
    {
        double fmax = 0.0;
        for (int i = 0; i <= 128; ++i)
            fmax = std::max(fmax, std::fabs(fcurve(s_lo + (s_hi - s_lo) * i / 128.0, 0)));
        model.f_degenerate = fmax < model.f_min;
    }

    if (opts.validate_tol > 0.0) {
        auto pts = sample_points(metric.chart(), 24, 4321u, metric.sample_margin_frac());
        double worst = 0.0;
        for (const auto& x : pts) worst = std::max(worst, unified_residual(model, x).max_abs());
        if (worst > opts.validate_tol)
            throw Error("manufactured model residual " + std::to_string(worst) +
                        " exceeds tolerance");
    }
    return model;
}

double warped_scalar_curvature(const Curve& r, const FiberSpec& fiber, int n, double s) {
    double r0 = r(s, 0), r1 = r(s, 1), r2 = r(s, 2);
    return fiber.scalar_curvature / (r0 * r0) - 2.0 * (n - 1.0) * r2 / r0 -
           (n - 1.0) * (n - 2.0) * (r1 / r0) * (r1 / r0);
}

StaticModel manufacture_static_warped(const Curve& r, const FiberSpec& fiber, int n, double f0,
                                      double df0, double s_lo, double s_hi,
                                      const ManufactureOptions& opts, std::string name) {
    if (f0 * f0 + df0 * df0 <= 0.0)
        throw ConfigError("manufacture: initial data for f must not vanish");
    Chart base = Chart::line(s_lo, s_hi, opts.periodic);
    MetricField metric = make_warped_product(r, fiber, n, base, name);

    // Polar-type warps vanish at interval ends; the reduced equation has a
    // removable singularity there, so the integration window is nudged in.
    double s_a = s_lo, s_b = s_hi;
    {
        double eps = 1e-9 * (s_hi - s_lo);
        if (r(s_lo, 0) < 1e-12) s_a += eps;
        if (r(s_hi, 0) < 1e-12) s_b -= eps;
    }

    // Radial coefficient of the reduced equation.
    // Unified: f'' = (r'/r) f' + (n/(n-1)) (S_ss - trS/n) f
    // Vacuum:  f'' = (R_ss - R/(n-1)) f   with R constant.
    const double RE = fiber.scalar_curvature;
    auto ricci_ss = [r, n](double s) { return -(n - 1.0) * r(s, 2) / r(s, 0); };
    auto scal = [r, RE, n](double s) {
        double r0 = r(s, 0), r1 = r(s, 1), r2 = r(s, 2);
        return RE / (r0 * r0) - 2.0 * (n - 1.0) * r2 / r0 -
               (n - 1.0) * (n - 2.0) * (r1 / r0) * (r1 / r0);
    };

    std::function<double(double)> coef_f, coef_fp;
    if (opts.kind == ManufactureKind::Vacuum) {
        // Constant-R check over the span.
        double R0 = scal(0.5 * (s_lo + s_hi));
        for (int i = 0; i <= 64; ++i) {
            double s = s_lo + (i + 0.5) / 65.0 * (s_hi - s_lo);
            if (std::fabs(scal(s) - R0) > 1e-8 * (1.0 + std::fabs(R0)))
                throw Error("vacuum manufacture requires constant scalar curvature");
        }
        coef_f = [ricci_ss, R0, n](double s) { return ricci_ss(s) - R0 / (n - 1.0); };
        coef_fp = [](double) { return 0.0; };
    } else {
        coef_f = [ricci_ss, scal, n](double s) {
            double R = scal(s);
            double S_ss = ricci_ss(s) - R / (2.0 * (n - 1.0));
            double trS_over_n = R * (n - 2.0) / (2.0 * (n - 1.0) * n);
            return (n / (n - 1.0)) * (S_ss - trS_over_n);
        };
        coef_fp = [r](double s) { return r(s, 1) / r(s, 0); };
    }

    OdeSystem sys;
    sys.dim = 2;
    sys.rhs = [coef_f, coef_fp](double s, const double* y, double* dy) {
        dy[0] = y[1];
        dy[1] = coef_fp(s) * y[1] + coef_f(s) * y[0];
    };
    // y'' for dense output; the coefficient derivative is taken numerically
    // with a wide, smooth-function-friendly step (only feeds interpolation).
    sys.rhs2 = [coef_f, coef_fp](double s, const double* y, double* d2) {
        const double h = 1.0e-5;
        double a = coef_fp(s), b = coef_f(s);
        double ap = (coef_fp(s + h) - coef_fp(s - h)) / (2.0 * h);
        double bp = (coef_f(s + h) - coef_f(s - h)) / (2.0 * h);
        double f1 = y[1];
        double f2 = a * y[1] + b * y[0];
        d2[0] = f2;
        d2[1] = ap * f1 + a * f2 + bp * y[0] + b * f1;
    };

    OdeOptions oo;
    oo.rtol = opts.rtol;
    oo.atol = opts.atol;
    Trajectory tr = integrate_ode(sys, {f0, df0}, s_a, s_b, oo);
    Curve fcurve = tr.component_curve(0).as_curve();
    double fmax = 0.0;
    for (int i = 0; i <= 128; ++i)
        fmax = std::max(fmax, std::fabs(fcurve(s_a + (s_b - s_a) * i / 128.0, 0)));

    StaticModel model;
    model.name = std::move(name);
    model.metric = metric;
    model.f = ScalarField::radial(metric.chart(), fcurve);
    model.kind = (opts.kind == ManufactureKind::Vacuum) ? ModelKind::VacuumStatic
                                                        : ModelKind::Unified;
    if (opts.kind == ManufactureKind::Vacuum) model.known_scalar = scal(0.5 * (s_lo + s_hi));
    model.closed = opts.periodic;
    model.warped.valid = true;
    model.warped.base = base;
    model.warped.blocks = {WarpBlock{r, fiber}};
    model.f_degenerate = fmax < model.f_min;

    if (opts.validate_tol > 0.0) {
        auto pts = sample_points(metric.chart(), 24, 1234u, metric.sample_margin_frac());
        double worst = 0.0;
        for (const auto& x : pts) worst = std::max(worst, unified_residual(model, x).max_abs());
        if (worst > opts.validate_tol)
            throw Error("manufactured model residual " + std::to_string(worst) +
                        " exceeds tolerance");
    }
    return model;
}

} // namespace staticlab
