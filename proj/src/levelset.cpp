#include "staticlab/levelset.hpp"

#include <cmath>

#include "staticlab/curvature.hpp"
#include "staticlab/errors.hpp"
#include "staticlab/ode.hpp"
#include "stencils.hpp"

namespace staticlab {

namespace {

void require_warped_radial(const StaticModel& model) {
    if (!model.warped.valid || !model.f.is_radial())
        throw Error("level-set machinery needs a warped model with radial f");
    if (model.constant_f) throw RegularValueError(0.0);
}

// A representative point on the slice: fiber coordinates at chart centers.
Point slice_point(const StaticModel& model, double s) {
    const Chart& chart = model.metric.chart();
    Point x(chart.dim());
    x[0] = s;
    for (int k = 1; k < chart.dim(); ++k) x[k] = 0.5 * (chart.lo(k) + chart.hi(k));
    return x;
}

// Orthonormal frame with e_n = grad f / |grad f| first, tangent frame after.
struct Frame {
    std::vector<double> en;                 // e_n^i
    std::vector<std::vector<double>> tang;  // e_alpha^i
};

Frame build_frame(const Matrix& g, const std::vector<double>& grad_up) {
    const int n = g.size();
    Frame fr;
    auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += g(i, j) * u[i] * v[j];
        return s;
    };
    double w = std::sqrt(dot(grad_up, grad_up));
    fr.en.resize(n);
    for (int i = 0; i < n; ++i) fr.en[i] = grad_up[i] / w;

    for (int k = 0; k < n && static_cast<int>(fr.tang.size()) < n - 1; ++k) {
        std::vector<double> v(n, 0.0);
        v[k] = 1.0;
        double c = dot(v, fr.en);
        for (int i = 0; i < n; ++i) v[i] -= c * fr.en[i];
        for (const auto& t : fr.tang) {
            double d = dot(v, t);
            for (int i = 0; i < n; ++i) v[i] -= d * t[i];
        }
        double nv = std::sqrt(std::max(dot(v, v), 0.0));
        if (nv < 1e-8) continue;
        for (int i = 0; i < n; ++i) v[i] /= nv;
        fr.tang.push_back(std::move(v));
    }
    if (static_cast<int>(fr.tang.size()) != n - 1)
        throw Error("frame construction failed on slice");
    return fr;
}

// Pointwise mean curvature of the level set of f through x.
double mean_curvature_at(const StaticModel& model, const Point& x) {
    const MetricField& M = model.metric;
    const int n = M.dim();
    Matrix ginv = M.jet(x, 0).ginv;
    TensorValue hess = hessian(M, model.f, x);
    std::vector<double> fup = gradient_upper(M, model.f, x);
    ScalarJet sj = model.f.jet(x, 1);
    double W = 0.0;
    for (int i = 0; i < n; ++i) W += fup[i] * sj.d1(i);
    double lap = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) lap += ginv(i, j) * hess(i, j);
    double fnn = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) fnn += hess(i, j) * fup[i] * fup[j] / W;
    return (fnn - lap) / std::sqrt(W);
}

} // namespace

std::vector<double> level_roots(const StaticModel& model, double c) {
    require_warped_radial(model);
    const Chart& base = model.warped.base;
    const Curve& f = model.f.radial_curve();
    const int scan = 4000;
    std::vector<double> roots;
    double prev_s = base.lo(0), prev_v = f(prev_s, 0) - c;
    for (int i = 1; i <= scan; ++i) {
        double s = base.lo(0) + base.extent(0) * i / scan;
        double v = f(s, 0) - c;
        if (prev_v == 0.0) roots.push_back(prev_s);
        else if (prev_v * v < 0.0)
            roots.push_back(brent_root([&](double t) { return f(t, 0) - c; }, prev_s, s));
        prev_s = s;
        prev_v = v;
    }
    return roots;
}

MetricField slice_metric(const StaticModel& model, double s) {
    require_warped_radial(model);
    const auto& blocks = model.warped.blocks;
    MetricField induced = scaled_metric(blocks[0].fiber.metric,
                                        std::pow(blocks[0].warp(s, 0), 2));
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        MetricField next = scaled_metric(blocks[i].fiber.metric,
                                         std::pow(blocks[i].warp(s, 0), 2));
        induced = product_metric(induced, next, "slice");
    }
    return induced;
}

SliceData slice_geometry_at_s(const StaticModel& model, double s) {
    require_warped_radial(model);
    const MetricField& M = model.metric;
    const int n = M.dim();
    Point x = slice_point(model, s);

    CurvaturePoint cp = curvature_at(M, x);
    TensorValue hess = hessian(M, model.f, x);
    std::vector<double> fup = gradient_upper(M, model.f, x);
    ScalarJet sj = model.f.jet(x, 1);

    double W = 0.0;
    for (int i = 0; i < n; ++i) W += fup[i] * sj.d1(i);
    if (W < 1e-12) throw RegularValueError(std::sqrt(std::max(W, 0.0)));

    Frame fr = build_frame(cp.g, fup);
    auto frame_h = [&](const std::vector<double>& u, const std::vector<double>& v) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sum += hess(i, j) * u[i] * v[j];
        return sum;
    };

    SliceData out;
    out.s_value = s;
    out.level = model.f(x);
    out.W = W;
    double sqw = std::sqrt(W);

    double lap = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) lap += cp.ginv(i, j) * hess(i, j);
    double fnn = frame_h(fr.en, fr.en);
    out.H = (fnn - lap) / sqw;
    out.grad_n_W2 = 4.0 * W * fnn * fnn;

    const int m = n - 1;
    out.h_frame.assign(static_cast<std::size_t>(m) * m, 0.0);
    double a2 = 0.0, umb2 = 0.0, gsw2 = 0.0;
    for (int al = 0; al < m; ++al) {
        double fna = frame_h(fr.en, fr.tang[al]);
        gsw2 += 4.0 * W * fna * fna;
        for (int be = 0; be < m; ++be) {
            double fab = frame_h(fr.tang[al], fr.tang[be]);
            double hab = -fab / sqw;
            out.h_frame[static_cast<std::size_t>(al) * m + be] = hab;
            a2 += hab * hab;
            double tracefree = hab - (al == be ? out.H / m : 0.0);
            umb2 += tracefree * tracefree;
        }
    }
    out.A2 = a2;
    out.umbilic_dev2 = umb2;
    out.grad_sigma_W2 = gsw2;

    double rnn = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rnn += cp.ricci(i, j) * fr.en[i] * fr.en[j];
    out.ricci_nn = rnn;

    MetricField induced = slice_metric(model, s);
    Point y(x.begin() + 1, x.end());
    out.slice_scalar = curvature_at(induced, y).scalar;
    return out;
}

SliceData slice_geometry(const StaticModel& model, double c) {
    std::vector<double> roots = level_roots(model, c);
    const Curve& f = model.f.radial_curve();
    double best_grad = 0.0;
    for (double s : roots) {
        double g = std::fabs(f(s, 1));
        best_grad = std::max(best_grad, g);
        if (g >= 1e-6) return slice_geometry_at_s(model, s);
    }
    throw RegularValueError(best_grad);
}

LevelsetIdentity levelset_identity(const StaticModel& model, double c) {
    SliceData sd = slice_geometry(model, c);
    const MetricField& M = model.metric;
    const int n = M.dim();
    Point x = slice_point(model, sd.s_value);
    CurvaturePoint cp = curvature_at(M, x);
    TensorValue d = d_tensor(M, model.f, x);
    double lhs = d.norm2(cp.ginv);
    double rhs = 2.0 * (n - 1.0) * (n - 1.0) / ((n - 2.0) * (n - 2.0)) * sd.W * sd.W *
                     sd.umbilic_dev2 +
                 (n - 1.0) / (2.0 * (n - 2.0)) * sd.grad_sigma_W2;
    return {lhs, rhs, std::fabs(lhs - rhs) / (1.0 + std::fabs(lhs))};
}

SliceConstancy constancy_checks(const StaticModel& model, double c, int samples, unsigned seed) {
    SliceData sd = slice_geometry(model, c);
    const MetricField& M = model.metric;
    const int n = M.dim();

    // sample fiber points at fixed s
    Chart fiber_chart = slice_metric(model, sd.s_value).chart();
    auto fiber_pts = sample_points(fiber_chart, samples, seed, 0.08);

    std::vector<double> vR, vLap, vH, vRS, vRnn;
    MetricField induced = slice_metric(model, sd.s_value);
    for (const auto& y : fiber_pts) {
        Point x(n);
        x[0] = sd.s_value;
        for (int k = 0; k < n - 1; ++k) x[k + 1] = y[k];
        CurvaturePoint cp = curvature_at(M, x);
        vR.push_back(cp.scalar);
        vLap.push_back(laplacian(M, model.f, x));
        vH.push_back(mean_curvature_at(model, x));
        vRS.push_back(curvature_at(induced, y).scalar);
        std::vector<double> fup = gradient_upper(M, model.f, x);
        ScalarJet sj = model.f.jet(x, 1);
        double W = 0.0;
        for (int i = 0; i < n; ++i) W += fup[i] * sj.d1(i);
        double rnn = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rnn += cp.ricci(i, j) * fup[i] * fup[j] / W;
        vRnn.push_back(rnn);
    }
    auto spread = [](const std::vector<double>& v) {
        double lo = v[0], hi = v[0];
        for (double t : v) {
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        return hi - lo;
    };
    return {spread(vR), spread(vLap), spread(vH), spread(vRS), spread(vRnn)};
}

GaussCodazzi gauss_codazzi_residuals(const StaticModel& model, double c) {
    SliceData sd = slice_geometry(model, c);
    const MetricField& M = model.metric;
    const int n = M.dim();
    Point x = slice_point(model, sd.s_value);
    CurvaturePoint cp = curvature_at(M, x);

    double gauss = sd.slice_scalar -
                   (cp.scalar - 2.0 * sd.ricci_nn + sd.H * sd.H - sd.A2);

    // Codazzi: R(e_a, e_n) = (n-2)/(n-1) grad^S_a H on umbilic slices.
    std::vector<double> fup = gradient_upper(M, model.f, x);
    Frame fr = build_frame(cp.g, fup);
    std::vector<double> one(1), scratch(1);
    detail::VecFn hfn = [&](const Point& y, std::vector<double>& v) {
        v[0] = mean_curvature_at(model, y);
    };
    double worst = 0.0;
    for (const auto& ea : fr.tang) {
        double ran = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ran += cp.ricci(i, j) * ea[i] * fr.en[j];
        // tangential derivative of H along e_a
        double dh = 0.0;
        for (int k = 0; k < n; ++k) {
            if (std::fabs(ea[k]) < 1e-14) continue;
            double h = detail::clamp_step(M.chart(), x, k, 1e-4 * M.chart().scale(k), 2);
            detail::apply_stencil(hfn, x, k, h, detail::d1_o4(), one, scratch);
            dh += ea[k] * one[0];
        }
        worst = std::max(worst, std::fabs(ran - (n - 2.0) / (n - 1.0) * dh));
    }
    return {std::fabs(gauss), worst};
}

WeylNormalCheck weyl_normal_check(const StaticModel& model, double c, double d_tol,
                                  double bach_tol) {
    WeylNormalCheck out;
    SliceData sd = slice_geometry(model, c);
    const MetricField& M = model.metric;
    const int n = M.dim();

    auto pts = sample_points(M.chart(), 6, 11u, M.sample_margin_frac());
    pts.push_back(slice_point(model, sd.s_value));
    for (auto& x : pts) {
        out.max_d = std::max(out.max_d, d_tensor(M, model.f, x).max_abs());
        out.max_bach = std::max(out.max_bach, bach(M, x).max_abs());
    }
    out.applicable = (out.max_d <= d_tol) && (out.max_bach <= bach_tol);
    if (!out.applicable) return out;

    Point x = slice_point(model, sd.s_value);
    CurvaturePoint cp = curvature_at(M, x);
    std::vector<double> fup = gradient_upper(M, model.f, x);
    Frame fr = build_frame(cp.g, fup);
    double worst = 0.0;
    // frame components W(e_n, u, v, e_n) over all frame vectors u, v
    std::vector<std::vector<double>> frame = fr.tang;
    frame.push_back(fr.en);
    for (const auto& u : frame)
        for (const auto& v : frame) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l)
                            sum += cp.weyl(i, j, k, l) * fr.en[i] * u[j] * v[k] * fr.en[l];
            worst = std::max(worst, std::fabs(sum));
        }
    out.value = worst;
    return out;
}

EinsteinSlice einstein_slice_check(const StaticModel& model, double c) {
    SliceData sd = slice_geometry(model, c);
    MetricField induced = slice_metric(model, sd.s_value);
    const int m = induced.dim();
    auto pts = sample_points(induced.chart(), 8, 23u, 0.08);
    double dev = 0.0;
    for (const auto& y : pts) {
        CurvaturePoint cp = curvature_at(induced, y);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                dev = std::max(dev, std::fabs(cp.ricci(i, j) -
                                              cp.scalar / m * cp.g(i, j)));
    }

    // Einstein constant of the *unscaled* fiber: Ric_E = lambda g_E. The
    // slice shares it since Ricci is scale-invariant.
    double lambda = 0.0;
    if (model.warped.valid && model.warped.blocks.size() == 1) {
        const MetricField& fm = model.warped.blocks[0].fiber.metric;
        auto fpts = sample_points(fm.chart(), 4, 5u, 0.08);
        CurvaturePoint cp = curvature_at(fm, fpts[0]);
        lambda = cp.scalar / fm.dim();
    }
    return {dev, lambda};
}

} // namespace staticlab
