#include "staticlab/metric.hpp"
#include "staticlab/scalar_field.hpp"

#include <cmath>
#include <random>

#include "staticlab/errors.hpp"
#include "stencils.hpp"

using staticlab::detail::apply_stencil;
using staticlab::detail::Stencil;
using staticlab::detail::VecFn;

namespace staticlab {

double DiffEngine::polynomial_exactness_error() {
    // Polynomials of degree <= stencil accuracy must be differentiated to
    // roundoff. Step chosen large enough that cancellation is negligible.
    const double h = 0.05;
    const double x0 = 0.37;
    auto poly = [](double x, int deg) {
        double v = 0.0;
        for (int p = deg; p >= 0; --p) v = v * x + (0.3 + 0.1 * p);
        return v;
    };
    auto dpoly = [](double x, int deg, int order) {
        double v = 0.0;
        for (int p = deg; p >= order; --p) {
            double c = 0.3 + 0.1 * p;
            for (int q = 0; q < order; ++q) c *= (p - q);
            v += c * std::pow(x, p - order);
        }
        return v;
    };
    double worst = 0.0;
    auto run = [&](const Stencil& st, int deg) {
        double acc = 0.0;
        for (const auto& [off, w] : st.taps) acc += w * poly(x0 + off * h, deg);
        acc /= std::pow(h, st.order);
        worst = std::max(worst, std::fabs(acc - dpoly(x0, deg, st.order)));
    };
    for (int deg = 0; deg <= 4; ++deg) {
        run(detail::d1_o4(), deg);
        run(detail::d2_o4(), deg);
    }
    for (int deg = 0; deg <= 2; ++deg) {
        run(detail::d1_o2(), deg);
        run(detail::d2_o2(), deg);
        run(detail::d3_o2(), deg);
    }
    for (int deg = 0; deg <= 4; ++deg) run(detail::d3_o2(), deg);
    return worst;
}

MetricField::MetricField(Chart chart, Components comp, std::string name)
    : chart_(std::move(chart)), comp_(std::move(comp)), name_(std::move(name)) {}

void MetricField::set_analytic_derivatives(DerivFn d1, DerivFn d2, DerivFn d3) {
    d1_ = std::move(d1);
    d2_ = std::move(d2);
    d3_ = std::move(d3);
}

Matrix MetricField::value(const Point& x) const {
    chart_.require_interior(x);
    const int n = chart_.dim();
    Matrix g(n);
    comp_(x, g);
    double scale = std::max(1.0, g.max_abs());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::fabs(g(i, j) - g(j, i)) > 1e-9 * scale)
                throw Error("metric components are not symmetric");
    if (!g.positive_definite()) throw DegenerateMetricError(x);
    return g;
}

double MetricField::det(const Point& x) const {
    double d = 0.0;
    Matrix g = value(x);
    g.positive_definite(&d);
    return d;
}

double MetricField::sqrt_det(const Point& x) const { return std::sqrt(det(x)); }

MetricJet MetricField::jet(const Point& x, int order) const {
    MetricJet out;
    const int n = chart_.dim();
    out.n = n;
    out.g = value(x);
    out.g.positive_definite(&out.det);
    out.ginv = out.g.inverse();
    if (order >= 1) {
        out.d1.resize(static_cast<std::size_t>(n) * n * n);
        if (d1_) d1_(x, out.d1);
        else fd_first(x, out.d1);
    }
    if (order >= 2) {
        out.d2.resize(static_cast<std::size_t>(n) * n * n * n);
        if (d2_) d2_(x, out.d2);
        else fd_second(x, out.d2);
    }
    if (order >= 3) {
        out.d3.resize(static_cast<std::size_t>(n) * n * n * n * n);
        if (d3_) d3_(x, out.d3);
        else fd_third(x, out.d3);
    }
    return out;
}

MetricField MetricField::finite_difference_mode() const {
    MetricField m(chart_, comp_, name_ + "[fd]");
    m.engine_ = engine_;
    return m;
}

void MetricField::fd_first(const Point& x, std::vector<double>& out) const {
    const int n = chart_.dim();
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    std::vector<double> block(nn), scratch(nn);
    Matrix g(n);
    VecFn comp = [&](const Point& y, std::vector<double>& v) {
        comp_(y, g);
        std::copy(g.data(), g.data() + nn, v.begin());
    };
    for (int k = 0; k < n; ++k) {
        double h = engine_.h12_frac * chart_.scale(k);
        apply_stencil(comp, x, k, h, detail::d1_o4(), block, scratch);
        std::copy(block.begin(), block.end(), out.begin() + k * nn);
    }
}

void MetricField::fd_second(const Point& x, std::vector<double>& out) const {
    const int n = chart_.dim();
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    std::vector<double> block(nn), scratch(nn);
    Matrix g(n);
    VecFn comp = [&](const Point& y, std::vector<double>& v) {
        comp_(y, g);
        std::copy(g.data(), g.data() + nn, v.begin());
    };
    for (int k = 0; k < n; ++k) {
        double hk = engine_.h12_frac * chart_.scale(k);
        for (int l = k; l < n; ++l) {
            double hl = engine_.h12_frac * chart_.scale(l);
            if (k == l) {
                apply_stencil(comp, x, k, hk, detail::d2_o4(), block, scratch);
            } else {
                VecFn inner = [&](const Point& y, std::vector<double>& v) {
                    std::vector<double> b(nn), s(nn);
                    apply_stencil(comp, y, l, hl, detail::d1_o4(), b, s);
                    v = b;
                };
                apply_stencil(inner, x, k, hk, detail::d1_o4(), block, scratch);
            }
            std::copy(block.begin(), block.end(), out.begin() + (static_cast<std::size_t>(k) * n + l) * nn);
            if (l != k)
                std::copy(block.begin(), block.end(),
                          out.begin() + (static_cast<std::size_t>(l) * n + k) * nn);
        }
    }
}

void MetricField::fd_third(const Point& x, std::vector<double>& out) const {
    const int n = chart_.dim();
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    std::vector<double> block(nn), scratch(nn);
    Matrix g(n);
    VecFn comp = [&](const Point& y, std::vector<double>& v) {
        comp_(y, g);
        std::copy(g.data(), g.data() + nn, v.begin());
    };
    auto store = [&](int a, int b, int c, const std::vector<double>& vals) {
        int idx[3] = {a, b, c};
        std::sort(idx, idx + 3);
        int perms[6][3] = {{idx[0], idx[1], idx[2]}, {idx[0], idx[2], idx[1]},
                           {idx[1], idx[0], idx[2]}, {idx[1], idx[2], idx[0]},
                           {idx[2], idx[0], idx[1]}, {idx[2], idx[1], idx[0]}};
        for (auto& p : perms) {
            std::size_t off = ((static_cast<std::size_t>(p[0]) * n + p[1]) * n + p[2]) * nn;
            std::copy(vals.begin(), vals.end(), out.begin() + off);
        }
    };
    auto h = [&](int k) { return engine_.h3_frac * chart_.scale(k); };
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = b; c < n; ++c) {
                if (a == b && b == c) {
                    apply_stencil(comp, x, a, h(a), detail::d3_o2(), block, scratch);
                } else if (a == b || b == c) {
                    int twice = (a == b) ? a : b;
                    int once = (a == b) ? c : a;
                    VecFn inner = [&](const Point& y, std::vector<double>& v) {
                        std::vector<double> bb(nn), ss(nn);
                        apply_stencil(comp, y, twice, h(twice), detail::d2_o2(), bb, ss);
                        v = bb;
                    };
                    apply_stencil(inner, x, once, h(once), detail::d1_o2(), block, scratch);
                } else {
                    VecFn inner2 = [&](const Point& y, std::vector<double>& v) {
                        std::vector<double> bb(nn), ss(nn);
                        apply_stencil(comp, y, c, h(c), detail::d1_o2(), bb, ss);
                        v = bb;
                    };
                    VecFn inner1 = [&](const Point& y, std::vector<double>& v) {
                        std::vector<double> bb(nn), ss(nn);
                        apply_stencil(inner2, y, b, h(b), detail::d1_o2(), bb, ss);
                        v = bb;
                    };
                    apply_stencil(inner1, x, a, h(a), detail::d1_o2(), block, scratch);
                }
                store(a, b, c, block);
            }
}

MetricField make_chart_metric(Chart chart, MetricField::Components comp, std::string name) {
    return MetricField(std::move(chart), std::move(comp), std::move(name));
}

namespace {

// d^m/dt^m of sin^2(t), m = 0..3 (enough for metric jets of order 3).
double sin2_deriv(double t, int m) {
    switch (m) {
        case 0: { double s = std::sin(t); return s * s; }
        case 1: return std::sin(2.0 * t);
        case 2: return 2.0 * std::cos(2.0 * t);
        default: return -4.0 * std::sin(2.0 * t);
    }
}

// Round sphere S^m(rho) in nested polar coordinates:
// g_ii = rho^2 * prod_{j<i} sin^2(theta_j), diagonal.
// Derivative of a diagonal component for a coordinate multi-count.
double sphere_component_deriv(int m, double rho, int i, const Point& x,
                              const std::vector<int>& counts) {
    double v = rho * rho;
    for (int j = 0; j < m; ++j) {
        if (j < i) {
            v *= sin2_deriv(x[j], counts[j]);
        } else if (counts[j] > 0) {
            return 0.0;
        }
    }
    return v;
}

FiberSpec sphere_like(int m, double rho) {
    std::vector<std::string> names;
    std::vector<std::array<double, 2>> dom;
    std::vector<bool> per;
    for (int j = 0; j < m - 1; ++j) {
        names.push_back("theta" + std::to_string(j + 1));
        dom.push_back({0.0, M_PI});
        per.push_back(false);
    }
    names.push_back("phi");
    dom.push_back({0.0, 2.0 * M_PI});
    per.push_back(true);
    Chart chart(m, names, dom, per);

    auto comp = [m, rho](const Point& x, Matrix& g) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) g(i, j) = 0.0;
        std::vector<int> zero(m, 0);
        for (int i = 0; i < m; ++i) g(i, i) = sphere_component_deriv(m, rho, i, x, zero);
    };
    MetricField metric(chart, comp, "S" + std::to_string(m));

    auto d1 = [m, rho](const Point& x, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        std::vector<int> counts(m, 0);
        for (int k = 0; k < m; ++k) {
            counts.assign(m, 0);
            counts[k] = 1;
            for (int i = 0; i < m; ++i)
                out[(static_cast<std::size_t>(k) * m + i) * m + i] =
                    sphere_component_deriv(m, rho, i, x, counts);
        }
    };
    auto d2 = [m, rho](const Point& x, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        std::vector<int> counts(m, 0);
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) {
                counts.assign(m, 0);
                counts[k] += 1;
                counts[l] += 1;
                for (int i = 0; i < m; ++i)
                    out[((static_cast<std::size_t>(k) * m + l) * m + i) * m + i] =
                        sphere_component_deriv(m, rho, i, x, counts);
            }
    };
    auto d3 = [m, rho](const Point& x, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        std::vector<int> counts(m, 0);
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l)
                for (int q = 0; q < m; ++q) {
                    counts.assign(m, 0);
                    counts[k] += 1;
                    counts[l] += 1;
                    counts[q] += 1;
                    for (int i = 0; i < m; ++i)
                        out[(((static_cast<std::size_t>(k) * m + l) * m + q) * m + i) * m + i] =
                            sphere_component_deriv(m, rho, i, x, counts);
                }
    };
    metric.set_analytic_derivatives(d1, d2, d3);

    FiberSpec f;
    f.name = "S" + std::to_string(m) + "(" + std::to_string(rho) + ")";
    f.dim = m;
    f.kind = FiberSpec::Kind::Sphere;
    f.param = rho;
    f.einstein_constant = (m - 1) / (rho * rho);
    f.scalar_curvature = m * f.einstein_constant;
    f.volume = 2.0 * std::pow(M_PI, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1)) * std::pow(rho, m);
    f.metric = metric;
    return f;
}

} // namespace

// Block-diagonal product of two metrics, each block keeping its jets.
MetricField product_metric(const MetricField& A, const MetricField& B, std::string name) {
    const int na = A.dim(), nb = B.dim(), n = na + nb;
    Chart chart = Chart::product(A.chart(), B.chart());
    auto split = [na, nb](const Point& x, Point& xa, Point& xb) {
        xa.assign(x.begin(), x.begin() + na);
        xb.assign(x.begin() + na, x.begin() + na + nb);
    };
    auto comp = [=](const Point& x, Matrix& g) {
        Point xa, xb;
        split(x, xa, xb);
        Matrix ga = A.value(xa), gb = B.value(xb);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = 0.0;
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < na; ++j) g(i, j) = ga(i, j);
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j) g(na + i, na + j) = gb(i, j);
    };
    MetricField m(chart, comp, name);

    // Derivatives vanish across blocks.
    auto lift = [=](int order) {
        return [=](const Point& x, std::vector<double>& out) {
            Point xa, xb;
            split(x, xa, xb);
            MetricJet ja = A.jet(xa, order), jb = B.jet(xb, order);
            std::fill(out.begin(), out.end(), 0.0);
            auto idx = [n](std::initializer_list<int> id) {
                std::size_t f = 0;
                for (int v : id) f = f * n + v;
                return f;
            };
            if (order == 1) {
                for (int k = 0; k < na; ++k)
                    for (int i = 0; i < na; ++i)
                        for (int j = 0; j < na; ++j) out[idx({k, i, j})] = ja.d1v(k, i, j);
                for (int k = 0; k < nb; ++k)
                    for (int i = 0; i < nb; ++i)
                        for (int j = 0; j < nb; ++j)
                            out[idx({na + k, na + i, na + j})] = jb.d1v(k, i, j);
            } else if (order == 2) {
                for (int k = 0; k < na; ++k)
                    for (int l = 0; l < na; ++l)
                        for (int i = 0; i < na; ++i)
                            for (int j = 0; j < na; ++j)
                                out[idx({k, l, i, j})] = ja.d2v(k, l, i, j);
                for (int k = 0; k < nb; ++k)
                    for (int l = 0; l < nb; ++l)
                        for (int i = 0; i < nb; ++i)
                            for (int j = 0; j < nb; ++j)
                                out[idx({na + k, na + l, na + i, na + j})] = jb.d2v(k, l, i, j);
            } else {
                for (int k = 0; k < na; ++k)
                    for (int l = 0; l < na; ++l)
                        for (int q = 0; q < na; ++q)
                            for (int i = 0; i < na; ++i)
                                for (int j = 0; j < na; ++j)
                                    out[idx({k, l, q, i, j})] = ja.d3v(k, l, q, i, j);
                for (int k = 0; k < nb; ++k)
                    for (int l = 0; l < nb; ++l)
                        for (int q = 0; q < nb; ++q)
                            for (int i = 0; i < nb; ++i)
                                for (int j = 0; j < nb; ++j)
                                    out[idx({na + k, na + l, na + q, na + i, na + j})] =
                                        jb.d3v(k, l, q, i, j);
            }
        };
    };
    m.set_analytic_derivatives(lift(1), lift(2), lift(3));
    return m;
}

MetricField scaled_metric(const MetricField& M, double c) {
    MetricField out(M.chart(), [M, c](const Point& x, Matrix& g) {
        g = M.value(x);
        for (int i = 0; i < g.size(); ++i)
            for (int j = 0; j < g.size(); ++j) g(i, j) *= c;
    }, M.name() + "[scaled]");
    if (M.analytic()) {
        auto lift = [M, c](int order) {
            return [M, c, order](const Point& x, std::vector<double>& v) {
                MetricJet j = M.jet(x, order);
                const std::vector<double>& src = order == 1 ? j.d1 : (order == 2 ? j.d2 : j.d3);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * src[i];
            };
        };
        out.set_analytic_derivatives(lift(1), lift(2), lift(3));
    }
    return out;
}

FiberSpec make_sphere_fiber(int dim, double radius) { return sphere_like(dim, radius); }

FiberSpec make_torus_fiber(int dim, double period) {
    Chart chart = Chart::box(dim, 0.0, period, /*periodic=*/true);
    auto comp = [dim](const Point&, Matrix& g) {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) g(i, j) = (i == j) ? 1.0 : 0.0;
    };
    MetricField metric(chart, comp, "T" + std::to_string(dim));
    auto zero = [](const Point&, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
    };
    metric.set_analytic_derivatives(zero, zero, zero);

    FiberSpec f;
    f.name = "T" + std::to_string(dim);
    f.dim = dim;
    f.kind = FiberSpec::Kind::Torus;
    f.param = period;
    f.einstein_constant = 0.0;
    f.scalar_curvature = 0.0;
    f.volume = std::pow(period, dim);
    f.metric = metric;
    return f;
}

FiberSpec make_hyperbolic_fiber(int dim, double scale) {
    // Upper half-space patch: coordinates (x1..x_{dim-1}, z), z in [1, 2],
    // metric scale * delta / z^2.
    std::vector<std::string> names;
    std::vector<std::array<double, 2>> dom;
    std::vector<bool> per;
    for (int j = 0; j < dim - 1; ++j) {
        names.push_back("x" + std::to_string(j + 1));
        dom.push_back({-1.0, 1.0});
        per.push_back(false);
    }
    names.push_back("z");
    dom.push_back({1.0, 2.0});
    per.push_back(false);
    Chart chart(dim, names, dom, per);

    const int zc = dim - 1;
    auto zpow = [](double z, int m) {
        // d^m/dz^m of z^{-2}
        switch (m) {
            case 0: return 1.0 / (z * z);
            case 1: return -2.0 / (z * z * z);
            case 2: return 6.0 / (z * z * z * z);
            default: return -24.0 / (z * z * z * z * z);
        }
    };
    auto comp = [dim, scale, zc, zpow](const Point& x, Matrix& g) {
        double v = scale * zpow(x[zc], 0);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) g(i, j) = (i == j) ? v : 0.0;
    };
    MetricField metric(chart, comp, "H" + std::to_string(dim));
    auto deriv = [dim, scale, zc, zpow](int order) {
        return [=](const Point& x, std::vector<double>& out) {
            std::fill(out.begin(), out.end(), 0.0);
            // Only the pure-z derivative survives.
            double v = scale * zpow(x[zc], order);
            std::size_t base = 0;
            for (int q = 0; q < order; ++q) base = base * dim + zc;
            for (int i = 0; i < dim; ++i)
                out[(base * dim + i) * dim + i] = v;
        };
    };
    metric.set_analytic_derivatives(deriv(1), deriv(2), deriv(3));

    FiberSpec f;
    f.name = "H" + std::to_string(dim);
    f.dim = dim;
    f.kind = FiberSpec::Kind::Hyperbolic;
    f.param = scale;
    f.einstein_constant = -(dim - 1) / scale;
    f.scalar_curvature = dim * f.einstein_constant;
    // vol = scale^{dim/2} * prod(x-extents) * int z^-dim dz
    double zint = (std::pow(1.0, 1 - dim) - std::pow(2.0, 1 - dim)) / (dim - 1);
    f.volume = std::pow(scale, 0.5 * dim) * std::pow(2.0, dim - 1) * zint;
    f.metric = metric;
    return f;
}

FiberSpec make_s2xs2_fiber(double rho1, double rho2) {
    if (std::fabs(rho1 - rho2) > 1e-14)
        throw ConfigError("S2 x S2 fiber is Einstein only for equal radii");
    FiberSpec a = make_sphere_fiber(2, rho1);
    FiberSpec b = make_sphere_fiber(2, rho2);
    FiberSpec f;
    f.name = "S2xS2(" + std::to_string(rho1) + ")";
    f.dim = 4;
    f.kind = FiberSpec::Kind::SphereProduct;
    f.param = rho1;
    f.einstein_constant = 1.0 / (rho1 * rho1);
    f.scalar_curvature = 4.0 * f.einstein_constant;
    f.volume = a.volume * b.volume;
    f.metric = product_metric(a.metric, b.metric, f.name);
    return f;
}

FiberSpec make_einstein_fiber(int dim, double lambda) {
    if (lambda > 0.0) return make_sphere_fiber(dim, std::sqrt((dim - 1) / lambda));
    if (lambda < 0.0) return make_hyperbolic_fiber(dim, (dim - 1) / (-lambda));
    return make_torus_fiber(dim);
}

MetricField make_warped_product(const Curve& r, const FiberSpec& fiber, int n,
                                const Chart& base, std::string name) {
    if (fiber.dim != n - 1) throw ConfigError("fiber dimension must be n-1");
    return make_multiply_warped_product({WarpBlock{r, fiber}}, base, std::move(name));
}

MetricField make_multiply_warped_product(const std::vector<WarpBlock>& blocks,
                                         const Chart& base, std::string name) {
    if (base.dim() != 1) throw ConfigError("warped base chart must be one-dimensional");
    if (blocks.empty()) throw ConfigError("warped product needs at least one fiber block");

    // every warp must be positive on the (open) s-domain
    const int probes = 512;
    for (const auto& blk : blocks)
        for (int i = 0; i <= probes; ++i) {
            double t = (i + 0.5) / (probes + 1.0);
            double s = base.lo(0) + t * base.extent(0);
            if (blk.warp(s, 0) <= 0.0) throw InvalidWarpError(s);
        }

    Chart chart = base;
    std::vector<int> offset; // ambient index of each block start
    int dim = 1;
    for (const auto& blk : blocks) {
        offset.push_back(dim);
        chart = Chart::product(chart, blk.fiber.metric.chart());
        dim += blk.fiber.dim;
    }
    const int n_amb = dim;
    const std::size_t nblocks = blocks.size();

    std::vector<Curve> warps;
    std::vector<MetricField> fms;
    std::vector<int> mdim;
    for (const auto& blk : blocks) {
        warps.push_back(blk.warp);
        fms.push_back(blk.fiber.metric);
        mdim.push_back(blk.fiber.dim);
    }

    auto block_point = [offset, mdim](const Point& x, std::size_t bi) {
        return Point(x.begin() + offset[bi], x.begin() + offset[bi] + mdim[bi]);
    };

    auto comp = [=](const Point& x, Matrix& g) {
        for (int i = 0; i < n_amb; ++i)
            for (int j = 0; j < n_amb; ++j) g(i, j) = 0.0;
        g(0, 0) = 1.0;
        for (std::size_t bi = 0; bi < nblocks; ++bi) {
            Matrix gE = fms[bi].value(block_point(x, bi));
            double w = warps[bi](x[0], 0);
            for (int a = 0; a < mdim[bi]; ++a)
                for (int b = 0; b < mdim[bi]; ++b)
                    g(offset[bi] + a, offset[bi] + b) = w * w * gE(a, b);
        }
    };
    MetricField metric(chart, comp, std::move(name));

    // d^k/ds^k of w(s)^2, k = 0..3
    auto w2d = [](const Curve& w, double s, int k) {
        double w0 = w(s, 0), w1 = w(s, 1), w2 = w(s, 2);
        switch (k) {
            case 0: return w0 * w0;
            case 1: return 2.0 * w0 * w1;
            case 2: return 2.0 * w1 * w1 + 2.0 * w0 * w2;
            default: return 6.0 * w1 * w2 + 2.0 * w0 * w(s, 3);
        }
    };

    auto d1 = [=](const Point& x, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        auto at = [&](int k, int i, int j) -> double& {
            return out[(static_cast<std::size_t>(k) * n_amb + i) * n_amb + j];
        };
        for (std::size_t bi = 0; bi < nblocks; ++bi) {
            MetricJet jf = fms[bi].jet(block_point(x, bi), 1);
            const int m = mdim[bi], off = offset[bi];
            double c0 = w2d(warps[bi], x[0], 0), c1 = w2d(warps[bi], x[0], 1);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    at(0, off + a, off + b) = c1 * jf.g(a, b);
                    for (int c = 0; c < m; ++c)
                        at(off + c, off + a, off + b) = c0 * jf.d1v(c, a, b);
                }
        }
    };
    auto d2 = [=](const Point& x, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        auto at = [&](int k, int l, int i, int j) -> double& {
            return out[((static_cast<std::size_t>(k) * n_amb + l) * n_amb + i) * n_amb + j];
        };
        for (std::size_t bi = 0; bi < nblocks; ++bi) {
            MetricJet jf = fms[bi].jet(block_point(x, bi), 2);
            const int m = mdim[bi], off = offset[bi];
            double c0 = w2d(warps[bi], x[0], 0), c1 = w2d(warps[bi], x[0], 1),
                   c2 = w2d(warps[bi], x[0], 2);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    at(0, 0, off + a, off + b) = c2 * jf.g(a, b);
                    for (int c = 0; c < m; ++c) {
                        double v = c1 * jf.d1v(c, a, b);
                        at(0, off + c, off + a, off + b) = v;
                        at(off + c, 0, off + a, off + b) = v;
                        for (int d = 0; d < m; ++d)
                            at(off + c, off + d, off + a, off + b) = c0 * jf.d2v(c, d, a, b);
                    }
                }
        }
    };
    auto d3 = [=](const Point& x, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        auto at = [&](int k, int l, int q, int i, int j) -> double& {
            return out[(((static_cast<std::size_t>(k) * n_amb + l) * n_amb + q) * n_amb + i) *
                           n_amb +
                       j];
        };
        for (std::size_t bi = 0; bi < nblocks; ++bi) {
            MetricJet jf = fms[bi].jet(block_point(x, bi), 3);
            const int m = mdim[bi], off = offset[bi];
            double c0 = w2d(warps[bi], x[0], 0), c1 = w2d(warps[bi], x[0], 1),
                   c2 = w2d(warps[bi], x[0], 2), c3 = w2d(warps[bi], x[0], 3);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    at(0, 0, 0, off + a, off + b) = c3 * jf.g(a, b);
                    for (int c = 0; c < m; ++c) {
                        double v = c2 * jf.d1v(c, a, b);
                        at(0, 0, off + c, off + a, off + b) = v;
                        at(0, off + c, 0, off + a, off + b) = v;
                        at(off + c, 0, 0, off + a, off + b) = v;
                        for (int d = 0; d < m; ++d) {
                            double u = c1 * jf.d2v(c, d, a, b);
                            at(0, off + c, off + d, off + a, off + b) = u;
                            at(off + c, 0, off + d, off + a, off + b) = u;
                            at(off + c, off + d, 0, off + a, off + b) = u;
                            for (int e = 0; e < m; ++e)
                                at(off + c, off + d, off + e, off + a, off + b) =
                                    c0 * jf.d3v(c, d, e, a, b);
                        }
                    }
                }
        }
    };
    metric.set_analytic_derivatives(d1, d2, d3);
    return metric;
}

// ---------------------------------------------------------------------------
// ScalarField

ScalarJet ScalarField::jet(const Point& x, int order) const {
    const int n = chart_.dim();
    ScalarJet out;
    out.value = value_(x);
    const double hfrac = 1.0e-3;
    std::vector<double> one(1), scratch(1);
    VecFn fn = [this](const Point& y, std::vector<double>& v) { v[0] = value_(y); };
    if (order >= 1) {
        out.grad.resize(n);
        if (p1_) {
            p1_(x, out.grad);
        } else {
            for (int k = 0; k < n; ++k) {
                double h = detail::clamp_step(chart_, x, k, hfrac * chart_.scale(k), 2);
                apply_stencil(fn, x, k, h, detail::d1_o4(), one, scratch);
                out.grad[k] = one[0];
            }
        }
    }
    if (order >= 2) {
        out.hess.resize(static_cast<std::size_t>(n) * n);
        if (p2_) {
            p2_(x, out.hess);
        } else {
            for (int k = 0; k < n; ++k) {
                double hk = detail::clamp_step(chart_, x, k, hfrac * chart_.scale(k), 2);
                for (int l = k; l < n; ++l) {
                    double hl = detail::clamp_step(chart_, x, l, hfrac * chart_.scale(l), 2);
                    if (k == l) {
                        apply_stencil(fn, x, k, hk, detail::d2_o4(), one, scratch);
                    } else {
                        VecFn inner = [&](const Point& y, std::vector<double>& v) {
                            std::vector<double> b(1), s(1);
                            apply_stencil(fn, y, l, hl, detail::d1_o4(), b, s);
                            v = b;
                        };
                        apply_stencil(inner, x, k, hk, detail::d1_o4(), one, scratch);
                    }
                    out.hess[static_cast<std::size_t>(k) * n + l] = one[0];
                    out.hess[static_cast<std::size_t>(l) * n + k] = one[0];
                }
            }
        }
    }
    return out;
}

ScalarField ScalarField::radial(const Chart& chart, const Curve& c) {
    const int n = chart.dim();
    ScalarField f(chart, [c](const Point& x) { return c(x[0], 0); });
    f.set_analytic_partials(
        [c, n](const Point& x, std::vector<double>& g) {
            std::fill(g.begin(), g.end(), 0.0);
            g[0] = c(x[0], 1);
        },
        [c, n](const Point& x, std::vector<double>& h) {
            std::fill(h.begin(), h.end(), 0.0);
            h[0] = c(x[0], 2);
        });
    f.radial_ = true;
    f.curve_ = c;
    return f;
}

ScalarField ScalarField::coordinate(const Chart& chart, int k) {
    const int n = chart.dim();
    ScalarField f(chart, [k](const Point& x) { return x[k]; });
    f.set_analytic_partials(
        [k, n](const Point&, std::vector<double>& g) {
            std::fill(g.begin(), g.end(), 0.0);
            g[k] = 1.0;
        },
        [](const Point&, std::vector<double>& h) { std::fill(h.begin(), h.end(), 0.0); });
    return f;
}

ScalarField ScalarField::constant(const Chart& chart, double v) {
    ScalarField f(chart, [v](const Point&) { return v; });
    f.set_analytic_partials(
        [](const Point&, std::vector<double>& g) { std::fill(g.begin(), g.end(), 0.0); },
        [](const Point&, std::vector<double>& h) { std::fill(h.begin(), h.end(), 0.0); });
    return f;
}

std::vector<Point> sample_points(const Chart& chart, int count, unsigned seed,
                                 double margin_frac) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<Point> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        Point x(chart.dim());
        for (int k = 0; k < chart.dim(); ++k) {
            double m = chart.periodic(k) ? 0.0 : margin_frac * chart.extent(k);
            x[k] = chart.lo(k) + m + uni(rng) * (chart.extent(k) - 2.0 * m);
        }
        pts.push_back(std::move(x));
    }
    return pts;
}

} // namespace staticlab
