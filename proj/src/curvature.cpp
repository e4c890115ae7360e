#include "staticlab/curvature.hpp"

#include <cmath>

#include "staticlab/errors.hpp"
#include "stencils.hpp"

namespace staticlab {

namespace {

TensorValue christoffel_from_jet(const MetricJet& j) {
    const int n = j.n;
    TensorValue gamma(n, {Variance::Upper, Variance::Lower, Variance::Lower});
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i)
            for (int jj = i; jj < n; ++jj) {
                double sum = 0.0;
                for (int p = 0; p < n; ++p) {
                    double a = j.d1v(i, jj, p) + j.d1v(jj, i, p) - j.d1v(p, i, jj);
                    sum += j.ginv(m, p) * a;
                }
                gamma(m, i, jj) = 0.5 * sum;
                gamma(m, jj, i) = 0.5 * sum;
            }
    return gamma;
}

// Partial (not covariant) derivatives of the Christoffel symbols.
// dgamma[k](m,i,j) = d_k Gamma^m_{ij}; needs the order-2 jet.
std::vector<TensorValue> christoffel_partials(const MetricJet& j) {
    const int n = j.n;
    std::vector<TensorValue> out(
        n, TensorValue(n, {Variance::Upper, Variance::Lower, Variance::Lower}));
    // d_k g^{mp} = -g^{ma} (d_k g_{ab}) g^{bp}
    std::vector<double> dginv(static_cast<std::size_t>(n) * n * n);
    auto dgi = [&](int k, int m, int p) -> double& {
        return dginv[(static_cast<std::size_t>(k) * n + m) * n + p];
    };
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
            for (int p = 0; p < n; ++p) {
                double sum = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        sum -= j.ginv(m, a) * j.d1v(k, a, b) * j.ginv(b, p);
                dgi(k, m, p) = sum;
            }
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
            for (int i = 0; i < n; ++i)
                for (int jj = 0; jj < n; ++jj) {
                    double sum = 0.0;
                    for (int p = 0; p < n; ++p) {
                        double a = j.d1v(i, jj, p) + j.d1v(jj, i, p) - j.d1v(p, i, jj);
                        double da = j.d2v(k, i, jj, p) + j.d2v(k, jj, i, p) - j.d2v(k, p, i, jj);
                        sum += dgi(k, m, p) * a + j.ginv(m, p) * da;
                    }
                    out[k](m, i, jj) = 0.5 * sum;
                }
    return out;
}

} // namespace

CurvaturePoint curvature_at(const MetricField& M, const Point& x) {
    MetricJet j = M.jet(x, 2);
    const int n = j.n;
    CurvaturePoint c;
    c.n = n;
    c.g = j.g;
    c.ginv = j.ginv;
    c.gamma = christoffel_from_jet(j);
    std::vector<TensorValue> dgamma = christoffel_partials(j);

    // R^m_{jkl} = d_k Gamma^m_{lj} - d_l Gamma^m_{kj}
    //           + Gamma^m_{kp} Gamma^p_{lj} - Gamma^m_{lp} Gamma^p_{kj}
    TensorValue rup(n, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
    for (int m = 0; m < n; ++m)
        for (int jj = 0; jj < n; ++jj)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double v = dgamma[k](m, l, jj) - dgamma[l](m, k, jj);
                    for (int p = 0; p < n; ++p)
                        v += c.gamma(m, k, p) * c.gamma(p, l, jj) -
                             c.gamma(m, l, p) * c.gamma(p, k, jj);
                    rup(m, jj, k, l) = v;
                }

    c.riemann = TensorValue::lower(n, 4);
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double v = 0.0;
                    for (int m = 0; m < n; ++m) v += j.g(i, m) * rup(m, jj, k, l);
                    c.riemann(i, jj, k, l) = v;
                }

    c.ricci = Matrix(n);
    for (int jj = 0; jj < n; ++jj)
        for (int l = 0; l < n; ++l) {
            double v = 0.0;
            for (int k = 0; k < n; ++k) v += rup(k, jj, k, l);
            c.ricci(jj, l) = v;
        }

    c.scalar = 0.0;
    for (int jj = 0; jj < n; ++jj)
        for (int l = 0; l < n; ++l) c.scalar += j.ginv(jj, l) * c.ricci(jj, l);

    c.schouten = Matrix(n);
    const double cR = c.scalar / (2.0 * (n - 1));
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) c.schouten(i, jj) = c.ricci(i, jj) - cR * j.g(i, jj);

    c.weyl = TensorValue::lower(n, 4);
    if (n >= 3) {
        const double inv = 1.0 / (n - 2);
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        double glue = c.schouten(i, k) * j.g(jj, l) -
                                      c.schouten(i, l) * j.g(jj, k) -
                                      c.schouten(jj, k) * j.g(i, l) +
                                      c.schouten(jj, l) * j.g(i, k);
                        c.weyl(i, jj, k, l) = c.riemann(i, jj, k, l) - inv * glue;
                    }
    }
    return c;
}

TensorValue christoffel(const MetricField& M, const Point& x) {
    return christoffel_from_jet(M.jet(x, 1));
}

TensorValue riemann(const MetricField& M, const Point& x) { return curvature_at(M, x).riemann; }

RicciScalarSchouten ricci_scalar_schouten(const MetricField& M, const Point& x) {
    CurvaturePoint c = curvature_at(M, x);
    return {c.ricci, c.scalar, c.schouten};
}

TensorValue weyl(const MetricField& M, const Point& x) { return curvature_at(M, x).weyl; }

TensorValue covariant_derivative(const MetricField& M, const TensorFieldFn& field,
                                 const Point& x, double h_frac, bool second_order) {
    TensorValue t0 = field(x);
    const int n = M.dim();
    const int r = t0.rank();
    MetricJet j = M.jet(x, 1);
    TensorValue gamma = christoffel_from_jet(j);

    const detail::Stencil& st = second_order ? detail::d1_o2() : detail::d1_o4();
    std::size_t sz = t0.components().size();
    std::vector<double> block(sz), scratch(sz);
    detail::VecFn fn = [&](const Point& y, std::vector<double>& v) {
        v = field(y).components();
    };

    std::vector<Variance> var(r + 1, Variance::Lower);
    TensorValue out(n, var);
    std::vector<std::vector<double>> partials(n);
    for (int k = 0; k < n; ++k) {
        double h = detail::clamp_step(M.chart(), x, k, h_frac * M.chart().scale(k), st.reach());
        detail::apply_stencil(fn, x, k, h, st, block, scratch);
        partials[k] = block;
    }

    // out(k, I) = d_k T(I) - sum_s Gamma^m_{k I_s} T(I | I_s -> m)
    std::vector<int> id(r, 0);
    std::vector<std::size_t> stride(r);
    {
        std::size_t s = 1;
        for (int q = r - 1; q >= 0; --q) {
            stride[q] = s;
            s *= n;
        }
    }
    const std::vector<double>& base = t0.components();
    for (int k = 0; k < n; ++k) {
        for (std::size_t flat = 0; flat < sz; ++flat) {
            std::size_t rem = flat;
            for (int q = 0; q < r; ++q) {
                id[q] = static_cast<int>(rem / stride[q]);
                rem %= stride[q];
            }
            double v = partials[k][flat];
            for (int s = 0; s < r; ++s) {
                std::size_t off = flat - static_cast<std::size_t>(id[s]) * stride[s];
                for (int m = 0; m < n; ++m)
                    v -= gamma(m, k, id[s]) * base[off + static_cast<std::size_t>(m) * stride[s]];
            }
            out.components()[flat + static_cast<std::size_t>(k) * sz] = v;
        }
    }
    return out;
}

TensorValue covariant_divergence(const MetricField& M, const TensorFieldFn& field,
                                 const Point& x, int slot, double h_frac, bool second_order) {
    TensorValue cd = covariant_derivative(M, field, x, h_frac, second_order);
    Matrix ginv = M.jet(x, 0).ginv;
    return cd.trace(0, 1 + slot, ginv);
}

TensorValue cotton(const MetricField& M, const Point& x) {
    return cotton(M, x, FieldSteps::for_metric(M));
}

TensorValue cotton(const MetricField& M, const Point& x, const FieldSteps& steps) {
    const int n = M.dim();
    MetricJet j = M.jet(x, 1);
    TensorValue gamma = christoffel_from_jet(j);

    // Partials of the Schouten field.
    std::size_t sz = static_cast<std::size_t>(n) * n;
    std::vector<double> block(sz), scratch(sz);
    detail::VecFn sfield = [&](const Point& y, std::vector<double>& v) {
        CurvaturePoint c = curvature_at(M, y);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) v[static_cast<std::size_t>(a) * n + b] = c.schouten(a, b);
    };
    std::vector<std::vector<double>> ds(n);
    for (int k = 0; k < n; ++k) {
        double h = detail::clamp_step(M.chart(), x, k, steps.schouten_frac * M.chart().scale(k), 2);
        detail::apply_stencil(sfield, x, k, h, detail::d1_o4(), block, scratch);
        ds[k] = block;
    }
    Matrix s(n);
    {
        CurvaturePoint c = curvature_at(M, x);
        s = c.schouten;
    }
    auto nabla = [&](int k, int a, int b) {
        double v = ds[k][static_cast<std::size_t>(a) * n + b];
        for (int m = 0; m < n; ++m)
            v -= gamma(m, k, a) * s(m, b) + gamma(m, k, b) * s(a, m);
        return v;
    };
    TensorValue c(n, {Variance::Lower, Variance::Lower, Variance::Lower});
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj)
            for (int k = 0; k < n; ++k) c(i, jj, k) = nabla(i, jj, k) - nabla(jj, i, k);
    return c;
}

TensorValue weyl_divergence(const MetricField& M, const Point& x) {
    FieldSteps steps = FieldSteps::for_metric(M);
    TensorFieldFn wfield = [&M](const Point& y) { return weyl(M, y); };
    return covariant_divergence(M, wfield, x, 3, steps.schouten_frac);
}

double weyl_divergence_residual(const MetricField& M, const Point& x) {
    const int n = M.dim();
    if (n < 4) throw Error("weyl divergence identity needs n >= 4");
    TensorValue divw = weyl_divergence(M, x);
    TensorValue c = cotton(M, x);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                worst = std::max(worst,
                                 std::fabs(divw(i, j, k) + (n - 3.0) / (n - 2.0) * c(i, j, k)));
    return worst;
}

TensorValue bach(const MetricField& M, const Point& x) {
    return bach(M, x, FieldSteps::for_metric(M));
}

TensorValue bach(const MetricField& M, const Point& x, const FieldSteps& steps) {
    const int n = M.dim();
    CurvaturePoint cp = curvature_at(M, x);
    TensorFieldFn cfield = [&M, &steps](const Point& y) { return cotton(M, y, steps); };
    TensorValue divc = covariant_divergence(M, cfield, x, 0, steps.div_frac);

    Matrix sup(n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            double v = 0.0;
            for (int a = 0; a < n; ++a)
                for (int bb = 0; bb < n; ++bb)
                    v += cp.ginv(i, a) * cp.schouten(a, bb) * cp.ginv(bb, l);
            sup(i, l) = v;
        }
    TensorValue b(n, {Variance::Lower, Variance::Lower});
    for (int jj = 0; jj < n; ++jj)
        for (int k = 0; k < n; ++k) {
            double sw = 0.0;
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l) sw += sup(i, l) * cp.weyl(i, jj, k, l);
            b(jj, k) = (-divc(jj, k) + sw) / (n - 2.0);
        }
    return b;
}

TensorValue bach_from_weyl_divergence(const MetricField& M, const Point& x) {
    const int n = M.dim();
    if (n < 4) throw Error("weyl-divergence route for Bach needs n >= 4");
    FieldSteps steps = FieldSteps::for_metric(M);
    CurvaturePoint cp = curvature_at(M, x);
    TensorFieldFn f = [&M](const Point& y) { return weyl_divergence(M, y); };
    TensorValue divf = covariant_divergence(M, f, x, 0, steps.div_frac);

    Matrix sup(n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            double v = 0.0;
            for (int a = 0; a < n; ++a)
                for (int bb = 0; bb < n; ++bb)
                    v += cp.ginv(i, a) * cp.schouten(a, bb) * cp.ginv(bb, l);
            sup(i, l) = v;
        }
    TensorValue b(n, {Variance::Lower, Variance::Lower});
    for (int jj = 0; jj < n; ++jj)
        for (int k = 0; k < n; ++k) {
            double sw = 0.0;
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l) sw += sup(i, l) * cp.weyl(i, jj, k, l);
            b(jj, k) = divf(jj, k) / (n - 3.0) + sw / (n - 2.0);
        }
    return b;
}

TensorValue hessian(const MetricField& M, const ScalarField& f, const Point& x) {
    const int n = M.dim();
    MetricJet j = M.jet(x, 1);
    TensorValue gamma = christoffel_from_jet(j);
    ScalarJet sj = f.jet(x, 2);
    TensorValue h(n, {Variance::Lower, Variance::Lower});
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
            double v = sj.d2(i, jj);
            for (int m = 0; m < n; ++m) v -= gamma(m, i, jj) * sj.d1(m);
            h(i, jj) = v;
        }
    return h;
}

std::vector<double> gradient_upper(const MetricField& M, const ScalarField& f, const Point& x) {
    const int n = M.dim();
    Matrix ginv = M.jet(x, 0).ginv;
    ScalarJet sj = f.jet(x, 1);
    std::vector<double> up(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) up[i] += ginv(i, jj) * sj.d1(jj);
    return up;
}

double laplacian(const MetricField& M, const ScalarField& f, const Point& x) {
    const int n = M.dim();
    Matrix ginv = M.jet(x, 0).ginv;
    TensorValue h = hessian(M, f, x);
    double v = 0.0;
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) v += ginv(i, jj) * h(i, jj);
    return v;
}

TensorValue d_tensor(const MetricField& M, const ScalarField& f, const Point& x) {
    const int n = M.dim();
    CurvaturePoint cp = curvature_at(M, x);
    TensorValue c = cotton(M, x);
    double fv = f(x);
    std::vector<double> fup = gradient_upper(M, f, x);
    TensorValue d(n, {Variance::Lower, Variance::Lower, Variance::Lower});
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj)
            for (int k = 0; k < n; ++k) {
                double wf = 0.0;
                for (int l = 0; l < n; ++l) wf += cp.weyl(i, jj, k, l) * fup[l];
                d(i, jj, k) = fv * fv * c(i, jj, k) - fv * wf;
            }
    return d;
}

} // namespace staticlab
