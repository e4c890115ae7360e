#ifndef STATICLAB_METRIC_HPP
#define STATICLAB_METRIC_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "staticlab/chart.hpp"
#include "staticlab/curve.hpp"
#include "staticlab/linalg.hpp"

namespace staticlab {

// Finite-difference configuration. First and second metric derivatives use
// 4th-order central stencils with step h12_frac * coordinate scale; direct
// third derivatives use 2nd-order stencils with a larger step to control
// roundoff in the h^3 denominator.
struct DiffEngine {
    double h12_frac = 1.0e-3;
    double h3_frac = 1.0e-2;

    // Max error of the stencils on polynomials they must differentiate
    // exactly (run with a step large enough that roundoff is negligible).
    static double polynomial_exactness_error();
};

// Pointwise metric data: g, g^{-1}, det and coordinate derivatives of the
// components up to the requested order.
struct MetricJet {
    int n = 0;
    Matrix g, ginv;
    double det = 0.0;
    std::vector<double> d1; // [k][i][j]        size n^3
    std::vector<double> d2; // [k][l][i][j]     size n^4
    std::vector<double> d3; // [k][l][m][i][j]  size n^5

    double d1v(int k, int i, int j) const {
        return d1[(static_cast<std::size_t>(k) * n + i) * n + j];
    }
    double d2v(int k, int l, int i, int j) const {
        return d2[((static_cast<std::size_t>(k) * n + l) * n + i) * n + j];
    }
    double d3v(int k, int l, int m, int i, int j) const {
        return d3[(((static_cast<std::size_t>(k) * n + l) * n + m) * n + i) * n + j];
    }
};

// A coordinate chart plus smooth metric component functions. Derivatives
// come from analytic callbacks when supplied and from the DiffEngine
// otherwise. Evaluation is side-effect-free; instances can be shared
// across threads freely after construction.
class MetricField {
public:
    using Components = std::function<void(const Point&, Matrix&)>;
    using DerivFn = std::function<void(const Point&, std::vector<double>&)>;

    MetricField() = default;
    MetricField(Chart chart, Components comp, std::string name = "");

    void set_analytic_derivatives(DerivFn d1, DerivFn d2, DerivFn d3 = nullptr);

    const Chart& chart() const { return chart_; }
    int dim() const { return chart_.dim(); }
    const std::string& name() const { return name_; }
    const DiffEngine& engine() const { return engine_; }
    DiffEngine& engine() { return engine_; }
    bool analytic() const { return static_cast<bool>(d1_); }

    // Metric value with symmetry and positive-definiteness checks.
    Matrix value(const Point& x) const;
    double det(const Point& x) const;
    double sqrt_det(const Point& x) const;

    MetricJet jet(const Point& x, int order) const;

    // Same metric with analytic derivative callbacks stripped, so every
    // derivative goes through the stencil engine.
    MetricField finite_difference_mode() const;

    // Guard margin (fraction of coordinate extent) used when sampling
    // check points near non-periodic chart boundaries.
    double sample_margin_frac() const { return 0.08; }

private:
    void fd_first(const Point& x, std::vector<double>& out) const;
    void fd_second(const Point& x, std::vector<double>& out) const;
    void fd_third(const Point& x, std::vector<double>& out) const;

    Chart chart_;
    Components comp_;
    DerivFn d1_, d2_, d3_;
    DiffEngine engine_;
    std::string name_;
};

// Named Einstein fiber (E, g_E): Ric_E = lambda g_E, scalar curvature
// dim * lambda. The closed-form kind/parameter are kept so tests can build
// independent curvature oracles for warped products.
struct FiberSpec {
    enum class Kind { Sphere, Torus, Hyperbolic, SphereProduct };

    std::string name;
    int dim = 0;
    Kind kind = Kind::Sphere;
    double param = 1.0;            // radius (sphere/product) or conformal scale (hyperbolic)
    double einstein_constant = 0.0; // lambda
    double scalar_curvature = 0.0;  // dim * lambda
    double volume = 0.0;            // Riemannian volume of the chart patch
    MetricField metric;
};

FiberSpec make_sphere_fiber(int dim, double radius);
FiberSpec make_torus_fiber(int dim, double period = 2.0 * M_PI);
// Upper half-space patch scaled by `scale`: lambda = -(dim-1)/scale.
FiberSpec make_hyperbolic_fiber(int dim, double scale = 1.0);
// S^2(rho) x S^2(rho); Einstein with lambda = 1/rho^2 (equal radii enforced).
FiberSpec make_s2xs2_fiber(double rho1, double rho2);
// Pick a model fiber of dimension `dim` with Ric = lambda g.
FiberSpec make_einstein_fiber(int dim, double lambda);

MetricField make_chart_metric(Chart chart, MetricField::Components comp,
                              std::string name = "");

// Block-diagonal product of two metrics (used for product fibers and for
// induced slice metrics of warped models).
MetricField product_metric(const MetricField& A, const MetricField& B, std::string name = "");
// c * g with derivative callbacks carried along.
MetricField scaled_metric(const MetricField& M, double c);

// g = ds^2 + r(s)^2 g_E on base x fiber. Throws InvalidWarpError if r <= 0
// anywhere on the (open) s-domain.
MetricField make_warped_product(const Curve& r, const FiberSpec& fiber, int n,
                                const Chart& base, std::string name = "");

// g = ds^2 + sum_i w_i(s)^2 g_i over a product of Einstein fibers.
struct WarpBlock {
    Curve warp;
    FiberSpec fiber;
};
MetricField make_multiply_warped_product(const std::vector<WarpBlock>& blocks,
                                         const Chart& base, std::string name = "");

// Deterministic interior sample points (guard margin away from
// non-periodic boundaries).
std::vector<Point> sample_points(const Chart& chart, int count, unsigned seed,
                                 double margin_frac = 0.08);

} // namespace staticlab

#endif
