#ifndef STATICLAB_STATICS_HPP
#define STATICLAB_STATICS_HPP

#include <cmath>
#include <optional>
#include <string>

#include "staticlab/curvature.hpp"
#include "staticlab/metric.hpp"
#include "staticlab/scalar_field.hpp"

namespace staticlab {

enum class ModelKind { VacuumStatic, Static, Cpe, Unified };

std::string to_string(ModelKind k);
std::optional<ModelKind> model_kind_from_string(const std::string& s);

// Warped-product structure data kept alongside the assembled metric so the
// level-set and quadrature modules can use the s-fibration directly.
struct WarpedStructure {
    bool valid = false;
    Chart base; // the s-line chart
    std::vector<WarpBlock> blocks;

    int fiber_dim() const {
        int m = 0;
        for (const auto& b : blocks) m += b.fiber.dim;
        return m;
    }
    double fiber_volume() const {
        double v = 1.0;
        for (const auto& b : blocks) v *= b.fiber.volume;
        return v;
    }
    // prod_i w_i(s)^{m_i}: the radial factor of sqrt(det g).
    double radial_weight(double s) const {
        double v = 1.0;
        for (const auto& b : blocks) v *= std::pow(b.warp(s, 0), b.fiber.dim);
        return v;
    }
};

// A metric with a potential satisfying f S = Hess f + Phi g, plus the
// classification layered on top of that equation.
struct StaticModel {
    std::string name;
    MetricField metric;
    ScalarField f;
    ModelKind kind = ModelKind::Unified;
    // Scalar curvature when constant by construction (vacuum/CPE/catalog
    // entries); NaN when it may vary.
    double known_scalar = std::numeric_limits<double>::quiet_NaN();
    double f_min = 1.0e-3; // guard for divisions by f
    bool constant_f = false;
    // max |f| < f_min over the whole region: divisions by f are meaningless
    // and the rewrite checks are skipped.
    bool f_degenerate = false;
    bool closed = false; // compact without boundary (periodic warped models)
    WarpedStructure warped;

    int dim() const { return metric.dim(); }
    bool has_known_scalar() const { return std::isfinite(known_scalar); }
};

// Phi determined by the model kind; the trace identity n Phi = f tr S - Lap f
// is the general fallback and holds for every kind.
double phi_value(const StaticModel& model, const Point& x);
std::function<double(const Point&)> phi_field(const StaticModel& model);

// Residual tensors of the individual equations.
TensorValue static_residual(const MetricField& M, const ScalarField& f, const Point& x);
TensorValue vacuum_static_residual(const MetricField& M, const ScalarField& f, const Point& x);
TensorValue cpe_residual(const MetricField& M, const ScalarField& f, const Point& x);

// f S - Hess f - Phi g with Phi from the trace identity (trace-free by
// construction); this is the residual `manufacture_static_warped` controls.
TensorValue unified_residual(const MetricField& M, const ScalarField& f, const Point& x);
TensorValue unified_residual(const StaticModel& model, const Point& x);

struct PhiPsi {
    double phi;
    std::vector<double> psi;         // f_{j,l} f^l - (Lap f) f_j
    std::vector<double> psi_general; // -(n-2) f Phi_j + f_{j,l} f^l + n Phi f_j
    double max_diff;
};
PhiPsi phi_psi(const StaticModel& model, const Point& x);

struct DComparison {
    TensorValue direct;      // f^2 C - f W(.,.,.,grad f)
    TensorValue closed_form; // antisymmetrized Hessian/Psi expression
    double max_diff;
};
DComparison d_closed_form(const StaticModel& model, const Point& x);

// Residual of the rewrite of (n-2) B_jk through D, Cotton and Weyl terms.
// Requires |f(x)| >= model.f_min.
double bach_rewrite_residual(const StaticModel& model, const Point& x);

enum class ManufactureKind {
    Unified, // integrate the trace-free part of the unified equation
    Vacuum   // integrate the vacuum-static normal equation (R must be constant)
};

struct ManufactureOptions {
    ManufactureKind kind = ManufactureKind::Unified;
    double rtol = 1.0e-11;
    double atol = 1.0e-13;
    // Post-construction residual validation; non-positive disables.
    double validate_tol = 1.0e-6;
    bool periodic = false; // build the s-chart periodic (closed model)
};

// Solve the scalar ODE the trace-free condition reduces to on
// g = ds^2 + r(s)^2 g_E with f = f(s), starting from (f0, df0) at s_lo.
StaticModel manufacture_static_warped(const Curve& r, const FiberSpec& fiber, int n, double f0,
                                      double df0, double s_lo, double s_hi,
                                      const ManufactureOptions& opts = {},
                                      std::string name = "manufactured");

// Doubly-warped manufacture: g = ds^2 + a(s)^2 g_1 + b(s)^2 g_2 with both
// fibers Einstein. Given a(s) and initial data for (f, b), the trace-free
// part of the unified equation closes into a coupled second-order system in
// (f, b). Unlike the single-warp ansatz (whose Cotton tensor vanishes
// identically), this produces models with genuinely nonzero C and D.
StaticModel manufacture_static_doubly_warped(const Curve& a, const FiberSpec& fiber1,
                                             const FiberSpec& fiber2, int n, double f0,
                                             double df0, double b0, double db0, double s_lo,
                                             double s_hi, const ManufactureOptions& opts = {},
                                             std::string name = "manufactured2");

// Radial scalar-curvature profile of a warped product (closed form).
double warped_scalar_curvature(const Curve& r, const FiberSpec& fiber, int n, double s);

} // namespace staticlab

#endif
