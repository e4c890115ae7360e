#ifndef STATICLAB_LEVELSET_HPP
#define STATICLAB_LEVELSET_HPP

#include <vector>

#include "staticlab/statics.hpp"

namespace staticlab {

// Level-set geometry of f^{-1}(c) at a regular value. For warped models
// f = f(s), so slices are fiber slices at fixed s.
struct SliceData {
    double s_value = 0.0;
    double level = 0.0;
    double W = 0.0;              // |grad f|^2
    double H = 0.0;              // mean curvature wrt e_n = grad f / |grad f|
    double A2 = 0.0;             // |A|^2
    double umbilic_dev2 = 0.0;   // |A - H/(n-1) g^Sigma|^2
    double grad_sigma_W2 = 0.0;  // |grad^Sigma W|^2
    double grad_n_W2 = 0.0;      // |nabla_n W|^2
    double ricci_nn = 0.0;       // Ric(e_n, e_n)
    double slice_scalar = 0.0;   // R^Sigma of the induced metric
    std::vector<double> h_frame; // second fundamental form, orthonormal frame, (n-1)^2
};

// All s with f(s) = c on the base domain of a warped model.
std::vector<double> level_roots(const StaticModel& model, double c);

SliceData slice_geometry_at_s(const StaticModel& model, double s);
// Throws RegularValueError when no root has |grad f| >= 1e-6.
SliceData slice_geometry(const StaticModel& model, double c);

// Induced metric on the s-slice of a warped model (product of scaled fibers).
MetricField slice_metric(const StaticModel& model, double s);

// | |D|^2 - RHS | / (1 + |D|^2) for the identity
// |D|^2 = 2 (n-1)^2/(n-2)^2 W^2 |A - H/(n-1) g|^2 + (n-1)/(2(n-2)) |grad^S W|^2.
struct LevelsetIdentity {
    double lhs, rhs, residual;
};
LevelsetIdentity levelset_identity(const StaticModel& model, double c);

// Sampled max variation of scalar quantities along the slice.
struct SliceConstancy {
    double var_scalar;      // R
    double var_laplacian_f; // Lap f
    double var_H;
    double var_slice_scalar; // R^Sigma
    double var_ricci_nn;
};
SliceConstancy constancy_checks(const StaticModel& model, double c, int samples = 32,
                                unsigned seed = 7u);

struct GaussCodazzi {
    double gauss_residual;   // R^S - (R - 2 R_nn + H^2 - |A|^2)
    double codazzi_residual; // max_a |R(e_a, e_n) - (n-2)/(n-1) grad^S_a H|
};
GaussCodazzi gauss_codazzi_residuals(const StaticModel& model, double c);

// max |W(e_n, ., ., e_n)| on the slice; only meaningful when the model is
// D-flat and Bach-flat, so the check gates itself.
struct WeylNormalCheck {
    bool applicable = false;
    double max_d = 0.0;
    double max_bach = 0.0;
    double value = 0.0;
};
WeylNormalCheck weyl_normal_check(const StaticModel& model, double c, double d_tol = 1.0e-5,
                                  double bach_tol = 3.0e-5);

// Einstein property of the slice: max |Ric^S - (R^S/(n-1)) g^S| plus the
// Einstein constant of the unscaled fiber metric (for comparison against
// (n-2) k from the classification normalization).
struct EinsteinSlice {
    double deviation;
    double fiber_einstein_constant;
};
EinsteinSlice einstein_slice_check(const StaticModel& model, double c);

} // namespace staticlab

#endif
